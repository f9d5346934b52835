#pragma once

#include <optional>
#include <string>

#include "dercat/ideal.hpp"
#include "dercat/matrix.hpp"
#include "dercat/smith.hpp"

namespace dercat {

/// Ring engines bundle a scalar context with the module-level linear algebra
/// the complex machinery needs: kernels of matrices (generators as columns)
/// and lifts through column spans. ZZEngine routes through Smith normal form,
/// PolyEngine through module Groebner bases; both are quotient-aware where it
/// makes sense.

struct ZZEngine {
  using Elem = Int;
  using Ctx = IntRing;
  IntRing ring;
  IntEuclid euclid;
  static constexpr bool is_pid = true;

  const Ctx& ctx() const { return ring; }
  std::string name() const { return "ZZ"; }

  Mat<Elem> kernel(const Mat<Elem>& a) const {
    if (a.cols() == 0) return mat_zero(ring, 0, 0);
    if (a.rows() == 0) return Mat<Elem>::identity(a.cols(), ring);
    auto snf = smith_normal_form(euclid, a);
    int n = a.cols(), r = snf.rank();
    return Mat<Elem>::build(
        n, n - r, [&](int i, int j) { return snf.v.at(i, r + j); },
        [&](const Elem& v) { return v == 0; });
  }

  std::optional<Mat<Elem>> solve(const Mat<Elem>& a, const Mat<Elem>& b) const {
    if (a.cols() == 0) {
      if (!mat_is_zero(ring, b)) return std::nullopt;
      return mat_zero(ring, 0, b.cols());
    }
    if (a.rows() == 0) return mat_zero(ring, a.cols(), b.cols());
    auto snf = smith_normal_form(euclid, a);
    auto c = mat_mul(ring, snf.u, b);
    int r = snf.rank();
    std::vector<Elem> y(static_cast<std::size_t>(a.cols()) * b.cols(), Int(0));
    for (int j = 0; j < b.cols(); ++j) {
      for (int i = 0; i < a.rows(); ++i) {
        if (i < r) {
          const Elem& d = snf.diagonal[i];
          if (!mpz_divisible_p(c.at(i, j).get_mpz_t(), d.get_mpz_t())) return std::nullopt;
          if (i < a.cols()) y[static_cast<std::size_t>(i) * b.cols() + j] = c.at(i, j) / d;
        } else if (c.at(i, j) != 0) {
          return std::nullopt;
        }
      }
    }
    auto ym = Mat<Elem>::build(
        a.cols(), b.cols(), [&](int i, int j) { return y[static_cast<std::size_t>(i) * b.cols() + j]; },
        [&](const Elem& v) { return v == 0; });
    return mat_mul(ring, snf.v, ym);
  }
};

template <class K>
struct PolyEngine {
  using Elem = Poly<K>;
  using Ctx = PolyRing<K>;
  PolyRing<K> ring;
  static constexpr bool is_pid = false;  // treated as a PID elsewhere when univariate

  const Ctx& ctx() const { return ring; }
  std::string name() const {
    std::string s = std::is_same_v<K, RatField> ? "QQ" : "Fp";
    s += "[";
    for (std::size_t i = 0; i < ring.vars.size(); ++i) s += (i ? "," : "") + ring.vars[i];
    s += "]";
    return s;
  }

  std::vector<Vec<K>> mat_cols(const Mat<Elem>& a) const {
    std::vector<Vec<K>> cols;
    for (int j = 0; j < a.cols(); ++j) {
      Vec<K> v(a.rows());
      for (int i = 0; i < a.rows(); ++i) v[i] = a.at(i, j);
      cols.push_back(std::move(v));
    }
    return cols;
  }
  Mat<Elem> cols_mat(int rank, const std::vector<Vec<K>>& cols) const {
    return Mat<Elem>::build(
        rank, static_cast<int>(cols.size()), [&](int i, int j) { return cols[j][i]; },
        [&](const Elem& v) { return v.is_zero(); });
  }

  Mat<Elem> kernel(const Mat<Elem>& a) const {
    if (a.cols() == 0) return mat_zero(ring, 0, 0);
    if (a.rows() == 0) return Mat<Elem>::identity(a.cols(), ring);
    auto ker = kernel_gens(ring, a.rows(), mat_cols(a));
    return cols_mat(a.cols(), ker);
  }

  std::optional<Mat<Elem>> solve(const Mat<Elem>& a, const Mat<Elem>& b) const {
    if (a.cols() == 0) {
      // 0-column span: b must reduce to zero in the quotient
      for (int j = 0; j < b.cols(); ++j)
        for (int i = 0; i < b.rows(); ++i)
          if (!ring.reduce(b.at(i, j)).is_zero()) return std::nullopt;
      return mat_zero(ring, 0, b.cols());
    }
    auto cols = mat_cols(a);
    std::vector<Vec<K>> xs;
    for (int j = 0; j < b.cols(); ++j) {
      Vec<K> col(b.rows());
      for (int i = 0; i < b.rows(); ++i) col[i] = b.at(i, j);
      auto lift = span_lift(ring, a.rows(), cols, col);
      if (!lift) return std::nullopt;
      xs.push_back(std::move(*lift));
    }
    return Mat<Elem>::build(
        a.cols(), b.cols(), [&](int i, int j) { return xs[j][i]; },
        [&](const Elem& v) { return v.is_zero(); });
  }
};

using QQPolyEngine = PolyEngine<RatField>;
using FpPolyEngine = PolyEngine<PrimeField>;

/// Engine over a plain field (QQ or F_p): used for residue-field fibres and
/// field-coefficient complexes, where ranks decide everything.
template <class F>
struct FieldEngine {
  using Elem = typename F::Elem;
  using Ctx = F;
  F field;
  static constexpr bool is_pid = true;

  const Ctx& ctx() const { return field; }
  std::string name() const { return std::is_same_v<F, RatField> ? "QQ" : "Fp"; }

  Mat<Elem> kernel(const Mat<Elem>& a) const {
    if (a.cols() == 0) return mat_zero(field, 0, 0);
    if (a.rows() == 0) return Mat<Elem>::identity(a.cols(), field);
    return rank_kernel(field, a).kernel;
  }

  std::optional<Mat<Elem>> solve(const Mat<Elem>& a, const Mat<Elem>& b) const {
    if (a.cols() == 0) {
      if (!mat_is_zero(field, b)) return std::nullopt;
      return mat_zero(field, 0, b.cols());
    }
    auto aug = mat_hcat(field, a, b);
    auto rk = rank_kernel(field, aug);
    for (int c : rk.pivot_cols)
      if (c >= a.cols()) return std::nullopt;  // a pivot escaped into the rhs
    std::vector<Elem> x(static_cast<std::size_t>(a.cols()) * b.cols(), field.zero());
    for (std::size_t r = 0; r < rk.pivot_cols.size(); ++r) {
      int pc = rk.pivot_cols[r];
      for (int j = 0; j < b.cols(); ++j)
        x[static_cast<std::size_t>(pc) * b.cols() + j] = rk.rref.at(static_cast<int>(r), a.cols() + j);
    }
    return Mat<Elem>::build(
        a.cols(), b.cols(), [&](int i, int j) { return x[static_cast<std::size_t>(i) * b.cols() + j]; },
        [&](const Elem& v) { return field.is_zero(v); });
  }
};

}  // namespace dercat
