#pragma once

#include <algorithm>
#include <cassert>
#include <functional>
#include <tuple>
#include <vector>

#include "dercat/error.hpp"

namespace dercat {

/// Exact matrix over an arbitrary scalar type. Storage is dense (row-major)
/// or coordinate-sparse; construction picks sparse when the fill ratio drops
/// below `sparse_threshold()`. Sparse storage never holds explicit zeros.
/// Values are immutable after construction; algorithms copy into dense work
/// buffers.
template <class T>
class Mat {
 public:
  Mat() : nr_(0), nc_(0), sparse_(false) {}

  static double& sparse_threshold() {
    static double t = 0.25;
    return t;
  }

  static Mat dense(int nr, int nc, std::vector<T> entries) {
    assert(static_cast<std::size_t>(nr) * nc == entries.size());
    Mat m;
    m.nr_ = nr;
    m.nc_ = nc;
    m.sparse_ = false;
    m.dense_ = std::move(entries);
    m.maybe_compact();
    return m;
  }

  /// Build from an explicit generator; `is_zero` decides storage selection.
  static Mat build(int nr, int nc, const std::function<T(int, int)>& gen,
                   const std::function<bool(const T&)>& is_zero) {
    std::vector<T> d;
    d.reserve(static_cast<std::size_t>(nr) * nc);
    std::size_t nnz = 0;
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) {
        d.push_back(gen(i, j));
        if (!is_zero(d.back())) ++nnz;
      }
    Mat m;
    m.nr_ = nr;
    m.nc_ = nc;
    m.sparse_ = false;
    m.dense_ = std::move(d);
    m.maybe_compact(is_zero, nnz);
    return m;
  }

  static Mat zero(int nr, int nc, const T& z) {
    Mat m;
    m.nr_ = nr;
    m.nc_ = nc;
    m.sparse_ = true;
    m.zero_ = z;
    return m;
  }

  template <class Ctx>
  static Mat identity(int n, const Ctx& ctx) {
    Mat m;
    m.nr_ = n;
    m.nc_ = n;
    m.sparse_ = true;
    m.zero_ = ctx.zero();
    for (int i = 0; i < n; ++i) m.tri_.emplace_back(i, i, ctx.one());
    return m;
  }

  int rows() const { return nr_; }
  int cols() const { return nc_; }
  bool is_sparse() const { return sparse_; }
  bool empty() const { return nr_ == 0 || nc_ == 0; }

  const T& at(int r, int c) const {
    assert(r >= 0 && r < nr_ && c >= 0 && c < nc_);
    if (!sparse_) return dense_[static_cast<std::size_t>(r) * nc_ + c];
    auto it = std::lower_bound(tri_.begin(), tri_.end(), std::make_pair(r, c),
                               [](const auto& t, const std::pair<int, int>& k) {
                                 return std::make_pair(std::get<0>(t), std::get<1>(t)) < k;
                               });
    if (it != tri_.end() && std::get<0>(*it) == r && std::get<1>(*it) == c) return std::get<2>(*it);
    return zero_;
  }

  /// Visit nonzero-position entries in (row, col) order. Dense storage visits
  /// every stored entry, including stored zeros.
  template <class Fn>
  void for_entries(Fn&& fn) const {
    if (sparse_) {
      for (const auto& [r, c, v] : tri_) fn(r, c, v);
    } else {
      for (int i = 0; i < nr_; ++i)
        for (int j = 0; j < nc_; ++j) fn(i, j, dense_[static_cast<std::size_t>(i) * nc_ + j]);
    }
  }

  std::vector<std::vector<T>> to_rows(const T& z) const {
    std::vector<std::vector<T>> out(nr_, std::vector<T>(nc_, z));
    for_entries([&](int r, int c, const T& v) { out[r][c] = v; });
    return out;
  }

  std::vector<T> col(int c, const T& z) const {
    std::vector<T> out(nr_, z);
    for (int i = 0; i < nr_; ++i) out[i] = at(i, c);
    return out;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    if (a.nr_ != b.nr_ || a.nc_ != b.nc_) return false;
    for (int i = 0; i < a.nr_; ++i)
      for (int j = 0; j < a.nc_; ++j)
        if (!(a.at(i, j) == b.at(i, j))) return false;
    return true;
  }

 private:
  void maybe_compact() {
    maybe_compact([](const T& v) { return v == T{}; }, count_nonzero([](const T& v) { return v == T{}; }));
  }
  std::size_t count_nonzero(const std::function<bool(const T&)>& is_zero) const {
    std::size_t n = 0;
    for (const auto& v : dense_)
      if (!is_zero(v)) ++n;
    return n;
  }
  void maybe_compact(const std::function<bool(const T&)>& is_zero, std::size_t nnz) {
    std::size_t total = dense_.size();
    if (total == 0) return;
    if (static_cast<double>(nnz) >= sparse_threshold() * static_cast<double>(total)) return;
    // find a zero value to hand back from at()
    zero_ = T{};
    for (const auto& v : dense_)
      if (is_zero(v)) {
        zero_ = v;
        break;
      }
    for (int i = 0; i < nr_; ++i)
      for (int j = 0; j < nc_; ++j) {
        const T& v = dense_[static_cast<std::size_t>(i) * nc_ + j];
        if (!is_zero(v)) tri_.emplace_back(i, j, v);
      }
    dense_.clear();
    dense_.shrink_to_fit();
    sparse_ = true;
  }

  int nr_, nc_;
  bool sparse_;
  std::vector<T> dense_;
  std::vector<std::tuple<int, int, T>> tri_;
  T zero_{};
};

// ---- context-driven helpers ------------------------------------------------

template <class Ctx>
using ElemOf = typename Ctx::Elem;

template <class Ctx>
Mat<ElemOf<Ctx>> mat_from_rows(const Ctx& ctx, const std::vector<std::vector<ElemOf<Ctx>>>& rows) {
  int nr = static_cast<int>(rows.size());
  int nc = nr == 0 ? 0 : static_cast<int>(rows[0].size());
  for (const auto& r : rows) require(static_cast<int>(r.size()) == nc, errc::semantic_error, "ragged matrix literal");
  return Mat<ElemOf<Ctx>>::build(
      nr, nc, [&](int i, int j) { return rows[i][j]; },
      [&](const ElemOf<Ctx>& v) { return ctx.is_zero(v); });
}

template <class Ctx>
Mat<ElemOf<Ctx>> mat_zero(const Ctx& ctx, int nr, int nc) {
  return Mat<ElemOf<Ctx>>::zero(nr, nc, ctx.zero());
}

template <class Ctx>
Mat<ElemOf<Ctx>> mat_mul(const Ctx& ctx, const Mat<ElemOf<Ctx>>& a, const Mat<ElemOf<Ctx>>& b) {
  require(a.cols() == b.rows(), errc::semantic_error, "matrix product shape mismatch");
  using T = ElemOf<Ctx>;
  std::vector<T> out(static_cast<std::size_t>(a.rows()) * b.cols(), ctx.zero());
  // accumulate over a's nonzeros so sparse inputs stay cheap
  a.for_entries([&](int i, int k, const T& av) {
    if (ctx.is_zero(av)) return;
    for (int j = 0; j < b.cols(); ++j) {
      const T& bv = b.at(k, j);
      if (ctx.is_zero(bv)) continue;
      std::size_t idx = static_cast<std::size_t>(i) * b.cols() + j;
      out[idx] = ctx.add(out[idx], ctx.mul(av, bv));
    }
  });
  return Mat<T>::build(
      a.rows(), b.cols(), [&](int i, int j) { return out[static_cast<std::size_t>(i) * b.cols() + j]; },
      [&](const T& v) { return ctx.is_zero(v); });
}

template <class Ctx>
Mat<ElemOf<Ctx>> mat_add(const Ctx& ctx, const Mat<ElemOf<Ctx>>& a, const Mat<ElemOf<Ctx>>& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), errc::semantic_error, "matrix sum shape mismatch");
  using T = ElemOf<Ctx>;
  return Mat<T>::build(
      a.rows(), a.cols(), [&](int i, int j) { return ctx.add(a.at(i, j), b.at(i, j)); },
      [&](const T& v) { return ctx.is_zero(v); });
}

template <class Ctx>
Mat<ElemOf<Ctx>> mat_scale(const Ctx& ctx, const ElemOf<Ctx>& s, const Mat<ElemOf<Ctx>>& a) {
  using T = ElemOf<Ctx>;
  return Mat<T>::build(
      a.rows(), a.cols(), [&](int i, int j) { return ctx.mul(s, a.at(i, j)); },
      [&](const T& v) { return ctx.is_zero(v); });
}

template <class Ctx>
Mat<ElemOf<Ctx>> mat_neg(const Ctx& ctx, const Mat<ElemOf<Ctx>>& a) {
  using T = ElemOf<Ctx>;
  return Mat<T>::build(
      a.rows(), a.cols(), [&](int i, int j) { return ctx.neg(a.at(i, j)); },
      [&](const T& v) { return ctx.is_zero(v); });
}

template <class Ctx>
Mat<ElemOf<Ctx>> mat_transpose(const Ctx& ctx, const Mat<ElemOf<Ctx>>& a) {
  using T = ElemOf<Ctx>;
  return Mat<T>::build(
      a.cols(), a.rows(), [&](int i, int j) { return a.at(j, i); },
      [&](const T& v) { return ctx.is_zero(v); });
}

template <class Ctx>
bool mat_is_zero(const Ctx& ctx, const Mat<ElemOf<Ctx>>& a) {
  bool z = true;
  a.for_entries([&](int, int, const ElemOf<Ctx>& v) {
    if (!ctx.is_zero(v)) z = false;
  });
  return z;
}

/// Horizontal concatenation [A | B].
template <class Ctx>
Mat<ElemOf<Ctx>> mat_hcat(const Ctx& ctx, const Mat<ElemOf<Ctx>>& a, const Mat<ElemOf<Ctx>>& b) {
  require(a.rows() == b.rows(), errc::semantic_error, "hcat shape mismatch");
  using T = ElemOf<Ctx>;
  return Mat<T>::build(
      a.rows(), a.cols() + b.cols(),
      [&](int i, int j) { return j < a.cols() ? a.at(i, j) : b.at(i, j - a.cols()); },
      [&](const T& v) { return ctx.is_zero(v); });
}

/// Block matrix from a 2x2 grid of optional blocks; missing blocks are zero.
template <class Ctx>
Mat<ElemOf<Ctx>> mat_block2(const Ctx& ctx, const Mat<ElemOf<Ctx>>& a00, const Mat<ElemOf<Ctx>>& a01,
                            const Mat<ElemOf<Ctx>>& a10, const Mat<ElemOf<Ctx>>& a11) {
  using T = ElemOf<Ctx>;
  int r0 = std::max(a00.rows(), a01.rows());
  int r1 = std::max(a10.rows(), a11.rows());
  int c0 = std::max(a00.cols(), a10.cols());
  int c1 = std::max(a01.cols(), a11.cols());
  auto pick = [&](int i, int j) -> T {
    if (i < r0) {
      if (j < c0) return (i < a00.rows() && j < a00.cols()) ? a00.at(i, j) : ctx.zero();
      return (i < a01.rows() && (j - c0) < a01.cols()) ? a01.at(i, j - c0) : ctx.zero();
    }
    if (j < c0) return ((i - r0) < a10.rows() && j < a10.cols()) ? a10.at(i - r0, j) : ctx.zero();
    return ((i - r0) < a11.rows() && (j - c0) < a11.cols()) ? a11.at(i - r0, j - c0) : ctx.zero();
  };
  return Mat<T>::build(r0 + r1, c0 + c1, pick, [&](const T& v) { return ctx.is_zero(v); });
}

}  // namespace dercat
