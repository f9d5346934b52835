#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dercat/matrix.hpp"
#include "dercat/scalar.hpp"

namespace dercat {

/// Euclidean-domain hooks for Smith normal form. `norm_less` orders pivot
/// candidates (absolute value over ZZ, degree over k[x]); `divmod` is
/// Euclidean division; `normal_unit` returns the unit u such that u*a is the
/// canonical associate (positive over ZZ, monic over k[x]).
struct IntEuclid {
  using Elem = Int;
  IntRing ring;

  bool is_zero(const Elem& a) const { return a == 0; }
  bool norm_less(const Elem& a, const Elem& b) const { return cmp(abs(a), abs(b)) < 0; }
  std::pair<Elem, Elem> divmod(const Elem& a, const Elem& b) const {
    Elem q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    // pull the remainder into (-|b|/2, |b|/2] so norms strictly drop fast
    Elem ab = abs(b);
    if (r * 2 > ab) {
      r -= ab;
      q += (b > 0 ? 1 : -1);
    }
    return {q, r};
  }
  Elem normal_unit(const Elem& a) const { return a < 0 ? Elem(-1) : Elem(1); }
  bool divides(const Elem& a, const Elem& b) const { return a != 0 && mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()); }
  Elem exact_div(const Elem& a, const Elem& b) const {
    Elem q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
  // integral-domain surface shared with the polynomial adapters
  Elem zero() const { return ring.zero(); }
  Elem one() const { return ring.one(); }
  Elem sub(const Elem& a, const Elem& b) const { return ring.sub(a, b); }
  Elem mul(const Elem& a, const Elem& b) const { return ring.mul(a, b); }
};

template <class E>
struct SmithForm {
  Mat<E> u, d, v;             // u*a*v = d, with u and v unimodular
  std::vector<E> diagonal;    // nonzero invariant factors d1 | d2 | ...
  Mat<E> vinv;                // inverse of v, kept for kernel-coordinate work
  int rank() const { return static_cast<int>(diagonal.size()); }
};

/// Smith normal form over a Euclidean domain. Deterministic: pivot is the
/// nonzero entry of least norm in the remaining block, ties broken by lowest
/// (row, col); invariant factors are unit-normalized and form a divisibility
/// chain.
template <class Eu>
SmithForm<typename Eu::Elem> smith_normal_form(const Eu& eu, const Mat<typename Eu::Elem>& a) {
  using E = typename Eu::Elem;
  if constexpr (requires { eu.precheck(); }) eu.precheck();
  const auto& R = eu.ring;
  int m = a.rows(), n = a.cols();
  auto w = a.to_rows(R.zero());
  std::vector<std::vector<E>> u(m, std::vector<E>(m, R.zero())), v(n, std::vector<E>(n, R.zero())),
      vinv(n, std::vector<E>(n, R.zero()));
  for (int i = 0; i < m; ++i) u[i][i] = R.one();
  for (int j = 0; j < n; ++j) v[j][j] = vinv[j][j] = R.one();

  auto row_sub = [&](int dst, int src, const E& q) {  // row_dst -= q * row_src
    for (int j = 0; j < n; ++j) w[dst][j] = R.sub(w[dst][j], R.mul(q, w[src][j]));
    for (int j = 0; j < m; ++j) u[dst][j] = R.sub(u[dst][j], R.mul(q, u[src][j]));
  };
  auto col_sub = [&](int dst, int src, const E& q) {  // col_dst -= q * col_src
    for (int i = 0; i < m; ++i) w[i][dst] = R.sub(w[i][dst], R.mul(q, w[i][src]));
    for (int i = 0; i < n; ++i) v[i][dst] = R.sub(v[i][dst], R.mul(q, v[i][src]));
    for (int j = 0; j < n; ++j) vinv[src][j] = R.add(vinv[src][j], R.mul(q, vinv[dst][j]));
  };
  auto row_swap = [&](int i1, int i2) {
    std::swap(w[i1], w[i2]);
    std::swap(u[i1], u[i2]);
  };
  auto col_swap = [&](int j1, int j2) {
    for (int i = 0; i < m; ++i) std::swap(w[i][j1], w[i][j2]);
    for (int i = 0; i < n; ++i) std::swap(v[i][j1], v[i][j2]);
    std::swap(vinv[j1], vinv[j2]);
  };
  auto row_scale = [&](int i, const E& c) {
    for (int j = 0; j < n; ++j) w[i][j] = R.mul(c, w[i][j]);
    for (int j = 0; j < m; ++j) u[i][j] = R.mul(c, u[i][j]);
  };

  int k = 0;
  int bound = std::min(m, n);
  while (k < bound) {
    // deterministic pivot: least norm, then lowest (row, col)
    int pr = -1, pc = -1;
    for (int i = k; i < m; ++i)
      for (int j = k; j < n; ++j) {
        if (eu.is_zero(w[i][j])) continue;
        if (pr < 0 || eu.norm_less(w[i][j], w[pr][pc])) {
          pr = i;
          pc = j;
        }
      }
    if (pr < 0) break;
    if (pr != k) row_swap(k, pr);
    if (pc != k) col_swap(k, pc);

    bool dirty = false;
    for (int i = k + 1; i < m; ++i) {
      if (eu.is_zero(w[i][k])) continue;
      auto [q, r] = eu.divmod(w[i][k], w[k][k]);
      row_sub(i, k, q);
      if (!eu.is_zero(r)) dirty = true;
    }
    for (int j = k + 1; j < n; ++j) {
      if (eu.is_zero(w[k][j])) continue;
      auto [q, r] = eu.divmod(w[k][j], w[k][k]);
      col_sub(j, k, q);
      if (!eu.is_zero(r)) dirty = true;
    }
    if (dirty) continue;  // smaller pivot appeared; reselect

    // pivot must divide the rest of the block
    bool fixed = true;
    for (int i = k + 1; i < m && fixed; ++i)
      for (int j = k + 1; j < n && fixed; ++j)
        if (!eu.is_zero(w[i][j]) && !eu.divides(w[k][k], w[i][j])) {
          row_sub(k, i, R.neg(R.one()));  // row_k += row_i
          fixed = false;
        }
    if (!fixed) continue;

    E nu = eu.normal_unit(w[k][k]);
    if (!R.eq(nu, R.one())) row_scale(k, nu);
    ++k;
  }

  SmithForm<E> out;
  out.diagonal.reserve(k);
  for (int i = 0; i < k; ++i) out.diagonal.push_back(w[i][i]);
  auto pack = [&](const std::vector<std::vector<E>>& rows) {
    return Mat<E>::build(
        static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()),
        [&](int i, int j) { return rows[i][j]; }, [&](const E& x) { return eu.is_zero(x); });
  };
  out.u = pack(u);
  out.v = pack(v);
  out.vinv = pack(vinv);
  out.d = pack(w);
  return out;
}

// ---- field linear algebra ----------------------------------------------------

template <class F>
struct RankKernel {
  int rank = 0;
  Mat<ElemOf<F>> kernel;  // columns form the canonical kernel basis
  Mat<ElemOf<F>> rref;
  std::vector<int> pivot_cols;
};

/// Reduced row echelon form, rank and the canonical kernel basis of a matrix
/// over a field. The kernel columns are indexed by free columns in ascending
/// order, each with a 1 in its free position.
template <class F>
RankKernel<F> rank_kernel(const F& f, const Mat<ElemOf<F>>& a) {
  using E = ElemOf<F>;
  int m = a.rows(), n = a.cols();
  auto w = a.to_rows(f.zero());
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int sel = -1;
    for (int i = r; i < m; ++i)
      if (!f.is_zero(w[i][c])) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(w[sel], w[r]);
    E inv = f.inv(w[r][c]);
    for (int j = c; j < n; ++j) w[r][j] = f.mul(inv, w[r][j]);
    for (int i = 0; i < m; ++i) {
      if (i == r || f.is_zero(w[i][c])) continue;
      E q = w[i][c];
      for (int j = c; j < n; ++j) w[i][j] = f.sub(w[i][j], f.mul(q, w[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  RankKernel<F> out;
  out.rank = r;
  out.pivot_cols = pivots;
  out.rref = Mat<E>::build(
      m, n, [&](int i, int j) { return w[i][j]; }, [&](const E& x) { return f.is_zero(x); });
  std::vector<int> free_cols;
  {
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;
    for (int c = 0; c < n; ++c)
      if (!is_pivot[c]) free_cols.push_back(c);
  }
  int k = static_cast<int>(free_cols.size());
  out.kernel = Mat<E>::build(
      n, k,
      [&](int i, int j) -> E {
        int fc = free_cols[j];
        if (i == fc) return f.one();
        for (int t = 0; t < r; ++t)
          if (pivots[t] == i) return f.neg(w[t][fc]);
        return f.zero();
      },
      [&](const E& x) { return f.is_zero(x); });
  return out;
}

/// Fraction-free (Bareiss) rank over an integral domain with exact division.
/// Used for generic ranks of presentation matrices over polynomial domains.
template <class D>
int bareiss_rank(const D& dom, const Mat<typename D::Elem>& a) {
  using E = typename D::Elem;
  int m = a.rows(), n = a.cols();
  auto w = a.to_rows(dom.zero());
  E prev = dom.one();
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int sel = -1;
    for (int i = r; i < m; ++i)
      if (!dom.is_zero(w[i][c])) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(w[sel], w[r]);
    for (int i = r + 1; i < m; ++i) {
      for (int j = c + 1; j < n; ++j) {
        E t = dom.sub(dom.mul(w[r][c], w[i][j]), dom.mul(w[i][c], w[r][j]));
        w[i][j] = dom.exact_div(t, prev);
      }
      w[i][c] = dom.zero();
    }
    prev = w[r][c];
    ++r;
  }
  return r;
}

// ---- PID module invariants ---------------------------------------------------

/// Invariants of a finitely generated module over a PID: free rank plus the
/// non-unit torsion factors in divisibility order.
template <class E>
struct PidInvariants {
  int free_rank = 0;
  std::vector<E> torsion;
  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  friend bool operator==(const PidInvariants&, const PidInvariants&) = default;
};

template <class Eu>
PidInvariants<typename Eu::Elem> cokernel_invariants(const Eu& eu, int ambient_rank,
                                                     const Mat<typename Eu::Elem>& rels) {
  using E = typename Eu::Elem;
  auto snf = smith_normal_form(eu, rels);
  PidInvariants<E> out;
  out.free_rank = ambient_rank - snf.rank();
  for (const auto& d : snf.diagonal)
    if (!eu.ring.is_unit(d)) out.torsion.push_back(d);
  return out;
}

/// Invariants of ker(d_out)/im(d_in) over a PID. Requires d_out * d_in = 0.
template <class Eu>
PidInvariants<typename Eu::Elem> homology_invariants(const Eu& eu, const Mat<typename Eu::Elem>& d_in,
                                                     const Mat<typename Eu::Elem>& d_out) {
  using E = typename Eu::Elem;
  const auto& R = eu.ring;
  require(d_out.cols() == d_in.rows(), errc::not_a_complex, "differential shapes do not compose");
  require(mat_is_zero(R, mat_mul(R, d_out, d_in)), errc::not_a_complex, "d*d != 0");

  auto snf = smith_normal_form(eu, d_out);
  int n = d_out.cols();
  std::vector<int> ker_idx;
  for (int j = 0; j < n; ++j)
    if (j >= snf.rank()) ker_idx.push_back(j);
  // coordinates of im(d_in) in the kernel basis: rows of vinv * d_in at kernel indices
  auto coords_full = mat_mul(R, snf.vinv, d_in);
  int k = static_cast<int>(ker_idx.size());
  auto coords = Mat<E>::build(
      k, d_in.cols(), [&](int i, int j) { return coords_full.at(ker_idx[i], j); },
      [&](const E& x) { return R.is_zero(x); });
  return cokernel_invariants(eu, k, coords);
}

}  // namespace dercat
