#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dercat/module.hpp"

namespace dercat {

/// Bounded complex of finite free modules, homologically indexed: the stored
/// differential d(i) maps X_i -> X_{i-1}. Degrees with zero rank are absent
/// from `ranks`; absent differentials are zero.
template <class Eng>
struct Complex {
  using Elem = typename Eng::Elem;
  Eng eng;
  std::map<int, int> ranks;
  std::map<int, Mat<Elem>> diffs;

  int rank(int i) const {
    auto it = ranks.find(i);
    return it == ranks.end() ? 0 : it->second;
  }
  Mat<Elem> d(int i) const {
    auto it = diffs.find(i);
    if (it != diffs.end()) return it->second;
    return mat_zero(eng.ctx(), rank(i - 1), rank(i));
  }
  bool is_zero_complex() const { return ranks.empty(); }
  int lo() const { return ranks.empty() ? 0 : ranks.begin()->first; }
  int hi() const { return ranks.empty() ? 0 : ranks.rbegin()->first; }
  int total_rank() const {
    int t = 0;
    for (auto& [d_, r] : ranks) t += r;
    return t;
  }
};

/// Validate shapes and d*d = 0; throws NotAComplex / SemanticError.
template <class Eng>
void validate_complex(const Complex<Eng>& x) {
  for (const auto& [i, m] : x.diffs) {
    require(m.rows() == x.rank(i - 1) && m.cols() == x.rank(i), errc::semantic_error,
            "differential shape mismatch in degree " + std::to_string(i));
  }
  for (const auto& [i, m] : x.diffs) {
    if (x.rank(i - 2) == 0) continue;
    require(mat_is_zero(x.eng.ctx(), mat_mul(x.eng.ctx(), x.d(i - 1), m)), errc::not_a_complex,
            "d*d != 0 at degree " + std::to_string(i));
  }
}

template <class Eng>
Complex<Eng> make_complex(const Eng& eng, std::map<int, int> ranks,
                          std::map<int, Mat<typename Eng::Elem>> diffs) {
  Complex<Eng> x{eng, std::move(ranks), std::move(diffs)};
  for (auto it = x.ranks.begin(); it != x.ranks.end();) {
    if (it->second == 0)
      it = x.ranks.erase(it);
    else
      ++it;
  }
  for (auto it = x.diffs.begin(); it != x.diffs.end();) {
    if (x.rank(it->first) == 0 || x.rank(it->first - 1) == 0)
      it = x.diffs.erase(it);
    else
      ++it;
  }
  validate_complex(x);
  return x;
}

/// Free module of the given rank concentrated in one degree.
template <class Eng>
Complex<Eng> one_term_complex(const Eng& eng, int degree, int rank) {
  std::map<int, int> r;
  if (rank > 0) r[degree] = rank;
  return Complex<Eng>{eng, std::move(r), {}};
}

/// Two-term complex R^c --m--> R^r in degrees (degree, degree-1).
template <class Eng>
Complex<Eng> two_term_complex(const Eng& eng, int degree, const Mat<typename Eng::Elem>& m) {
  std::map<int, int> ranks;
  std::map<int, Mat<typename Eng::Elem>> diffs;
  if (m.cols() > 0) ranks[degree] = m.cols();
  if (m.rows() > 0) ranks[degree - 1] = m.rows();
  if (m.cols() > 0 && m.rows() > 0) diffs[degree] = m;
  return make_complex(eng, std::move(ranks), std::move(diffs));
}

// ---- Koszul ------------------------------------------------------------------

namespace detail {

/// k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<int>> subsets_lex(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> walk = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      walk(i + 1);
      cur.pop_back();
    }
  };
  walk(0);
  return out;
}

inline int subset_index(const std::vector<std::vector<int>>& table, const std::vector<int>& s) {
  auto it = std::lower_bound(table.begin(), table.end(), s);
  return static_cast<int>(it - table.begin());
}

}  // namespace detail

/// Koszul complex on a sequence: exterior algebra terms in degrees 0..n with
/// lexicographic subset bases, d(e_S) = sum (-1)^(j-1) x_(i_j) e_(S minus i_j).
template <class Eng>
Complex<Eng> koszul_complex(const Eng& eng, const std::vector<typename Eng::Elem>& xs) {
  using E = typename Eng::Elem;
  int n = static_cast<int>(xs.size());
  std::map<int, int> ranks;
  std::map<int, Mat<E>> diffs;
  std::vector<std::vector<std::vector<int>>> tables(n + 1);
  for (int k = 0; k <= n; ++k) {
    tables[k] = detail::subsets_lex(n, k);
    ranks[k] = static_cast<int>(tables[k].size());
  }
  for (int k = 1; k <= n; ++k) {
    const auto& src = tables[k];
    const auto& dst = tables[k - 1];
    std::vector<E> entries(dst.size() * src.size(), eng.ctx().zero());
    for (std::size_t j = 0; j < src.size(); ++j) {
      const auto& s = src[j];
      for (int pos = 0; pos < k; ++pos) {
        std::vector<int> t = s;
        t.erase(t.begin() + pos);
        int i = detail::subset_index(dst, t);
        E coef = xs[s[pos]];
        if (pos % 2 == 1) coef = eng.ctx().neg(coef);
        entries[static_cast<std::size_t>(i) * src.size() + j] = coef;
      }
    }
    diffs[k] = Mat<E>::build(
        static_cast<int>(dst.size()), static_cast<int>(src.size()),
        [&](int i, int j) { return entries[static_cast<std::size_t>(i) * src.size() + j]; },
        [&](const E& v) { return eng.ctx().is_zero(v); });
  }
  return make_complex(eng, std::move(ranks), std::move(diffs));
}

// ---- combinators ---------------------------------------------------------------

/// Shift: (S^i X)_n = X_(n-i), differentials scaled by (-1)^i.
template <class Eng>
Complex<Eng> shift_complex(const Complex<Eng>& x, int i) {
  Complex<Eng> out;
  out.eng = x.eng;
  for (const auto& [d, r] : x.ranks) out.ranks[d + i] = r;
  for (const auto& [d, m] : x.diffs) out.diffs[d + i] = (i % 2 == 0) ? m : mat_neg(x.eng.ctx(), m);
  return out;
}

/// Total tensor product with the Koszul sign rule; block (p, q) bases ordered
/// by p ascending, then source-major within the block.
template <class Eng>
Complex<Eng> tensor_complexes(const Complex<Eng>& f, const Complex<Eng>& g) {
  using E = typename Eng::Elem;
  const Eng& eng = f.eng;
  const auto& C = eng.ctx();
  Complex<Eng> out;
  out.eng = eng;
  if (f.is_zero_complex() || g.is_zero_complex()) return out;

  // block offsets per total degree
  std::map<int, std::vector<std::pair<int, int>>> blocks;  // n -> list of (p, q)
  std::map<int, int> ranks;
  for (const auto& [p, rp] : f.ranks)
    for (const auto& [q, rq] : g.ranks) {
      blocks[p + q].emplace_back(p, q);
      ranks[p + q] += rp * rq;
    }
  auto offset_of = [&](int n, int p, int q) {
    auto it = blocks.find(n);
    if (it == blocks.end()) return -1;
    int off = 0;
    for (auto& [bp, bq] : it->second) {
      if (bp == p && bq == q) return off;
      off += f.rank(bp) * g.rank(bq);
    }
    return -1;
  };

  std::map<int, Mat<E>> diffs;
  for (const auto& [n, blist] : blocks) {
    if (ranks.find(n - 1) == ranks.end()) continue;
    int nr = ranks[n - 1], nc = ranks[n];
    std::vector<E> m(static_cast<std::size_t>(nr) * nc, C.zero());
    for (const auto& [p, q] : blist) {
      int src_off = offset_of(n, p, q);
      int rp = f.rank(p), rq = g.rank(q);
      // dF x id : (p,q) -> (p-1,q)
      if (f.rank(p - 1) > 0) {
        int dst_off = offset_of(n - 1, p - 1, q);
        if (dst_off >= 0) {
          auto df = f.d(p);
          df.for_entries([&](int a, int b, const E& v) {
            if (C.is_zero(v)) return;
            for (int t = 0; t < rq; ++t) {
              std::size_t row = dst_off + static_cast<std::size_t>(a) * rq + t;
              std::size_t col = src_off + static_cast<std::size_t>(b) * rq + t;
              m[row * nc + col] = C.add(m[row * nc + col], v);
            }
          });
        }
      }
      // (-1)^p id x dG : (p,q) -> (p,q-1)
      if (g.rank(q - 1) > 0) {
        int dst_off = offset_of(n - 1, p, q - 1);
        if (dst_off >= 0) {
          auto dg = g.d(q);
          bool flip = (((p % 2) + 2) % 2) == 1;
          dg.for_entries([&](int a, int b, const E& v) {
            if (C.is_zero(v)) return;
            E vv = flip ? C.neg(v) : v;
            int rq1 = g.rank(q - 1);
            for (int s = 0; s < rp; ++s) {
              std::size_t row = dst_off + static_cast<std::size_t>(s) * rq1 + a;
              std::size_t col = src_off + static_cast<std::size_t>(s) * rq + b;
              m[row * nc + col] = C.add(m[row * nc + col], vv);
            }
          });
        }
      }
    }
    diffs[n] = Mat<E>::build(
        nr, nc, [&](int i, int j) { return m[static_cast<std::size_t>(i) * nc + j]; },
        [&](const E& v) { return C.is_zero(v); });
  }
  return make_complex(eng, std::move(ranks), std::move(diffs));
}

/// Hom complex: degree-k term is the product of Hom(F_i, G_(i+k)), blocks by i
/// ascending, basis E(t,s) flattened source-major; differential
/// (d phi) = dG o phi - (-1)^k phi o dF.
template <class Eng>
Complex<Eng> hom_complexes(const Complex<Eng>& f, const Complex<Eng>& g) {
  using E = typename Eng::Elem;
  const Eng& eng = f.eng;
  const auto& C = eng.ctx();
  Complex<Eng> out;
  out.eng = eng;
  if (f.is_zero_complex() || g.is_zero_complex()) return out;

  std::map<int, std::vector<int>> blocks;  // k -> list of i with F_i != 0 != G_(i+k)
  std::map<int, int> ranks;
  for (const auto& [i, ri] : f.ranks)
    for (const auto& [j, rj] : g.ranks) {
      blocks[j - i].push_back(i);
      ranks[j - i] += ri * rj;
    }
  for (auto& [k, v] : blocks) std::sort(v.begin(), v.end());
  auto offset_of = [&](int k, int i) {
    auto it = blocks.find(k);
    if (it == blocks.end()) return -1;
    int off = 0;
    for (int b : it->second) {
      if (b == i) return off;
      off += f.rank(b) * g.rank(b + k);
    }
    return -1;
  };

  std::map<int, Mat<E>> diffs;
  for (const auto& [k, blist] : blocks) {
    if (ranks.find(k - 1) == ranks.end()) continue;
    int nr = ranks[k - 1], nc = ranks[k];
    std::vector<E> m(static_cast<std::size_t>(nr) * nc, C.zero());
    bool flip = (((k % 2) + 2) % 2) == 1;  // -(-1)^k factor handling below
    for (int i : blist) {
      int src_off = offset_of(k, i);
      int rFi = f.rank(i), rGik = g.rank(i + k);
      // dG o phi : block i of Hom_k -> block i of Hom_(k-1)
      if (g.rank(i + k - 1) > 0) {
        int dst_off = offset_of(k - 1, i);
        if (dst_off >= 0) {
          auto dg = g.d(i + k);
          int rG1 = g.rank(i + k - 1);
          dg.for_entries([&](int u, int t, const E& v) {
            if (C.is_zero(v)) return;
            for (int s = 0; s < rFi; ++s) {
              std::size_t row = dst_off + static_cast<std::size_t>(s) * rG1 + u;
              std::size_t col = src_off + static_cast<std::size_t>(s) * rGik + t;
              m[row * nc + col] = C.add(m[row * nc + col], v);
            }
          });
        }
      }
      // -(-1)^k phi o dF : block i of Hom_k -> block i+1 of Hom_(k-1)
      if (f.rank(i + 1) > 0 && g.rank(i + k) > 0) {
        int dst_off = offset_of(k - 1, i + 1);
        if (dst_off >= 0) {
          auto df = f.d(i + 1);
          df.for_entries([&](int s, int v_, const E& w) {
            if (C.is_zero(w)) return;
            E ww = flip ? w : C.neg(w);  // -(-1)^k: negate when k even
            for (int t = 0; t < rGik; ++t) {
              std::size_t row = dst_off + static_cast<std::size_t>(v_) * rGik + t;
              std::size_t col = src_off + static_cast<std::size_t>(s) * rGik + t;
              m[row * nc + col] = C.add(m[row * nc + col], ww);
            }
          });
        }
      }
    }
    diffs[k] = Mat<E>::build(
        nr, nc, [&](int i2, int j2) { return m[static_cast<std::size_t>(i2) * nc + j2]; },
        [&](const E& v) { return C.is_zero(v); });
  }
  return make_complex(eng, std::move(ranks), std::move(diffs));
}

// ---- chain maps -----------------------------------------------------------------

template <class Eng>
struct ChainMap {
  Complex<Eng> src, dst;
  std::map<int, Mat<typename Eng::Elem>> comps;  // degree -> dst_i x src_i matrix

  Mat<typename Eng::Elem> comp(int i) const {
    auto it = comps.find(i);
    if (it != comps.end()) return it->second;
    return mat_zero(src.eng.ctx(), dst.rank(i), src.rank(i));
  }
};

template <class Eng>
void validate_chain_map(const ChainMap<Eng>& f) {
  const auto& C = f.src.eng.ctx();
  for (const auto& [i, m] : f.comps)
    require(m.rows() == f.dst.rank(i) && m.cols() == f.src.rank(i), errc::semantic_error,
            "chain map component shape mismatch at degree " + std::to_string(i));
  int lo = std::min(f.src.lo(), f.dst.lo());
  int hi = std::max(f.src.hi(), f.dst.hi());
  for (int i = lo; i <= hi; ++i) {
    auto lhs = mat_mul(C, f.dst.d(i), f.comp(i));
    auto rhs = mat_mul(C, f.comp(i - 1), f.src.d(i));
    require(lhs == rhs, errc::semantic_error, "chain map does not commute at degree " + std::to_string(i));
  }
}

template <class Eng>
ChainMap<Eng> identity_map(const Complex<Eng>& x) {
  ChainMap<Eng> f{x, x, {}};
  for (const auto& [i, r] : x.ranks) f.comps[i] = Mat<typename Eng::Elem>::identity(r, x.eng.ctx());
  return f;
}

template <class Eng>
ChainMap<Eng> zero_map(const Complex<Eng>& src, const Complex<Eng>& dst) {
  return ChainMap<Eng>{src, dst, {}};
}

/// Mapping cone: C_n = Z_n + Y_(n-1), differential [[dZ, f],[0, -dY]].
template <class Eng>
Complex<Eng> cone(const ChainMap<Eng>& f) {
  const auto& C = f.src.eng.ctx();
  const Complex<Eng>& y = f.src;
  const Complex<Eng>& z = f.dst;
  std::map<int, int> ranks;
  std::map<int, Mat<typename Eng::Elem>> diffs;
  int lo = std::min(y.lo() + 1, z.lo());
  int hi = std::max(y.hi() + 1, z.hi());
  for (int n = lo; n <= hi; ++n) {
    int r = z.rank(n) + y.rank(n - 1);
    if (r > 0) ranks[n] = r;
  }
  for (int n = lo; n <= hi; ++n) {
    if (ranks.find(n) == ranks.end() || ranks.find(n - 1) == ranks.end()) continue;
    auto top = mat_block2(C, z.d(n), f.comp(n - 1), mat_zero(C, y.rank(n - 2), z.rank(n)),
                          mat_neg(C, y.d(n - 1)));
    diffs[n] = top;
  }
  return make_complex(y.eng, std::move(ranks), std::move(diffs));
}

/// id_K (x) f as a chain map between tensor complexes.
template <class Eng>
ChainMap<Eng> tensor_map(const Complex<Eng>& k, const ChainMap<Eng>& f) {
  ChainMap<Eng> out{tensor_complexes(k, f.src), tensor_complexes(k, f.dst), {}};
  const auto& C = k.eng.ctx();
  using E = typename Eng::Elem;
  for (const auto& [n, rn] : out.src.ranks) {
    int nr = out.dst.rank(n);
    if (nr == 0) continue;
    std::vector<E> m(static_cast<std::size_t>(nr) * rn, C.zero());
    // walk source blocks (p, q): p from k, q from f.src
    int src_off = 0;
    for (const auto& [p, rp] : k.ranks) {
      int q = n - p;
      int rq = f.src.rank(q);
      if (rq == 0) continue;
      // destination block (p, q) offset inside out.dst degree n
      int dst_off = 0;
      bool found = false;
      for (const auto& [pp, rpp] : k.ranks) {
        int qq = n - pp;
        if (f.dst.rank(qq) == 0) continue;
        if (pp == p) {
          found = true;
          break;
        }
        dst_off += rpp * f.dst.rank(qq);
      }
      int rq_dst = f.dst.rank(q);
      if (found && rq_dst > 0) {
        auto fm = f.comp(q);
        fm.for_entries([&](int a, int b, const E& v) {
          if (C.is_zero(v)) return;
          for (int s = 0; s < rp; ++s) {
            std::size_t row = dst_off + static_cast<std::size_t>(s) * rq_dst + a;
            std::size_t col = src_off + static_cast<std::size_t>(s) * rq + b;
            m[row * rn + col] = v;
          }
        });
      }
      src_off += rp * rq;
    }
    out.comps[n] = Mat<E>::build(
        nr, rn, [&](int i, int j) { return m[static_cast<std::size_t>(i) * rn + j]; },
        [&](const E& v) { return C.is_zero(v); });
  }
  return out;
}

/// Hom(K, f): postcomposition on every block, no signs.
template <class Eng>
ChainMap<Eng> hom_map(const Complex<Eng>& k, const ChainMap<Eng>& f) {
  ChainMap<Eng> out{hom_complexes(k, f.src), hom_complexes(k, f.dst), {}};
  const auto& C = k.eng.ctx();
  using E = typename Eng::Elem;
  for (const auto& [deg, rdeg] : out.src.ranks) {
    int nr = out.dst.rank(deg);
    if (nr == 0) continue;
    std::vector<E> m(static_cast<std::size_t>(nr) * rdeg, C.zero());
    int src_off = 0;
    for (const auto& [i, ri] : k.ranks) {
      int rs = f.src.rank(i + deg);
      if (rs == 0) continue;
      int dst_off = 0;
      bool found = false;
      for (const auto& [ii, rii] : k.ranks) {
        if (f.dst.rank(ii + deg) == 0) continue;
        if (ii == i) {
          found = true;
          break;
        }
        dst_off += rii * f.dst.rank(ii + deg);
      }
      int rd = f.dst.rank(i + deg);
      if (found && rd > 0) {
        auto fm = f.comp(i + deg);
        fm.for_entries([&](int a, int b, const E& v) {
          if (C.is_zero(v)) return;
          for (int s = 0; s < ri; ++s) {
            std::size_t row = dst_off + static_cast<std::size_t>(s) * rd + a;
            std::size_t col = src_off + static_cast<std::size_t>(s) * rs + b;
            m[row * rdeg + col] = v;
          }
        });
      }
      src_off += ri * rs;
    }
    out.comps[deg] = Mat<E>::build(
        nr, rdeg, [&](int i2, int j2) { return m[static_cast<std::size_t>(i2) * rdeg + j2]; },
        [&](const E& v) { return C.is_zero(v); });
  }
  return out;
}

// ---- homology --------------------------------------------------------------------

template <class Eng>
FpMod<Eng> homology_at(const Complex<Eng>& x, int i) {
  if (x.rank(i) == 0) return FpMod<Eng>{0, mat_zero(x.eng.ctx(), 0, 0)};
  auto kernel = x.eng.kernel(x.d(i));
  return subquotient(x.eng, kernel, x.d(i + 1));
}

template <class Eng>
std::map<int, FpMod<Eng>> homology(const Complex<Eng>& x) {
  std::map<int, FpMod<Eng>> out;
  if (x.is_zero_complex()) return out;
  for (int i = x.lo(); i <= x.hi(); ++i) out[i] = homology_at(x, i);
  return out;
}

struct InfSupAmp {
  bool exact = true;  // no nonzero homology anywhere
  int inf = 0, sup = 0, amp = 0;
  friend bool operator==(const InfSupAmp&, const InfSupAmp&) = default;
};

template <class Eng>
InfSupAmp inf_sup_amp(const Complex<Eng>& x) {
  InfSupAmp out;
  if (x.is_zero_complex()) return out;
  std::optional<int> lo, hi;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    auto h = homology_at(x, i);
    if (module_is_zero(x.eng, h)) continue;
    if (!lo) lo = i;
    hi = i;
  }
  if (!lo) return out;
  out.exact = false;
  out.inf = *lo;
  out.sup = *hi;
  out.amp = *hi - *lo;
  return out;
}

/// Quasi-isomorphism test: the induced map on every homology degree must be
/// invertible modulo the presentations (equal invariants alone do not
/// suffice).
template <class Eng>
bool is_quasi_iso(const ChainMap<Eng>& f) {
  const Eng& eng = f.src.eng;
  int lo = std::min(f.src.lo(), f.dst.lo());
  int hi = std::max(f.src.hi(), f.dst.hi());
  for (int i = lo; i <= hi; ++i) {
    auto hs = homology_at(f.src, i);
    auto hd = homology_at(f.dst, i);
    bool zs = module_is_zero(eng, hs);
    bool zd = module_is_zero(eng, hd);
    if (zs && zd) continue;
    if (zs != zd) return false;
    // express f on homology generators: columns are f(ker-gen) in dst kernel coords
    auto ker_s = eng.kernel(f.src.d(i));
    auto ker_d = eng.kernel(f.dst.d(i));
    auto img = mat_mul(eng.ctx(), f.comp(i), ker_s);
    auto span = mat_hcat(eng.ctx(), ker_d, f.dst.d(i + 1));
    auto coords = eng.solve(span, img);
    require(coords.has_value(), errc::computation_error, "chain map does not preserve kernels");
    auto hmat = Mat<typename Eng::Elem>::build(
        ker_d.cols(), img.cols(), [&](int a, int b) { return coords->at(a, b); },
        [&](const typename Eng::Elem& v) { return eng.ctx().is_zero(v); });
    PresMap<Eng> hf{hs, hd, hmat};
    if (!map_is_iso(eng, hf)) return false;
  }
  return true;
}

}  // namespace dercat
