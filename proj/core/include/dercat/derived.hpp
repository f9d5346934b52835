#pragma once

#include <map>
#include <vector>

#include "dercat/cech.hpp"
#include "dercat/complex.hpp"

namespace dercat {

struct DegreeWindow {
  int lo = 0, hi = 0;
  bool contains(int i) const { return lo <= i && i <= hi; }
};

// used when auto-sizing truncated resolutions: exactness is only guaranteed
// strictly below the resolution length
inline constexpr int kResolutionGuard = 2;

// ---- complex minimization -------------------------------------------------------

inline Int unit_inverse(const ZZEngine&, const Int& u) { return u; }  // u = +-1
template <class K>
Poly<K> unit_inverse(const PolyEngine<K>& eng, const Poly<K>& u) {
  return eng.ring.constant(eng.ring.inv_unit(u));
}
template <class F>
typename F::Elem unit_inverse(const FieldEngine<F>& eng, const typename F::Elem& u) {
  return eng.field.inv(u);
}

/// Cancel one unit entry of d(k) at (i, j): contractible direct summand
/// spanned by generator j upstairs and generator i downstairs.
template <class Eng>
void cancel_unit(Complex<Eng>& x, int k, int pi, int pj, Mat<typename Eng::Elem>* aug) {
  using E = typename Eng::Elem;
  const auto& C = x.eng.ctx();
  auto dk = x.d(k);
  E u = dk.at(pi, pj);
  // split dk = [[u, B],[C0, D]] after moving (pi, pj) to the front
  auto entry = [&](const Mat<E>& m, int i, int j) { return m.at(i, j); };
  int r = dk.rows(), c = dk.cols();
  auto row_idx = [&](int i) { return i < pi ? i : i + 1; };
  auto col_idx = [&](int j) { return j < pj ? j : j + 1; };
  // D' = D - C0 u^-1 B
  Mat<E> nd = Mat<E>::build(
      r - 1, c - 1,
      [&](int i, int j) {
        E v = entry(dk, row_idx(i), col_idx(j));
        E corr = C.mul(entry(dk, row_idx(i), pj), C.mul(unit_inverse(x.eng, u), entry(dk, pi, col_idx(j))));
        return C.sub(v, corr);
      },
      [&](const E& v) { return C.is_zero(v); });
  // d(k+1): drop row pj
  if (x.rank(k + 1) > 0) {
    auto up = x.d(k + 1);
    x.diffs[k + 1] = Mat<E>::build(
        c - 1, up.cols(), [&](int i, int j) { return up.at(col_idx(i), j); },
        [&](const E& v) { return C.is_zero(v); });
  }
  // d(k-1): drop column pi
  if (x.rank(k - 2) > 0 && x.diffs.count(k - 1)) {
    auto dn = x.d(k - 1);
    x.diffs[k - 1] = Mat<E>::build(
        dn.rows(), r - 1, [&](int i, int j) { return dn.at(i, row_idx(j)); },
        [&](const E& v) { return C.is_zero(v); });
  }
  if (aug && k == 1) {
    // generator pi of the target (degree 0) was redundant
    auto a = *aug;
    *aug = Mat<E>::build(
        a.rows(), r - 1, [&](int i, int j) { return a.at(i, row_idx(j)); },
        [&](const E& v) { return C.is_zero(v); });
  }
  x.diffs[k] = nd;
  x.ranks[k] -= 1;
  x.ranks[k - 1] -= 1;
  if (x.ranks[k] == 0) x.ranks.erase(k);
  if (x.rank(k - 1) == 0) x.ranks.erase(k - 1);
  for (auto it = x.diffs.begin(); it != x.diffs.end();) {
    if (x.rank(it->first) == 0 || x.rank(it->first - 1) == 0)
      it = x.diffs.erase(it);
    else
      ++it;
  }
}

/// Remove contractible summands (unit entries in differentials) wherever they
/// occur, optionally maintaining a degree-0 augmentation row set.
template <class Eng>
void minimize_complex(Complex<Eng>& x, Mat<typename Eng::Elem>* aug = nullptr) {
  const auto& C = x.eng.ctx();
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto& [k, m] : x.diffs) {
      int found_i = -1, found_j = -1;
      m.for_entries([&](int i, int j, const typename Eng::Elem& v) {
        if (found_i < 0 && C.is_unit(v)) {
          found_i = i;
          found_j = j;
        }
      });
      if (found_i >= 0) {
        cancel_unit(x, k, found_i, found_j, aug);
        progress = true;
        break;
      }
    }
  }
}

// ---- free resolutions --------------------------------------------------------------

template <class Eng>
struct ResolutionBundle {
  Complex<Eng> resolution;             // free complex in degrees 0..length
  Mat<typename Eng::Elem> augmentation;  // target generators x rank(F_0)
  int length = 0;
  bool complete = false;  // kernel reached zero: exact above degree 0 everywhere
};

/// Iterated-kernel free resolution of a presented module, pruned of
/// contractible summands. Over graded inputs the pruning leaves differentials
/// inside the irrelevant maximal ideal; `complete` reports whether the tower
/// closed before `length` ran out.
template <class Eng>
ResolutionBundle<Eng> free_resolution(const Eng& eng, const FpMod<Eng>& m, int length) {
  using E = typename Eng::Elem;
  require(length >= 0, errc::precondition_failed, "resolution length must be nonnegative");
  Complex<Eng> x;
  x.eng = eng;
  if (m.gens > 0) x.ranks[0] = m.gens;
  bool complete = false;
  Mat<E> cur = m.rels;
  int k = 1;
  while (m.gens > 0) {
    if (cur.cols() == 0 || mat_is_zero(eng.ctx(), cur)) {
      complete = true;
      break;
    }
    if (k > length) break;
    x.ranks[k] = cur.cols();
    x.diffs[k] = cur;
    cur = eng.kernel(cur);
    ++k;
  }
  if (m.gens == 0) complete = true;
  ResolutionBundle<Eng> out;
  out.augmentation = Mat<E>::identity(m.gens, eng.ctx());
  minimize_complex(x, &out.augmentation);
  out.resolution = std::move(x);
  out.length = out.resolution.is_zero_complex() ? 0 : out.resolution.hi();
  out.complete = complete;
  return out;
}

/// A bounded complex of finite free modules is already semiflat; resolving it
/// is the identity operation.
template <class Eng>
ResolutionBundle<Eng> free_resolution(const Eng& eng, const Complex<Eng>& x, int /*length*/) {
  ResolutionBundle<Eng> out;
  out.resolution = x;
  out.augmentation = Mat<typename Eng::Elem>::identity(x.rank(0), eng.ctx());
  out.length = x.is_zero_complex() ? 0 : x.hi();
  out.complete = true;
  return out;
}

/// Fully resolve a module over a ring of finite global dimension; throws when
/// the tower does not close (quotient rings).
template <class Eng>
Complex<Eng> resolve_completely(const Eng& eng, const FpMod<Eng>& m, int cap = 16) {
  auto b = free_resolution(eng, m, cap);
  require(b.complete, errc::unsupported_ring, "free resolution did not terminate within the cap");
  return b.resolution;
}

// ---- soft truncation ------------------------------------------------------------------

/// Kill homology in degrees >= s, preserve it strictly below s: drop terms
/// above s and resolve the kernel of d_s upward so nothing new appears.
template <class Eng>
Complex<Eng> truncate_soft_above(const Complex<Eng>& x, int s, int cap = 16) {
  const auto& C = x.eng.ctx();
  Complex<Eng> out;
  out.eng = x.eng;
  if (x.is_zero_complex() || s <= x.lo()) return out;  // everything killed
  for (const auto& [d, r] : x.ranks)
    if (d <= s) out.ranks[d] = r;
  for (const auto& [d, m] : x.diffs)
    if (d <= s) out.diffs[d] = m;
  if (x.rank(s) == 0) return make_complex(x.eng, std::move(out.ranks), std::move(out.diffs));
  Mat<typename Eng::Elem> cur = x.eng.kernel(x.d(s));
  int k = s + 1;
  while (cur.cols() > 0 && !mat_is_zero(C, cur)) {
    require(k - s <= cap, errc::unsupported_ring, "soft truncation tower did not close");
    out.ranks[k] = cur.cols();
    out.diffs[k] = cur;
    cur = x.eng.kernel(cur);
    ++k;
  }
  auto res = make_complex(x.eng, std::move(out.ranks), std::move(out.diffs));
  minimize_complex(res);
  return res;
}

// ---- derived tensor / Hom ---------------------------------------------------------------

template <class Eng>
std::map<int, FpMod<Eng>> homology_window(const Complex<Eng>& x, DegreeWindow w) {
  std::map<int, FpMod<Eng>> out;
  for (int i = w.lo; i <= w.hi; ++i) out[i] = homology_at(x, i);
  return out;
}

/// Derived tensor of two free complexes: the plain total tensor product.
template <class Eng>
std::map<int, FpMod<Eng>> derived_tensor(const Complex<Eng>& x, const Complex<Eng>& y, DegreeWindow w) {
  return homology_window(tensor_complexes(x, y), w);
}

/// Tor of two presented modules, resolving both sides to free complexes. The
/// resolution lengths come from the window plus the guard.
template <class Eng>
std::map<int, FpMod<Eng>> derived_tensor(const Eng& eng, const FpMod<Eng>& m, const FpMod<Eng>& n,
                                         DegreeWindow w) {
  int len = std::max(0, w.hi + 1 + kResolutionGuard);
  auto fm = free_resolution(eng, m, len).resolution;
  auto fn = free_resolution(eng, n, len).resolution;
  return homology_window(tensor_complexes(fm, fn), w);
}

/// RHom(X, Y) for a free bounded X: the plain Hom complex (Ext^i sits in
/// degree -i when X and Y are modules in degree 0).
template <class Eng>
std::map<int, FpMod<Eng>> derived_hom(const Complex<Eng>& x, const Complex<Eng>& y, DegreeWindow w) {
  return homology_window(hom_complexes(x, y), w);
}

template <class Eng>
std::map<int, FpMod<Eng>> derived_hom(const Eng& eng, const FpMod<Eng>& m, const FpMod<Eng>& n,
                                      DegreeWindow w) {
  int len_m = std::max(0, -w.lo + 1 + kResolutionGuard);
  // junk from the truncated target resolution shows up in Hom degrees
  // >= len_n - len_m, so push it past the window top
  int len_n = len_m + std::max(0, w.hi) + 1 + kResolutionGuard;
  auto fm = free_resolution(eng, m, len_m).resolution;
  auto fn = free_resolution(eng, n, len_n).resolution;
  return homology_window(hom_complexes(fm, fn), w);
}

// ---- one-sided Tor (resolve a chosen argument, keep the other presented) -----------------

/// Homology of (free complex F) tensor (presented module N) in a window,
/// computed honestly on the presented complex with terms N^(rank F_i).
template <class Eng>
std::map<int, FpMod<Eng>> tensor_with_module_homology(const Complex<Eng>& f, const FpMod<Eng>& n,
                                                      DegreeWindow w) {
  const Eng& eng = f.eng;
  const auto& C = eng.ctx();
  using E = typename Eng::Elem;
  // term i: direct sum of rank(F_i) copies of N; map i: d_i (x) id_N
  auto term = [&](int i) {
    FpMod<Eng> t = FpMod<Eng>{0, mat_zero(C, 0, 0)};
    for (int c = 0; c < f.rank(i); ++c) t = direct_sum(eng, t, n);
    return t;
  };
  auto blow_up = [&](const Mat<E>& d) {
    // Kronecker product d (x) I_gens
    int g = n.gens;
    return Mat<E>::build(
        d.rows() * g, d.cols() * g,
        [&](int i, int j) {
          if (i % g != j % g) return C.zero();
          return d.at(i / g, j / g);
        },
        [&](const E& v) { return C.is_zero(v); });
  };
  std::map<int, FpMod<Eng>> out;
  for (int i = w.lo; i <= w.hi; ++i) {
    if (f.rank(i) == 0) {
      out[i] = FpMod<Eng>{0, mat_zero(C, 0, 0)};
      continue;
    }
    FpMod<Eng> src = term(i), dst = term(i - 1);
    PresMap<Eng> phi{src, dst, blow_up(f.d(i))};
    auto kergens = map_kernel_gens(eng, phi);
    auto w_span = mat_hcat(C, blow_up(f.d(i + 1)), src.rels);
    out[i] = subquotient(eng, kergens, w_span);
  }
  return out;
}

enum class ResolveSide { first, second };

/// Tor resolving only the chosen argument; the oracle pair for the balance
/// property.
template <class Eng>
std::map<int, FpMod<Eng>> tor_one_sided(const Eng& eng, const FpMod<Eng>& m, const FpMod<Eng>& n,
                                        DegreeWindow w, ResolveSide side) {
  int len = std::max(0, w.hi + 1 + kResolutionGuard);
  if (side == ResolveSide::first) {
    auto fm = free_resolution(eng, m, len).resolution;
    return tensor_with_module_homology(fm, n, w);
  }
  auto fn = free_resolution(eng, n, len).resolution;
  return tensor_with_module_homology(fn, m, w);
}

// ---- torsion functor -------------------------------------------------------------------

template <class K>
struct TorsionSubmodule {
  FpMod<PolyEngine<K>> module;
  Mat<Poly<K>> inclusion;  // columns: generators inside the ambient presentation
};

/// Gamma_a(M) as a presented submodule with its inclusion, via saturation of
/// the relation submodule.
template <class K>
TorsionSubmodule<K> torsion_submodule(const PolyEngine<K>& eng, const Ideal<K>& a,
                                      const FpMod<PolyEngine<K>>& m) {
  const auto& R = eng.ring;
  auto rels = eng.mat_cols(m.rels);
  auto sat = submodule_saturate(R, m.gens, rels, a);
  // drop generators that are already relations (zero in M)
  std::vector<Vec<K>> gens;
  for (const auto& v : sat)
    if (!in_span(R, m.gens, rels, v)) gens.push_back(v);
  auto inc = eng.cols_mat(m.gens, gens);
  auto sub = subquotient(eng, inc, m.rels);
  return TorsionSubmodule<K>{sub, inc};
}

/// Gamma is a subfunctor of the identity; equality with the whole module
/// means every ambient generator lies in the saturated span.
template <class K>
bool torsion_is_whole_module(const PolyEngine<K>& eng, const TorsionSubmodule<K>& t,
                             const FpMod<PolyEngine<K>>& m) {
  const auto& R = eng.ring;
  auto span = eng.mat_cols(mat_hcat(R, t.inclusion, m.rels));
  for (int c = 0; c < m.gens; ++c) {
    Vec<K> e = vec_zero(R, m.gens);
    e[c] = R.one();
    if (!in_span(R, m.gens, span, e)) return false;
  }
  return true;
}

// ---- local cohomology fibres ----------------------------------------------------------

/// Dimensions per degree of kappa(m) tensor^L RGamma_a(X): resolve X, reduce
/// mod the maximal ideal via its evaluation point, collapse the Cech complex
/// by the tag rule, tensor over the residue field.
template <class K>
std::map<int, int> local_cohomology_fiber(const PolyEngine<K>& eng, const PrimeIdeal<K>& m, const Ideal<K>& a,
                                          const Complex<PolyEngine<K>>& x, DegreeWindow w) {
  using F = K;
  require(m.is_maximal, errc::not_maximal, "fibres are computed at certified maximal ideals only");
  require(!ideal_is_unit(a), errc::precondition_failed, "the torsion ideal must be proper");
  auto ev = residue_evaluation(m);
  require(ev.has_value(), errc::not_certifiable,
          "maximal ideal has no base-field evaluation point; extension residue fields are unsupported");
  FieldEngine<F> fe{eng.ring.coeff};
  // X (x) kappa
  Complex<FieldEngine<F>> v;
  v.eng = fe;
  v.ranks = x.ranks;
  for (const auto& [d, mx] : x.diffs) {
    v.diffs[d] = Mat<typename F::Elem>::build(
        mx.rows(), mx.cols(), [&](int i, int j) { return eval_at(eng.ring, mx.at(i, j), *ev); },
        [&](const typename F::Elem& val) { return fe.field.is_zero(val); });
  }
  validate_complex(v);
  // collapsed Cech on the generators of a
  auto cech = cech_complex(eng, a.gens);
  std::vector<typename F::Elem> vals;
  for (const auto& g : cech.elements) vals.push_back(eval_at(eng.ring, g, *ev));
  auto c = cech_collapse(cech, fe, vals);
  auto total = tensor_complexes(v, c);
  std::map<int, int> out;
  for (int i = w.lo; i <= w.hi; ++i) {
    auto h = homology_at(total, i);
    auto rk = h.rels.cols() == 0 ? 0 : rank_kernel(fe.field, h.rels).rank;
    out[i] = h.gens - rk;
  }
  return out;
}

/// inf/sup/amp of Cech(x) (x) M for a single element and a finitely generated
/// module, without materializing the localization: H_0 is the x-torsion of M,
/// and H_(-1) vanishes iff x acts surjectively on M modulo that torsion (a
/// finitely generated module admits a surjective endomorphism iff bijective).
template <class K>
InfSupAmp cech_inf_sup_single(const PolyEngine<K>& eng, const Poly<K>& x, const FpMod<PolyEngine<K>>& m) {
  const auto& R = eng.ring;
  auto gamma = torsion_submodule(eng, make_ideal(R, {x}), m);
  bool h0_nonzero = !module_is_zero(eng, gamma.module);
  // N = M / Gamma, then H_(-1) != 0 iff N/xN != 0
  auto n_rels = mat_hcat(R, m.rels, gamma.inclusion);
  auto xid = mat_scale(R, x, Mat<Poly<K>>::identity(m.gens, R));
  auto quot = FpMod<PolyEngine<K>>{m.gens, mat_hcat(R, n_rels, xid)};
  bool hm1_nonzero = !module_is_zero(eng, quot);
  InfSupAmp out;
  if (!h0_nonzero && !hm1_nonzero) return out;
  out.exact = false;
  out.sup = h0_nonzero ? 0 : -1;
  out.inf = hm1_nonzero ? -1 : 0;
  out.amp = out.sup - out.inf;
  return out;
}

// ---- derived completion (finitely generated shortcut) -----------------------------------

/// LLambda^a on complexes with finitely generated homology reduces to the
/// homology itself carrying a completion tag; queries answer from the module.
template <class Eng, class K>
struct CompletionTagged {
  FpMod<Eng> module;
  Ideal<K> tag;
};

template <class K>
std::map<int, CompletionTagged<PolyEngine<K>, K>> derived_completion_fg(const PolyEngine<K>&,
                                                                        const Ideal<K>& a,
                                                                        const Complex<PolyEngine<K>>& x) {
  std::map<int, CompletionTagged<PolyEngine<K>, K>> out;
  if (x.is_zero_complex()) return out;
  for (int i = x.lo(); i <= x.hi(); ++i) out[i] = {homology_at(x, i), a};
  return out;
}

}  // namespace dercat
