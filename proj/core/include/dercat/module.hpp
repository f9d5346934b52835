#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dercat/engine.hpp"

namespace dercat {

/// Finitely presented module coker(rels : R^r -> R^gens); relations are the
/// columns of `rels`.
template <class Eng>
struct FpMod {
  using Elem = typename Eng::Elem;
  int gens = 0;
  Mat<Elem> rels;
};

template <class Eng>
FpMod<Eng> free_module(const Eng& eng, int rank) {
  return FpMod<Eng>{rank, mat_zero(eng.ctx(), rank, 0)};
}

template <class Eng>
FpMod<Eng> presented(const Eng&, const Mat<typename Eng::Elem>& rels) {
  return FpMod<Eng>{rels.rows(), rels};
}

/// Cyclic module R/I as coker of a row of generators.
template <class K>
FpMod<PolyEngine<K>> cyclic_module(const PolyEngine<K>& eng, const Ideal<K>& I) {
  return FpMod<PolyEngine<K>>{1, Mat<Poly<K>>::build(
                                     1, static_cast<int>(I.gens.size()), [&](int, int j) { return I.gens[j]; },
                                     [&](const Poly<K>& p) { return p.is_zero(); })};
}

/// Zero test: every basis vector must lie in the relation span.
template <class Eng>
bool module_is_zero(const Eng& eng, const FpMod<Eng>& m) {
  if (m.gens == 0) return true;
  auto id = Mat<typename Eng::Elem>::identity(m.gens, eng.ctx());
  return eng.solve(m.rels, id).has_value();
}

/// Presentation of span(U)/span(W) inside R^n, where span(W) must be
/// contained in span(U): generators are the columns of U, relations are the
/// U-coordinates of anything that lands back in span(W).
template <class Eng>
FpMod<Eng> subquotient(const Eng& eng, const Mat<typename Eng::Elem>& u, const Mat<typename Eng::Elem>& w) {
  using E = typename Eng::Elem;
  int s = u.cols();
  auto both = mat_hcat(eng.ctx(), u, w);
  auto ker = eng.kernel(both);
  auto rels = Mat<E>::build(
      s, ker.cols(), [&](int i, int j) { return ker.at(i, j); },
      [&](const E& v) { return eng.ctx().is_zero(v); });
  return FpMod<Eng>{s, rels};
}

template <class Eng>
FpMod<Eng> direct_sum(const Eng& eng, const FpMod<Eng>& a, const FpMod<Eng>& b) {
  auto z01 = mat_zero(eng.ctx(), a.gens, b.rels.cols());
  auto z10 = mat_zero(eng.ctx(), b.gens, a.rels.cols());
  return FpMod<Eng>{a.gens + b.gens, mat_block2(eng.ctx(), a.rels, z01, z10, b.rels)};
}

// ---- maps between presented modules -------------------------------------------

/// Map coker(N1) -> coker(N2) given on generators by `mat` (gens2 x gens1).
template <class Eng>
struct PresMap {
  FpMod<Eng> src, dst;
  Mat<typename Eng::Elem> mat;
};

template <class Eng>
bool map_well_defined(const Eng& eng, const PresMap<Eng>& f) {
  auto img = mat_mul(eng.ctx(), f.mat, f.src.rels);
  return eng.solve(f.dst.rels, img).has_value();
}

template <class Eng>
bool map_is_surjective(const Eng& eng, const PresMap<Eng>& f) {
  auto span = mat_hcat(eng.ctx(), f.mat, f.dst.rels);
  auto id = Mat<typename Eng::Elem>::identity(f.dst.gens, eng.ctx());
  return eng.solve(span, id).has_value();
}

/// Generators (in source coordinates) of ker(f) as a submodule of the source.
template <class Eng>
Mat<typename Eng::Elem> map_kernel_gens(const Eng& eng, const PresMap<Eng>& f) {
  using E = typename Eng::Elem;
  auto both = mat_hcat(eng.ctx(), f.mat, f.dst.rels);
  auto ker = eng.kernel(both);
  return Mat<E>::build(
      f.src.gens, ker.cols(), [&](int i, int j) { return ker.at(i, j); },
      [&](const E& v) { return eng.ctx().is_zero(v); });
}

template <class Eng>
bool map_is_injective(const Eng& eng, const PresMap<Eng>& f) {
  auto kg = map_kernel_gens(eng, f);
  return eng.solve(f.src.rels, kg).has_value();
}

/// Two-sided invertibility modulo the presentations.
template <class Eng>
bool map_is_iso(const Eng& eng, const PresMap<Eng>& f) {
  return map_is_surjective(eng, f) && map_is_injective(eng, f);
}

// ---- invariants ----------------------------------------------------------------

/// PID invariants of a presented ZZ-module.
inline PidInvariants<Int> zz_invariants(const ZZEngine& eng, const FpMod<ZZEngine>& m) {
  return cokernel_invariants(eng.euclid, m.gens, m.rels);
}

/// Comparable summary of a presented module over a polynomial ring: zero
/// flag, reduced annihilator basis, and fibre dimensions over a fixed panel
/// of rational points. Equal modules get equal fingerprints; for the graded
/// desk-scale corpus this is a faithful iso-invariant set.
struct ModuleFingerprint {
  bool zero = true;
  std::vector<std::string> annihilator;
  std::vector<int> panel_dims;
  friend bool operator==(const ModuleFingerprint&, const ModuleFingerprint&) = default;
};

template <class K>
std::vector<std::vector<typename K::Elem>> fingerprint_panel(const PolyRing<K>& R, int count = 4) {
  std::vector<std::vector<typename K::Elem>> pts;
  for (int k = 0; k < count; ++k) {
    std::vector<typename K::Elem> pt;
    for (int i = 0; i < R.nvars(); ++i) pt.push_back(R.coeff.from_int(1 + k + 2 * i + k * i));
    pts.push_back(std::move(pt));
  }
  return pts;
}

template <class K>
ModuleFingerprint fingerprint(const PolyEngine<K>& eng, const FpMod<PolyEngine<K>>& m) {
  ModuleFingerprint out;
  out.zero = module_is_zero(eng, m);
  if (out.zero) return out;
  auto& R = eng.ring;
  auto ann = annihilator_of_presentation(R, m.gens, eng.mat_cols(m.rels));
  for (const auto& g : ideal_groebner(ann)) out.annihilator.push_back(R.to_string(g));
  for (const auto& pt : fingerprint_panel(R)) {
    // dim over the residue field at the point = gens - rank of evaluated rels
    if constexpr (std::is_same_v<K, RatField>) {
      RatField f;
      auto ev = Mat<Rat>::build(
          m.gens, m.rels.cols(), [&](int i, int j) { return eval_at(R, m.rels.at(i, j), pt); },
          [&](const Rat& v) { return v == 0; });
      out.panel_dims.push_back(m.gens - rank_kernel(f, ev).rank);
    } else {
      PrimeField f = R.coeff;
      auto ev = Mat<Fp>::build(
          m.gens, m.rels.cols(), [&](int i, int j) { return eval_at(R, m.rels.at(i, j), pt); },
          [&](const Fp& v) { return v.v == 0; });
      out.panel_dims.push_back(m.gens - rank_kernel(f, ev).rank);
    }
  }
  return out;
}

/// Uniform invariants wrapper so generic code can compare per-degree
/// homology across the two ring families.
template <class Eng>
struct ModuleInvariants;

template <>
struct ModuleInvariants<ZZEngine> {
  PidInvariants<Int> inv;
  bool is_zero() const { return inv.is_zero(); }
  friend bool operator==(const ModuleInvariants&, const ModuleInvariants&) = default;
};

template <class K>
struct PolyModuleInvariants {
  ModuleFingerprint fp;
  bool is_zero() const { return fp.zero; }
  friend bool operator==(const PolyModuleInvariants&, const PolyModuleInvariants&) = default;
};

template <class K>
struct ModuleInvariants<PolyEngine<K>> : PolyModuleInvariants<K> {};

inline ModuleInvariants<ZZEngine> module_invariants(const ZZEngine& eng, const FpMod<ZZEngine>& m) {
  return {zz_invariants(eng, m)};
}

template <class K>
ModuleInvariants<PolyEngine<K>> module_invariants(const PolyEngine<K>& eng, const FpMod<PolyEngine<K>>& m) {
  ModuleInvariants<PolyEngine<K>> out;
  out.fp = fingerprint(eng, m);
  return out;
}

template <class Eng>
std::string invariants_to_string(const ModuleInvariants<Eng>& mi);

inline std::string invariants_to_string(const ModuleInvariants<ZZEngine>& mi) {
  std::string s = "Z^" + std::to_string(mi.inv.free_rank);
  for (const auto& t : mi.inv.torsion) s += " + Z/" + t.get_str();
  return mi.is_zero() ? "0" : s;
}

template <class K>
std::string invariants_to_string(const ModuleInvariants<PolyEngine<K>>& mi) {
  if (mi.is_zero()) return "0";
  std::string s = "ann=(";
  for (std::size_t i = 0; i < mi.fp.annihilator.size(); ++i) s += (i ? ", " : "") + mi.fp.annihilator[i];
  s += ") fibre-dims=[";
  for (std::size_t i = 0; i < mi.fp.panel_dims.size(); ++i)
    s += (i ? "," : "") + std::to_string(mi.fp.panel_dims[i]);
  s += "]";
  return s;
}

}  // namespace dercat
