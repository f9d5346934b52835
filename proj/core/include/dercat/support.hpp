#pragma once

#include <map>
#include <string>
#include <vector>

#include "dercat/derived.hpp"

namespace dercat {

/// Zariski-closed set V(defining_ideal), with a note of which annihilators
/// were intersected to produce it. Equality is radical equality.
template <class K>
struct SupportSet {
  Ideal<K> defining_ideal;
  std::string provenance;
};

template <class K>
bool closed_subset(const SupportSet<K>& a, const SupportSet<K>& b) {
  // V(I_a) subset of V(I_b) iff I_b is contained in rad(I_a)
  require(a.defining_ideal.ring.vars == b.defining_ideal.ring.vars, errc::ring_mismatch,
          "closed sets over different rings");
  for (const auto& g : b.defining_ideal.gens)
    if (!radical_membership(g, a.defining_ideal)) return false;
  return true;
}

template <class K>
bool closed_set_equal(const SupportSet<K>& a, const SupportSet<K>& b) {
  return closed_subset(a, b) && closed_subset(b, a);
}

template <class K>
SupportSet<K> closed_set(const Ideal<K>& i, std::string provenance = "") {
  return SupportSet<K>{i, std::move(provenance)};
}

/// supp of a bounded complex with finitely generated homology:
/// V(intersection of the homology annihilators). The zero complex gives V(1).
template <class K>
SupportSet<K> supp_fg(const PolyEngine<K>& eng, const Complex<PolyEngine<K>>& x) {
  const auto& R = eng.ring;
  std::optional<Ideal<K>> acc;
  std::string prov;
  if (!x.is_zero_complex()) {
    for (int i = x.lo(); i <= x.hi(); ++i) {
      auto h = homology_at(x, i);
      if (module_is_zero(eng, h)) continue;
      auto ann = annihilator_of_presentation(R, h.gens, eng.mat_cols(h.rels));
      prov += (prov.empty() ? "Ann H_" : " ^ Ann H_") + std::to_string(i);
      acc = acc ? ideal_intersection(*acc, ann) : ann;
    }
  }
  if (!acc) return SupportSet<K>{make_ideal(R, {R.one()}), "zero complex"};
  return SupportSet<K>{*acc, prov};
}

template <class K>
SupportSet<K> supp_fg(const PolyEngine<K>& eng, const FpMod<PolyEngine<K>>& m) {
  if (module_is_zero(eng, m)) return SupportSet<K>{make_ideal(eng.ring, {eng.ring.one()}), "zero module"};
  auto ann = annihilator_of_presentation(eng.ring, m.gens, eng.mat_cols(m.rels));
  return SupportSet<K>{ann, "Ann M"};
}

// ---- membership -----------------------------------------------------------------

enum class Membership { yes, no, undetected_up_to_bound };

inline const char* membership_name(Membership m) {
  switch (m) {
    case Membership::yes: return "yes";
    case Membership::no: return "no";
    case Membership::undetected_up_to_bound: return "undetected-up-to-bound";
  }
  return "?";
}

template <class K>
struct MembershipVerdict {
  PrimeIdeal<K> prime;
  Membership member = Membership::no;
  int witness_degree = 0;       // degree of the surviving homology, when yes
  std::string witness;          // invariants of the witness, or the bound note
  int bound_used = -1;          // -1 when the answer is definitive
};

/// p in supp(X): Koszul detection. Tensor the Koszul complex on generators of
/// p with X and ask whether any homology module survives localization at p,
/// i.e. has annihilator contained in p.
template <class K>
MembershipVerdict<K> supp_membership(const PolyEngine<K>& eng, const PrimeIdeal<K>& p,
                                     const Complex<PolyEngine<K>>& x) {
  const auto& R = eng.ring;
  auto gb = ideal_groebner(p.ideal);
  auto amb = R.ambient();
  auto in_p = [&](const Ideal<K>& ann) {
    for (const auto& g : ann.gens)
      if (!amb.nf(g, gb).is_zero()) return false;
    return true;
  };
  std::vector<Poly<K>> gens;
  for (const auto& g : p.ideal.gens) gens.push_back(g);
  auto t = tensor_complexes(koszul_complex(eng, gens), x);
  MembershipVerdict<K> out{p, Membership::no, 0, "", -1};
  if (t.is_zero_complex()) return out;
  for (int i = t.lo(); i <= t.hi(); ++i) {
    auto h = homology_at(t, i);
    if (module_is_zero(eng, h)) continue;
    auto ann = annihilator_of_presentation(R, h.gens, eng.mat_cols(h.rels));
    if (in_p(ann)) {
      out.member = Membership::yes;
      out.witness_degree = i;
      out.witness = invariants_to_string(module_invariants(eng, h));
      return out;
    }
  }
  return out;
}

template <class K>
MembershipVerdict<K> supp_membership(const PolyEngine<K>& eng, const PrimeIdeal<K>& p,
                                     const FpMod<PolyEngine<K>>& m) {
  int cap = eng.ring.is_quotient() ? 8 : eng.ring.nvars() + 2;
  auto f = free_resolution(eng, m, cap).resolution;
  return supp_membership(eng, p, f);
}

/// m in co-supp(X) for maximal m: Ext^i(R/m, X) != 0 for some i up to the
/// bound. Over a free polynomial ring the residue field has a finite free
/// resolution, so the verdict is definitive; over quotient rings the answer
/// may be "undetected up to B".
template <class K>
MembershipVerdict<K> cosupp_membership_maximal(const PolyEngine<K>& eng, const PrimeIdeal<K>& m,
                                               const Complex<PolyEngine<K>>& x, int bound = -1) {
  const auto& R = eng.ring;
  require(m.is_maximal, errc::not_maximal,
          "co-support membership is computed at certified maximal ideals only");
  MembershipVerdict<K> out{m, Membership::no, 0, "", -1};
  if (x.is_zero_complex()) return out;
  bool regular = !R.is_quotient();
  int amp = x.hi() - x.lo();
  int b = bound > 0 ? bound : R.nvars() + amp + 2;
  int len = regular ? R.nvars() + 1 : b;
  auto res = free_resolution(eng, cyclic_module(eng, m.ideal), len);
  auto h = hom_complexes(res.resolution, x);
  if (!h.is_zero_complex()) {
    for (int i = h.hi(); i >= h.lo(); --i) {
      auto hm = homology_at(h, i);
      if (module_is_zero(eng, hm)) continue;
      out.member = Membership::yes;
      out.witness_degree = i;
      out.witness = invariants_to_string(module_invariants(eng, hm));
      return out;
    }
  }
  if (regular && res.complete) return out;  // provably zero
  out.member = Membership::undetected_up_to_bound;
  out.bound_used = b;
  out.witness = "no nonzero Ext up to bound " + std::to_string(b);
  return out;
}

template <class K>
MembershipVerdict<K> cosupp_membership_maximal(const PolyEngine<K>& eng, const PrimeIdeal<K>& m,
                                               const FpMod<PolyEngine<K>>& mod, int bound = -1) {
  int cap = eng.ring.is_quotient() ? std::max(bound, 8) + kResolutionGuard : eng.ring.nvars() + 2;
  auto f = free_resolution(eng, mod, cap).resolution;
  return cosupp_membership_maximal(eng, m, f, bound);
}

// ---- Bass numbers ------------------------------------------------------------------

/// Substitute zero for the variables of a monomial prime: the residue ring is
/// the polynomial ring on the surviving variables.
template <class K>
struct MonomialPrimeReduction {
  PolyRing<K> residue_ring;
  std::vector<int> kept;  // indices of surviving variables

  Poly<K> reduce(const PolyRing<K>& src, const Poly<K>& f) const {
    Poly<K> out;
    for (const auto& [mono, c] : f.t) {
      bool killed = false;
      for (int i = 0; i < src.nvars(); ++i) {
        bool kept_var = std::find(kept.begin(), kept.end(), i) != kept.end();
        if (!kept_var && mono.e[i] > 0) {
          killed = true;
          break;
        }
      }
      if (killed) continue;
      Monomial mm = Monomial::unit(static_cast<int>(kept.size()));
      for (std::size_t k = 0; k < kept.size(); ++k) mm.e[k] = mono.e[kept[k]];
      out.t.emplace_back(std::move(mm), c);
    }
    std::sort(out.t.begin(), out.t.end(),
              [&](const auto& a, const auto& b) { return residue_ring.cmp(a.first, b.first) > 0; });
    return out;
  }
};

template <class K>
MonomialPrimeReduction<K> monomial_prime_reduction(const PolyRing<K>& R, const PrimeIdeal<K>& p) {
  require(p.certificate == PrimeCertificate::monomial_prime, errc::not_certifiable,
          "monomial-prime certificate required");
  std::vector<bool> in_p(R.nvars(), false);
  for (const auto& g : p.ideal.gens)
    for (int i = 0; i < R.nvars(); ++i)
      if (g.lm().e[i] > 0) in_p[i] = true;
  MonomialPrimeReduction<K> out;
  for (int i = 0; i < R.nvars(); ++i)
    if (!in_p[i]) out.kept.push_back(i);
  out.residue_ring.coeff = R.coeff;
  out.residue_ring.order = MonomialOrder{R.order.kind, 0};
  for (int i : out.kept) out.residue_ring.vars.push_back(R.vars[i]);
  return out;
}

/// Bass numbers mu^i(p, M) in the window: the generic rank over R/p of
/// Ext^i(R/p, M), computed as generator count minus the fraction-field rank
/// of the reduced presentation.
template <class K>
std::map<int, int> bass_numbers(const PolyEngine<K>& eng, const PrimeIdeal<K>& p,
                                const FpMod<PolyEngine<K>>& m, DegreeWindow ext_window) {
  const auto& R = eng.ring;
  require(!R.is_quotient(), errc::not_certifiable, "Bass numbers need a free polynomial base ring");
  require(p.certificate == PrimeCertificate::monomial_prime || p.is_maximal, errc::not_certifiable,
          "Bass numbers need a monomial-prime or maximal certificate");
  auto ext = derived_hom(eng, cyclic_module(eng, p.ideal), m,
                         DegreeWindow{-ext_window.hi, -ext_window.lo});
  std::map<int, int> out;
  for (int i = ext_window.lo; i <= ext_window.hi; ++i) {
    const auto& e = ext[-i];
    if (module_is_zero(eng, e)) {
      out[i] = 0;
      continue;
    }
    if (p.certificate == PrimeCertificate::monomial_prime) {
      auto red = monomial_prime_reduction(R, p);
      auto rr = red.residue_ring;
      auto reduced = Mat<Poly<K>>::build(
          e.gens, e.rels.cols(), [&](int r, int c) { return red.reduce(R, e.rels.at(r, c)); },
          [&](const Poly<K>& v) { return v.is_zero(); });
      PolyDomain<K> dom{rr};
      out[i] = e.gens - bareiss_rank(dom, reduced);
    } else {
      auto ev = residue_evaluation(p);
      require(ev.has_value(), errc::not_certifiable, "maximal ideal without base-field residue map");
      if constexpr (std::is_same_v<K, RatField>) {
        RatField f;
        auto evm = Mat<Rat>::build(
            e.gens, e.rels.cols(), [&](int r, int c) { return eval_at(R, e.rels.at(r, c), *ev); },
            [](const Rat& v) { return v == 0; });
        out[i] = e.gens - rank_kernel(f, evm).rank;
      } else {
        PrimeField f = R.coeff;
        auto evm = Mat<Fp>::build(
            e.gens, e.rels.cols(), [&](int r, int c) { return eval_at(R, e.rels.at(r, c), *ev); },
            [](const Fp& v) { return v.v == 0; });
        out[i] = e.gens - rank_kernel(f, evm).rank;
      }
    }
  }
  return out;
}

// ---- maximal-ideal panels ------------------------------------------------------------

/// Deterministic panel of certified maximal ideals: the monomial maximal
/// ideal plus a coordinate grid of points (x_i - a_i).
template <class K>
std::vector<PrimeIdeal<K>> maximal_panel(const PolyRing<K>& R, int count) {
  std::vector<PrimeIdeal<K>> out;
  int n = R.nvars();
  require(n > 0 && !R.is_quotient(), errc::not_certifiable, "panels need a free polynomial ring");
  {
    std::vector<Poly<K>> gens;
    for (int i = 0; i < n; ++i) gens.push_back(R.var(i));
    out.push_back(certify_prime(make_ideal(R, gens)));
  }
  // walk a small coordinate box, skipping the origin (already present)
  for (long radius = 1; static_cast<int>(out.size()) < count; ++radius) {
    std::vector<long> pt(n, 0);
    std::function<void(int)> walk = [&](int i) {
      if (static_cast<int>(out.size()) >= count) return;
      if (i == n) {
        bool on_shell = false;
        for (long v : pt)
          if (std::abs(v) == radius) on_shell = true;
        if (!on_shell) return;
        std::vector<Poly<K>> gens;
        for (int k = 0; k < n; ++k) gens.push_back(R.sub(R.var(k), R.from_int(pt[k])));
        out.push_back(certify_prime(make_ideal(R, gens)));
        return;
      }
      for (long v = 0; v <= radius; ++v) {
        for (long s : {v, -v}) {
          pt[i] = s;
          walk(i + 1);
          if (v == 0) break;
        }
      }
      pt[i] = 0;
    };
    walk(0);
  }
  return out;
}

// ---- identity checks (used by the verification suites) --------------------------------

template <class K>
bool check_supp_tensor_identity(const PolyEngine<K>& eng, const Complex<PolyEngine<K>>& x,
                                const Complex<PolyEngine<K>>& y) {
  auto sx = supp_fg(eng, x);
  auto sy = supp_fg(eng, y);
  auto both = closed_set(ideal_sum(sx.defining_ideal, sy.defining_ideal));
  auto st = supp_fg(eng, tensor_complexes(x, y));
  return closed_set_equal(st, both);
}

template <class K>
bool check_supp_rhom_identity(const PolyEngine<K>& eng, const Complex<PolyEngine<K>>& m,
                              const Complex<PolyEngine<K>>& x) {
  auto sm = supp_fg(eng, m);
  auto sx = supp_fg(eng, x);
  auto both = closed_set(ideal_sum(sm.defining_ideal, sx.defining_ideal));
  auto sh = supp_fg(eng, hom_complexes(m, x));
  return closed_set_equal(sh, both);
}

template <class K>
bool check_cone_subadditivity(const PolyEngine<K>& eng, const ChainMap<PolyEngine<K>>& f) {
  auto sy = supp_fg(eng, f.src);
  auto sz = supp_fg(eng, f.dst);
  auto uni = closed_set(ideal_product(sy.defining_ideal, sz.defining_ideal));
  auto sc = supp_fg(eng, cone(f));
  return closed_subset(sc, uni);
}

/// min(supp) = min(Supp) on complexes whose homology annihilators are
/// monomial: compare the minimal primes of the intersected annihilator with
/// the minimized union of the per-degree minimal primes.
template <class K>
bool check_min_supp_identity(const PolyEngine<K>& eng, const Complex<PolyEngine<K>>& x) {
  const auto& R = eng.ring;
  std::vector<Ideal<K>> anns;
  if (!x.is_zero_complex()) {
    for (int i = x.lo(); i <= x.hi(); ++i) {
      auto h = homology_at(x, i);
      if (module_is_zero(eng, h)) continue;
      auto ann = annihilator_of_presentation(R, h.gens, eng.mat_cols(h.rels));
      anns.push_back(with_gb(ann));
    }
  }
  if (anns.empty()) return true;  // empty support on both sides
  auto monomialize = [&](const Ideal<K>& i) -> std::optional<Ideal<K>> {
    std::vector<Poly<K>> gens;
    for (const auto& g : ideal_groebner(i)) {
      if (g.t.size() != 1) return std::nullopt;
      gens.push_back(g);
    }
    return make_ideal(R, gens);
  };
  std::optional<Ideal<K>> total;
  std::vector<PrimeIdeal<K>> union_primes;
  for (const auto& ann : anns) {
    auto mono = monomialize(ann);
    if (!mono) return true;  // only the monomial case is checked this way
    for (auto& p : minimal_primes_monomial(*mono)) union_primes.push_back(p);
    total = total ? ideal_intersection(*total, *mono) : *mono;
  }
  auto mono_total = monomialize(*total);
  if (!mono_total) return true;
  auto lhs = minimal_primes_monomial(*mono_total);  // min(supp)
  // minimize the union: min(Supp)
  std::vector<PrimeIdeal<K>> rhs;
  for (const auto& p : union_primes) {
    bool minimal = true;
    for (const auto& q : union_primes) {
      if (ideal_equal(p.ideal, q.ideal)) continue;
      if (ideal_contains(p.ideal, q.ideal)) {
        minimal = false;  // q strictly below p
        break;
      }
    }
    if (minimal) {
      bool dup = false;
      for (const auto& r : rhs)
        if (ideal_equal(r.ideal, p.ideal)) dup = true;
      if (!dup) rhs.push_back(p);
    }
  }
  if (lhs.size() != rhs.size()) return false;
  for (const auto& p : lhs) {
    bool found = false;
    for (const auto& q : rhs)
      if (ideal_equal(p.ideal, q.ideal)) found = true;
    if (!found) return false;
  }
  return true;
}

}  // namespace dercat
