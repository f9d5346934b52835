#pragma once

#include <cstdint>
#include <vector>

#include "dercat/derived.hpp"

namespace dercat {

/// Deterministic splitmix64 stream; identical sequences on every platform,
/// which keeps seeded reports byte-identical.
struct SeededRng {
  std::uint64_t state;

  explicit SeededRng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
  long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool coin() { return below(2) == 1; }
};

/// Seeded generators for desk-scale test corpora over a polynomial ring.
template <class K>
struct Corpus {
  PolyEngine<K> eng;
  SeededRng rng;

  Corpus(PolyEngine<K> e, std::uint64_t seed) : eng(std::move(e)), rng(seed) {}

  Monomial random_monomial(int maxdeg) {
    int n = eng.ring.nvars();
    Monomial m = Monomial::unit(n);
    int deg = static_cast<int>(rng.below(static_cast<std::uint64_t>(maxdeg))) + 1;
    for (int d = 0; d < deg; ++d) m.e[rng.below(static_cast<std::uint64_t>(n))] += 1;
    return m;
  }

  Poly<K> random_mono_poly(int maxdeg) { return eng.ring.term(random_monomial(maxdeg), eng.ring.coeff.one()); }

  /// A monomial or a binomial with small coefficients.
  Poly<K> random_mono_or_binomial(int maxdeg) {
    auto f = random_mono_poly(maxdeg);
    if (rng.coin()) {
      auto c = eng.ring.coeff.from_int(rng.range(1, 3));
      f = eng.ring.sub(f, eng.ring.term(random_monomial(maxdeg), c));
    }
    return f;
  }

  Ideal<K> random_ideal(int maxgens, int maxdeg, bool monomial_only) {
    std::vector<Poly<K>> gens;
    int ng = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(maxgens)));
    for (int i = 0; i < ng; ++i)
      gens.push_back(monomial_only ? random_mono_poly(maxdeg) : random_mono_or_binomial(maxdeg));
    auto i = make_ideal(eng.ring, std::move(gens));
    if (ideal_is_unit(i)) return make_ideal(eng.ring, {random_mono_poly(maxdeg)});
    return i;
  }

  /// A bounded complex with finitely generated homology: the full free
  /// resolution of a random cyclic module, possibly shifted, possibly direct
  /// sum with a second block or replaced by a small Koszul complex.
  Complex<PolyEngine<K>> random_fg_complex(bool monomial_only = false) {
    auto block = [&]() -> Complex<PolyEngine<K>> {
      if (rng.below(4) == 0) {
        std::vector<Poly<K>> xs;
        int n = 1 + static_cast<int>(rng.below(2));
        for (int i = 0; i < n; ++i) xs.push_back(random_mono_poly(2));
        return koszul_complex(eng, xs);
      }
      auto i = random_ideal(2, 3, monomial_only);
      return free_resolution(eng, cyclic_module(eng, i), eng.ring.nvars() + 2).resolution;
    };
    auto x = block();
    if (rng.coin()) x = shift_complex(x, static_cast<int>(rng.below(3)) - 1);
    if (rng.below(3) == 0) x = direct_sum_complex(x, shift_complex(block(), static_cast<int>(rng.below(2))));
    return x;
  }

  Complex<PolyEngine<K>> direct_sum_complex(const Complex<PolyEngine<K>>& a,
                                            const Complex<PolyEngine<K>>& b) {
    const auto& R = eng.ring;
    std::map<int, int> ranks;
    std::map<int, Mat<Poly<K>>> diffs;
    for (const auto& [d, r] : a.ranks) ranks[d] += r;
    for (const auto& [d, r] : b.ranks) ranks[d] += r;
    int lo = std::min(a.is_zero_complex() ? 0 : a.lo(), b.is_zero_complex() ? 0 : b.lo());
    int hi = std::max(a.is_zero_complex() ? 0 : a.hi(), b.is_zero_complex() ? 0 : b.hi());
    for (int d = lo; d <= hi; ++d) {
      if (!ranks.count(d) || !ranks.count(d - 1)) continue;
      diffs[d] = mat_block2(R, a.d(d), mat_zero(R, a.rank(d - 1), b.rank(d)),
                            mat_zero(R, b.rank(d - 1), a.rank(d)), b.d(d));
    }
    return make_complex(eng, std::move(ranks), std::move(diffs));
  }

  /// A self-map of a complex supported in V(x_0^k ...): multiplication by a
  /// scalar, a variable multiple, the identity, or an inclusion into a sum
  /// with an acyclic cone. Used by the morphism-detection suite.
  struct GeneratedMap {
    ChainMap<PolyEngine<K>> map;
    bool expected_qis;
  };

  GeneratedMap random_selfmap_supported_at(const Poly<K>& torsion_elt) {
    const auto& R = eng.ring;
    // X: resolution of R/(t^k), t the chosen torsion element
    int k = 1 + static_cast<int>(rng.below(3));
    Poly<K> power = R.one();
    for (int i = 0; i < k; ++i) power = R.mul(power, torsion_elt);
    auto x = free_resolution(eng, cyclic_module(eng, make_ideal(R, {power})), R.nvars() + 2).resolution;
    if (rng.coin()) x = shift_complex(x, static_cast<int>(rng.below(2)));
    switch (rng.below(4)) {
      case 0: {  // identity: qis
        return {identity_map(x), true};
      }
      case 1: {  // multiplication by a nonzero scalar: qis
        auto c = eng.ring.coeff.from_int(rng.range(1, 5));
        if (eng.ring.coeff.is_zero(c)) c = eng.ring.coeff.one();  // tiny characteristic
        ChainMap<PolyEngine<K>> f{x, x, {}};
        for (const auto& [d, r] : x.ranks)
          f.comps[d] = mat_scale(R, R.constant(c), Mat<Poly<K>>::identity(r, R));
        return {f, true};
      }
      case 2: {  // multiplication by the torsion element: kills socle, not qis
        ChainMap<PolyEngine<K>> f{x, x, {}};
        for (const auto& [d, r] : x.ranks)
          f.comps[d] = mat_scale(R, torsion_elt, Mat<Poly<K>>::identity(r, R));
        return {f, false};
      }
      default: {  // inclusion into X + acyclic: qis but not an isomorphism of complexes
        auto ac = cone(identity_map(shift_complex(x, 1)));
        auto sum = direct_sum_complex(x, ac);
        ChainMap<PolyEngine<K>> f{x, sum, {}};
        for (const auto& [d, r] : x.ranks)
          f.comps[d] = Mat<Poly<K>>::build(
              sum.rank(d), r, [&](int i, int j) { return i == j ? R.one() : R.zero(); },
              [&](const Poly<K>& v) { return v.is_zero(); });
        return {f, true};
      }
    }
  }
};

}  // namespace dercat
