#include "doctest.h"

#include <map>

#include "dercat/corpus.hpp"
#include "dercat/smith.hpp"

using namespace dercat;

namespace {

// Independent certification of the Buchberger engine: every S-polynomial of a
// claimed Groebner basis must reduce to zero under a plain map-arithmetic
// reducer that shares no code with the library's normal form.
template <class K>
Poly<K> naive_reduce(const PolyRing<K>& R, Poly<K> f, const std::vector<Poly<K>>& gens) {
  while (!f.is_zero()) {
    bool hit = false;
    for (const auto& g : gens) {
      if (g.is_zero() || !mono_divides(g.lm(), f.lm())) continue;
      Monomial q = mono_div(f.lm(), g.lm());
      auto c = R.coeff.div(f.lc(), g.lc());
      std::map<std::vector<int>, typename K::Elem> acc;
      for (const auto& [m, co] : f.t) {
        auto& slot = acc[m.e];
        slot = R.coeff.add(slot, co);
      }
      for (const auto& [m, co] : g.t) {
        auto key = mono_mul(m, q).e;
        auto& slot = acc[key];
        slot = R.coeff.sub(slot, R.coeff.mul(c, co));
      }
      Poly<K> out;
      for (auto& [e, co] : acc)
        if (!R.coeff.is_zero(co)) out.t.emplace_back(Monomial{e}, co);
      std::sort(out.t.begin(), out.t.end(),
                [&](const auto& a, const auto& b) { return R.cmp(a.first, b.first) > 0; });
      f = std::move(out);
      hit = true;
      break;
    }
    if (!hit) break;
  }
  return f;
}

template <class K>
void certify_gb(const PolyRing<K>& R, const std::vector<Poly<K>>& gens) {
  auto gb = ideal_groebner(make_ideal(R, gens));
  for (std::size_t i = 0; i < gb.size(); ++i)
    for (std::size_t j = i + 1; j < gb.size(); ++j) {
      Monomial l = mono_lcm(gb[i].lm(), gb[j].lm());
      auto s = R.sub(R.mul_term(gb[i], mono_div(l, gb[i].lm()), R.coeff.inv(gb[i].lc())),
                     R.mul_term(gb[j], mono_div(l, gb[j].lm()), R.coeff.inv(gb[j].lc())));
      CHECK(naive_reduce(R, s, gb).is_zero());
    }
  for (const auto& g : gens) CHECK(naive_reduce(R, g, gb).is_zero());
}

}  // namespace

TEST_CASE("randomized S-polynomial certification of the Groebner engine") {
  {
    QQPolyEngine eng{QQPolyRing{RatField{}, {"x", "y"}, MonomialOrder{OrderKind::grevlex, 0}, {}}};
    Corpus<RatField> corpus(eng, 1234);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Poly<RatField>> gens;
      int ng = 1 + static_cast<int>(corpus.rng.below(3));
      for (int i = 0; i < ng; ++i) gens.push_back(corpus.random_mono_or_binomial(3));
      certify_gb(eng.ring, gens);
    }
  }
  {
    FpPolyEngine eng{FpPolyRing{PrimeField{32003}, {"x", "y", "z"}, MonomialOrder{OrderKind::lex, 0}, {}}};
    Corpus<PrimeField> corpus(eng, 99);
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<Poly<PrimeField>> gens;
      int ng = 1 + static_cast<int>(corpus.rng.below(3));
      for (int i = 0; i < ng; ++i) gens.push_back(corpus.random_mono_or_binomial(2));
      certify_gb(eng.ring, gens);
    }
  }
}

TEST_CASE("univariate homology: Groebner route equals Smith normal form route") {
  // over QQ[x] both engines apply; they share no elimination code
  QQPolyEngine eng{QQPolyRing{RatField{}, {"x"}, MonomialOrder{OrderKind::grevlex, 0}, {}}};
  const auto& R = eng.ring;
  PolyEuclid<RatField> eu{R};
  Corpus<RatField> corpus(eng, 5150);
  for (int trial = 0; trial < 15; ++trial) {
    auto x = corpus.random_fg_complex(false);
    for (int d = x.lo(); d <= x.hi(); ++d) {
      auto h = homology_at(x, d);  // GB subquotient presentation
      auto gb_inv = cokernel_invariants(eu, h.gens, h.rels);
      auto snf_inv = homology_invariants(eu, x.d(d + 1), x.d(d));  // direct SNF route
      CHECK(gb_inv.free_rank == snf_inv.free_rank);
      REQUIRE(gb_inv.torsion.size() == snf_inv.torsion.size());
      for (std::size_t i = 0; i < gb_inv.torsion.size(); ++i)
        CHECK(gb_inv.torsion[i] == snf_inv.torsion[i]);
    }
  }
}

TEST_CASE("prime-field Koszul homology dimensions") {
  FpPolyEngine eng{FpPolyRing{PrimeField{32003}, {"x", "y"}, MonomialOrder{OrderKind::grevlex, 0}, {}}};
  const auto& R = eng.ring;
  auto k = koszul_complex(eng, {R.var(0), R.var(1)});
  CHECK(!module_is_zero(eng, homology_at(k, 0)));
  CHECK(module_is_zero(eng, homology_at(k, 1)));
  CHECK(module_is_zero(eng, homology_at(k, 2)));
  // char-2 sanity: the same shape over F_2
  FpPolyEngine eng2{FpPolyRing{PrimeField{2}, {"x", "y"}, MonomialOrder{OrderKind::grevlex, 0}, {}}};
  auto k2 = koszul_complex(eng2, {eng2.ring.var(0), eng2.ring.var(1)});
  validate_complex(k2);
  CHECK(!module_is_zero(eng2, homology_at(k2, 0)));
  CHECK(module_is_zero(eng2, homology_at(k2, 1)));
}

TEST_CASE("integer tensor homology agrees with the PID oracle on random pairs") {
  ZZEngine eng;
  IntEuclid eu;
  SeededRng rng(31415);
  for (int trial = 0; trial < 12; ++trial) {
    long a = rng.range(1, 12), b = rng.range(1, 12);
    auto ca = two_term_complex(eng, 1, Mat<Int>::dense(1, 1, {Int(a)}));
    auto cb = two_term_complex(eng, 1, Mat<Int>::dense(1, 1, {Int(b)}));
    auto t = tensor_complexes(ca, cb);
    // H_0 = Z/gcd, H_1 = Z/gcd, H_2 = 0 for doubled cyclic complexes
    Int g = gcd(Int(a), Int(b));
    auto h0 = zz_invariants(eng, homology_at(t, 0));
    auto h1 = zz_invariants(eng, homology_at(t, 1));
    auto h2 = zz_invariants(eng, homology_at(t, 2));
    if (g == 1) {
      CHECK(h0.is_zero());
      CHECK(h1.is_zero());
    } else {
      REQUIRE(h0.torsion.size() == 1);
      CHECK(h0.torsion[0] == g);
      REQUIRE(h1.torsion.size() == 1);
      CHECK(h1.torsion[0] == g);
    }
    CHECK(h2.is_zero());
  }
}
