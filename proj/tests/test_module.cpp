#include "doctest.h"

#include "dercat/module.hpp"

using namespace dercat;

namespace {

Mat<Int> zmat(const std::vector<std::vector<long>>& rows) {
  IntRing R;
  std::vector<std::vector<Int>> conv;
  for (const auto& r : rows) {
    std::vector<Int> c;
    for (long v : r) c.emplace_back(v);
    conv.push_back(std::move(c));
  }
  return mat_from_rows(R, conv);
}

}  // namespace

TEST_CASE("presented module zero test over ZZ") {
  ZZEngine eng;
  CHECK(module_is_zero(eng, presented(eng, zmat({{1, 0}, {0, 1}}))));
  CHECK(module_is_zero(eng, presented(eng, zmat({{1, 0}, {3, 1}}))));
  CHECK(!module_is_zero(eng, presented(eng, zmat({{2}}))));
  CHECK(module_is_zero(eng, free_module(eng, 0)));
  CHECK(!module_is_zero(eng, free_module(eng, 1)));
}

TEST_CASE("subquotient presentations over ZZ") {
  ZZEngine eng;
  // span{2e} / span{6e} inside Z: isomorphic to Z/3
  auto u = zmat({{2}});
  auto w = zmat({{6}});
  auto h = subquotient(eng, u, w);
  auto inv = zz_invariants(eng, h);
  CHECK(inv.free_rank == 0);
  REQUIRE(inv.torsion.size() == 1);
  CHECK(inv.torsion[0] == 3);
}

TEST_CASE("presented map iso detection over ZZ") {
  ZZEngine eng;
  // Z/4 --2--> Z/8 is injective-with-cokernel, not iso
  auto m4 = presented(eng, zmat({{4}}));
  auto m8 = presented(eng, zmat({{8}}));
  PresMap<ZZEngine> dbl{m4, m8, zmat({{2}})};
  CHECK(map_well_defined(eng, dbl));
  CHECK(map_is_injective(eng, dbl));
  CHECK(!map_is_surjective(eng, dbl));
  CHECK(!map_is_iso(eng, dbl));
  // identity on Z/4 is an iso; so is 3 (a unit mod 4); 2 is neither inj nor surj
  PresMap<ZZEngine> idm{m4, m4, zmat({{1}})};
  CHECK(map_is_iso(eng, idm));
  PresMap<ZZEngine> three{m4, m4, zmat({{3}})};
  CHECK(map_is_iso(eng, three));
  PresMap<ZZEngine> two{m4, m4, zmat({{2}})};
  CHECK(!map_is_iso(eng, two));
}

TEST_CASE("polynomial module fingerprints") {
  QQPolyEngine eng{QQPolyRing{RatField{}, {"x", "y"}, MonomialOrder{OrderKind::grevlex, 0}, {}}};
  auto& R = eng.ring;
  auto x = R.var(0);
  auto y = R.var(1);
  auto rx = cyclic_module(eng, make_ideal(R, {x}));
  auto ry = cyclic_module(eng, make_ideal(R, {y}));
  auto fx = fingerprint(eng, rx);
  auto fy = fingerprint(eng, ry);
  CHECK(!fx.zero);
  CHECK(fx != fy);
  CHECK(fingerprint(eng, rx) == fx);  // deterministic
  // R/(1) is zero
  auto triv = cyclic_module(eng, make_ideal(R, {R.one()}));
  CHECK(fingerprint(eng, triv).zero);
  // direct sum is nonzero and differs from both summands
  auto s = direct_sum(eng, rx, ry);
  auto fs = fingerprint(eng, s);
  CHECK(!fs.zero);
  CHECK(fs != fx);
}
