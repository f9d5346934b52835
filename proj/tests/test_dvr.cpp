#include "doctest.h"

#include "dercat/dvr.hpp"

using namespace dercat;

TEST_CASE("table validation pass runs clean") { CHECK_NOTHROW(validate_dvr_tables()); }

TEST_CASE("tensor table") {
  CHECK(dvr_tensor(dvr_e(), dvr_e()) == dvr_e(1));
  CHECK(dvr_tensor(dvr_e(), dvr_q()).is_zero());
  CHECK(dvr_tensor(dvr_t(2), dvr_t(3)) == dvr_sum(dvr_t(2), dvr_t(2, 1)));
  CHECK(dvr_tensor(dvr_r(), dvr_e()) == dvr_e());
  CHECK(dvr_tensor(dvr_q(), dvr_q()) == dvr_q());
  CHECK(dvr_tensor(dvr_q(), dvr_t(5)).is_zero());
  // E (x) T(n) is the shifted torsion module (triangle R -> Q -> E)
  CHECK(dvr_tensor(dvr_e(), dvr_t(4)) == dvr_t(4, 1));
  // shifts add
  CHECK(dvr_tensor(dvr_e(2), dvr_e(-1)) == dvr_e(2));
}

TEST_CASE("rhom table") {
  CHECK(dvr_rhom(dvr_e(), dvr_e()) == dvr_r());
  CHECK(dvr_rhom(dvr_e(), dvr_r()) == dvr_r(-1));
  CHECK(dvr_rhom(dvr_rhom(dvr_e(), dvr_e()), dvr_r()) == dvr_r());
  CHECK(dvr_rhom(dvr_q(), dvr_e()) == dvr_q());
  CHECK(dvr_rhom(dvr_t(3), dvr_e()) == dvr_t(3));
  CHECK(dvr_rhom(dvr_t(3), dvr_r()) == dvr_t(3, -1));
  CHECK(dvr_rhom(dvr_t(2), dvr_t(3)) == dvr_sum(dvr_t(2), dvr_t(2, -1)));
  CHECK(dvr_rhom(dvr_q(), dvr_r()).is_zero());
  // pinned by the identity suite: maps from E into the torsion-free side vanish
  CHECK(dvr_rhom(dvr_e(), dvr_q()).is_zero());
  CHECK(dvr_rhom(dvr_q(), dvr_t(2)).is_zero());
  // contravariant shift bookkeeping
  CHECK(dvr_rhom(dvr_e(1), dvr_e()) == dvr_r(-1));
  CHECK(dvr_rhom(dvr_e(), dvr_e(1)) == dvr_r(1));
}

TEST_CASE("worked example: the four displayed values and the two failures") {
  auto e = dvr_e();
  auto lhs1 = dvr_tensor(dvr_rhom(e, e), e);
  CHECK(lhs1 == e);
  auto rhs1 = dvr_rhom(e, dvr_tensor(e, e));
  CHECK(rhs1 == dvr_r(1));
  CHECK(!(lhs1 == rhs1));  // evaluation morphism fails
  auto lhs2 = dvr_tensor(e, dvr_rhom(e, dvr_r()));
  CHECK(lhs2 == dvr_e(-1));
  auto rhs2 = dvr_rhom(dvr_rhom(e, e), dvr_r());
  CHECK(rhs2 == dvr_r());
  CHECK(!(lhs2 == rhs2));
}

TEST_CASE("gamma and lambda") {
  CHECK(dvr_gamma(dvr_r()) == dvr_e(-1));
  CHECK(dvr_gamma(dvr_q()).is_zero());
  CHECK(dvr_gamma(dvr_e()) == dvr_e());
  CHECK(dvr_gamma(dvr_t(2)) == dvr_t(2));
  CHECK(dvr_gamma(dvr_r(), DvrIdeal::zero) == dvr_r());  // Gamma_0 = id

  CHECK(dvr_lambda(dvr_r()) == dvr_r());  // complete ring is fixed
  CHECK(dvr_lambda(dvr_t(2)) == dvr_t(2));
  CHECK(dvr_lambda(dvr_e()) == dvr_r(1));
  // the resolved corner: LLambda_m(Q) = S RHom(E, Q) = 0
  CHECK(dvr_lambda(dvr_q()).is_zero());
  CHECK(dvr_lambda(dvr_q(), DvrIdeal::zero) == dvr_q());
}

TEST_CASE("supp and co-supp catalog") {
  CHECK(dvr_supp(dvr_e()) == DvrSpecSet{false, true});
  CHECK(dvr_cosupp(dvr_e()) == DvrSpecSet{true, true});  // strictly larger than supp
  CHECK(dvr_supp(dvr_q()) == DvrSpecSet{true, false});
  CHECK(dvr_cosupp(dvr_q()) == DvrSpecSet{true, false});
  CHECK(dvr_supp(dvr_r()) == DvrSpecSet{true, true});
  CHECK(dvr_cosupp(dvr_r()) == DvrSpecSet{false, true});  // complete
  CHECK(dvr_cosupp(dvr_r(0, false)) == DvrSpecSet{true, true});  // not complete
  CHECK(dvr_supp(dvr_t(3)) == DvrSpecSet{false, true});
  CHECK(dvr_cosupp(dvr_t(3)) == DvrSpecSet{false, true});
  CHECK(dvr_supp(dvr_zero()).empty());
  CHECK(dvr_cosupp(dvr_zero()).empty());
  // co-supp(RHom(X, E)) = supp(X) for every basis object
  for (const auto& x : {dvr_r(), dvr_q(), dvr_e(), dvr_t(1), dvr_t(4)})
    CHECK(dvr_cosupp(dvr_rhom(x, dvr_e())) == dvr_supp(x));
}

TEST_CASE("adic finiteness over the DVR") {
  CHECK(dvr_adically_finite(dvr_e(), DvrIdeal::max));
  CHECK(!dvr_adically_finite(dvr_e(), DvrIdeal::zero));
  CHECK(dvr_adically_finite(dvr_sum(dvr_r(), dvr_t(3)), DvrIdeal::zero));
  CHECK(!dvr_adically_finite(dvr_sum(dvr_r(), dvr_t(3)), DvrIdeal::max));
  CHECK(!dvr_adically_finite(dvr_q(), DvrIdeal::max));
  CHECK(!dvr_adically_finite(dvr_q(), DvrIdeal::zero));
  CHECK(dvr_adically_finite(dvr_t(7), DvrIdeal::max));
  CHECK(dvr_adically_finite(dvr_zero(), DvrIdeal::max));
}

TEST_CASE("criterion of Rhom self-duality forcing full support in V(m)") {
  // RHom(E, E) = R and E m-adically finite force supp(E) = {m}
  auto e = dvr_e();
  CHECK(dvr_rhom(e, e) == dvr_r());
  CHECK(dvr_adically_finite(e, DvrIdeal::max));
  CHECK(dvr_supp(e) == DvrSpecSet{false, true});
}

TEST_CASE("vanishing criterion: RHom(M, X) = 0 iff supports are disjoint") {
  std::vector<DvrObject> finite = {dvr_e(), dvr_t(1), dvr_t(3)};  // m-adically finite
  std::vector<DvrObject> all = {dvr_r(), dvr_q(), dvr_e(), dvr_t(2)};
  for (const auto& m : finite)
    for (const auto& x : all) {
      bool zero = dvr_rhom(m, x).is_zero();
      bool disjoint = dvr_supp(m).intersect(dvr_supp(x)).empty();
      CHECK(zero == disjoint);
    }
}

TEST_CASE("incomplete ambient restrictions") {
  auto e = dvr_e(0, false);
  auto r = dvr_r(0, false);
  auto q = dvr_q(0, false);
  auto t = dvr_t(2, 0, false);
  CHECK_THROWS_AS(dvr_rhom(e, e), error);
  CHECK_THROWS_AS(dvr_rhom(e, r), error);
  CHECK_THROWS_AS(dvr_rhom(q, r), error);
  CHECK_THROWS_AS(dvr_lambda(r), error);
  CHECK_THROWS_AS(dvr_lambda(e), error);
  // entries with completeness-free derivations still work
  CHECK(dvr_rhom(t, t) == dvr_sum(dvr_t(2, 0, false), dvr_t(2, -1, false)));
  CHECK(dvr_rhom(e, q).is_zero());
  CHECK(dvr_rhom(t, r) == dvr_t(2, -1, false));
  CHECK(dvr_lambda(t) == t);
  CHECK(dvr_gamma(r) == dvr_e(-1, false));
  // mixing ambients is rejected
  CHECK_THROWS_AS(dvr_tensor(dvr_e(), e), error);
}

TEST_CASE("formal object algebra") {
  auto a = dvr_sum(dvr_e(), dvr_t(2, 1));
  CHECK(to_string(a) == "E + shift(1, T(2))");
  CHECK(dvr_shift(a, 2) == dvr_sum(dvr_e(2), dvr_t(2, 3)));
  CHECK(dvr_shift(dvr_shift(a, 2), -2) == a);
  CHECK_THROWS_AS(dvr_t(0), error);
  // sums distribute through the calculus
  auto lhs = dvr_tensor(a, dvr_t(1));
  auto rhs = dvr_sum(dvr_tensor(dvr_e(), dvr_t(1)), dvr_tensor(dvr_t(2, 1), dvr_t(1)));
  CHECK(lhs == rhs);
}
