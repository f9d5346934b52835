#include "doctest.h"

#include <numeric>
#include <vector>

#include "dercat/matrix.hpp"
#include "dercat/poly.hpp"
#include "dercat/smith.hpp"

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

// determinantal-divisor oracle: gcd of all k x k minors, brute force.
Int minor_gcd(const Mat<Int>& a, int k) {
  int m = a.rows(), n = a.cols();
  std::vector<int> rs(k), cs(k);
  Int g = 0;
  std::function<void(int, int)> pick_rows = [&](int pos, int start) {
    if (pos == k) {
      std::function<void(int, int)> pick_cols = [&](int cpos, int cstart) {
        if (cpos == k) {
          // Laplace expansion determinant of the k x k minor
          std::function<Int(std::vector<int>, std::vector<int>)> det = [&](std::vector<int> rr,
                                                                           std::vector<int> cc) -> Int {
            if (rr.size() == 1) return a.at(rr[0], cc[0]);
            Int acc = 0;
            for (std::size_t j = 0; j < cc.size(); ++j) {
              std::vector<int> rr2(rr.begin() + 1, rr.end());
              std::vector<int> cc2 = cc;
              cc2.erase(cc2.begin() + j);
              Int term = a.at(rr[0], cc[j]) * det(rr2, cc2);
              acc += (j % 2 == 0) ? term : -term;
            }
            return acc;
          };
          Int d = det(rs, cs);
          g = gcd(g, d);
          return;
        }
        for (int c = cstart; c < n; ++c) {
          cs[cpos] = c;
          pick_cols(cpos + 1, c + 1);
        }
      };
      pick_cols(0, 0);
      return;
    }
    for (int r = start; r < m; ++r) {
      rs[pos] = r;
      pick_rows(pos + 1, r + 1);
    }
  };
  pick_rows(0, 0);
  return abs(g);
}

void check_snf_contract(const Mat<Int>& a) {
  IntEuclid eu;
  IntRing R;
  auto s = smith_normal_form(eu, a);
  // U*A*V = D exactly
  CHECK(mat_mul(R, mat_mul(R, s.u, a), s.v) == s.d);
  // divisibility chain, positive factors
  for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) {
    CHECK(s.diagonal[i] > 0);
    CHECK(mpz_divisible_p(s.diagonal[i + 1].get_mpz_t(), s.diagonal[i].get_mpz_t()));
  }
  // determinantal divisors: d1...dk == gcd of k x k minors
  Int prod = 1;
  for (std::size_t k = 1; k <= s.diagonal.size(); ++k) {
    prod *= s.diagonal[k - 1];
    CHECK(prod == minor_gcd(a, static_cast<int>(k)));
  }
  // everything beyond the rank has zero minors
  if (static_cast<int>(s.diagonal.size()) < std::min(a.rows(), a.cols()))
    CHECK(minor_gcd(a, static_cast<int>(s.diagonal.size()) + 1) == 0);
  // V inverse bookkeeping
  CHECK(mat_mul(R, s.v, s.vinv) == Mat<Int>::identity(a.cols(), R));
}

}  // namespace

TEST_CASE("smith normal form on the worked examples") {
  IntEuclid eu;
  {
    auto s = smith_normal_form(eu, zmat({{2, 0}, {0, 3}}));
    REQUIRE(s.diagonal.size() == 2);
    CHECK(s.diagonal[0] == 1);
    CHECK(s.diagonal[1] == 6);
  }
  {
    auto s = smith_normal_form(eu, zmat({{0, 0}, {0, 0}}));
    CHECK(s.diagonal.empty());
    CHECK(mat_is_zero(IntRing{}, s.d));
    CHECK(s.d.rows() == 2);
    CHECK(s.d.cols() == 2);
  }
  {
    auto s = smith_normal_form(eu, zmat({{2, 4}, {6, 8}}));
    REQUIRE(s.diagonal.size() == 2);
    CHECK(s.diagonal[0] == 2);
    CHECK(s.diagonal[1] == 4);
  }
  check_snf_contract(zmat({{2, 0}, {0, 3}}));
  check_snf_contract(zmat({{2, 4}, {6, 8}}));
}

TEST_CASE("smith normal form determinantal-divisor property on random matrices") {
  std::uint64_t state = 12345;
  auto rnd = [&]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<long>((state >> 33) % 21) - 10;
  };
  for (int trial = 0; trial < 25; ++trial) {
    int m = 1 + static_cast<int>((rnd() + 10) % 4);
    int n = 1 + static_cast<int>((rnd() + 10) % 4);
    std::vector<std::vector<long>> rows(m, std::vector<long>(n));
    for (auto& r : rows)
      for (auto& v : r) v = rnd();
    check_snf_contract(zmat(rows));
  }
}

TEST_CASE("smith normal form over k[x]") {
  QQPolyRing R{RatField{}, {"x"}, MonomialOrder{OrderKind::grevlex, 0}, {}};
  PolyEuclid<RatField> eu{R};
  auto x = R.var(0);
  auto x2 = R.mul(x, x);
  std::vector<std::vector<Poly<RatField>>> rows = {{x, R.zero()}, {R.zero(), x2}};
  auto a = mat_from_rows(R, rows);
  auto s = smith_normal_form(eu, a);
  REQUIRE(s.diagonal.size() == 2);
  CHECK(s.diagonal[0] == x);
  CHECK(s.diagonal[1] == x2);
  CHECK(mat_mul(R, mat_mul(R, s.u, a), s.v) == s.d);

  // the non-diagonal case picks up the gcd
  std::vector<std::vector<Poly<RatField>>> rows2 = {{x, x}, {x, R.add(x, x2)}};
  auto s2 = smith_normal_form(eu, mat_from_rows(R, rows2));
  REQUIRE(s2.diagonal.size() == 2);
  CHECK(s2.diagonal[0] == x);
  CHECK(s2.diagonal[1] == x2);  // det = x*(x + x^2) - x*x = x^3; monic normalized
}

TEST_CASE("rank and kernel over fields") {
  RatField Q;
  {
    auto id3 = Mat<Rat>::identity(3, Q);
    auto rk = rank_kernel(Q, id3);
    CHECK(rk.rank == 3);
    CHECK(rk.kernel.cols() == 0);
  }
  {
    PrimeField F2{2};
    auto a = mat_from_rows(F2, {{F2.from_int(1), F2.from_int(1)}, {F2.from_int(1), F2.from_int(1)}});
    auto rk = rank_kernel(F2, a);
    CHECK(rk.rank == 1);
    REQUIRE(rk.kernel.cols() == 1);
    CHECK(rk.kernel.at(0, 0).v == 1);
    CHECK(rk.kernel.at(1, 0).v == 1);
  }
  {
    // 0 x n matrix: everything is kernel
    auto a = mat_zero(Q, 0, 4);
    auto rk = rank_kernel(Q, a);
    CHECK(rk.rank == 0);
    CHECK(rk.kernel.cols() == 4);
    CHECK(rk.kernel == Mat<Rat>::identity(4, Q));
  }
}

TEST_CASE("field rank agrees with SNF rank on integer matrices") {
  std::uint64_t state = 777;
  auto rnd = [&]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<long>((state >> 33) % 15) - 7;
  };
  IntEuclid eu;
  RatField Q;
  for (int trial = 0; trial < 20; ++trial) {
    int m = 1 + static_cast<int>((rnd() + 7) % 4);
    int n = 1 + static_cast<int>((rnd() + 7) % 4);
    std::vector<std::vector<long>> rows(m, std::vector<long>(n));
    for (auto& r : rows)
      for (auto& v : r) v = rnd();
    auto a = zmat(rows);
    auto s = smith_normal_form(eu, a);
    auto aq = Mat<Rat>::build(
        m, n, [&](int i, int j) { return Rat(a.at(i, j)); }, [](const Rat& v) { return v == 0; });
    CHECK(s.rank() == rank_kernel(Q, aq).rank);
  }
}

TEST_CASE("homology invariants over PIDs") {
  IntEuclid eu;
  {
    // 0 -> Z --2--> Z -> 0 : H0 = Z/2
    auto d_in = zmat({{2}});
    auto d_out = mat_zero(IntRing{}, 0, 1);
    auto h = homology_invariants(eu, d_in, d_out);
    CHECK(h.free_rank == 0);
    REQUIRE(h.torsion.size() == 1);
    CHECK(h.torsion[0] == 2);
  }
  {
    // zero differentials on Z^2
    auto d_in = mat_zero(IntRing{}, 2, 0);
    auto d_out = mat_zero(IntRing{}, 0, 2);
    auto h = homology_invariants(eu, d_in, d_out);
    CHECK(h.free_rank == 2);
    CHECK(h.torsion.empty());
  }
  {
    // over k[x]: ker 0 / im (x) -> torsion k[x]/(x)
    QQPolyRing R{RatField{}, {"x"}, MonomialOrder{OrderKind::grevlex, 0}, {}};
    PolyEuclid<RatField> pe{R};
    auto x = R.var(0);
    auto d_in = mat_from_rows(R, std::vector<std::vector<Poly<RatField>>>{{x}});
    auto d_out = mat_zero(R, 0, 1);
    auto h = homology_invariants(pe, d_in, d_out);
    CHECK(h.free_rank == 0);
    REQUIRE(h.torsion.size() == 1);
    CHECK(h.torsion[0] == x);
  }
  {
    // composability violation is rejected
    auto d_in = zmat({{1}});
    auto d_out = zmat({{1}});
    CHECK_THROWS_AS(homology_invariants(eu, d_in, d_out), error);
  }
}

TEST_CASE("matrix storage honours the sparsity threshold") {
  // 1 nonzero of 16 entries: stored sparse
  auto sp = Mat<Int>::build(
      4, 4, [&](int i, int j) { return i == 0 && j == 0 ? Int(5) : Int(0); },
      [](const Int& v) { return v == 0; });
  CHECK(sp.is_sparse());
  CHECK(sp.at(0, 0) == 5);
  CHECK(sp.at(3, 3) == 0);
  // dense majority stays dense
  auto dn = Mat<Int>::build(
      2, 2, [&](int i, int j) { return Int(i + j + 1); }, [](const Int& v) { return v == 0; });
  CHECK(!dn.is_sparse());
}
