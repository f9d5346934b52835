#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dercat/modgb.hpp"

namespace dercat {

template <class K>
struct Ideal {
  PolyRing<K> ring;
  std::vector<Poly<K>> gens;
  std::vector<Poly<K>> cached_gb;  // reduced ambient GB (gens + ring relations); empty = not computed

  bool has_gb() const { return !cached_gb.empty() || gens.empty(); }
};

template <class K>
Ideal<K> make_ideal(const PolyRing<K>& ring, std::vector<Poly<K>> gens) {
  // keep generators reduced against the ring relations, drop zeros
  std::vector<Poly<K>> out;
  for (auto& g : gens) {
    auto r = ring.reduce(g);
    if (!r.is_zero()) out.push_back(std::move(r));
  }
  return Ideal<K>{ring, std::move(out), {}};
}

/// Reduced Groebner basis of the ideal, computed in the ambient ring over
/// gens plus the quotient relations. Canonical for the ring's order:
/// idempotent and order-stable.
template <class K>
std::vector<Poly<K>> ideal_groebner(const Ideal<K>& I) {
  if (I.has_gb()) return I.cached_gb;
  PolyRing<K> amb = I.ring.ambient();
  std::vector<Vec<K>> vecs;
  for (const auto& g : I.gens) vecs.push_back(Vec<K>{g});
  for (const auto& r : I.ring.relations) vecs.push_back(Vec<K>{r});
  auto gb = mod_groebner(amb, 1, std::move(vecs));
  std::vector<Poly<K>> out;
  for (const auto& v : gb.basis) out.push_back(v[0]);
  return out;
}

template <class K>
Ideal<K> with_gb(Ideal<K> I) {
  if (!I.has_gb()) I.cached_gb = ideal_groebner(I);
  return I;
}

template <class K>
bool ideal_member(const Ideal<K>& I, const Poly<K>& f) {
  auto gb = ideal_groebner(I);
  return I.ring.ambient().nf(f, gb).is_zero();
}

template <class K>
bool ideal_contains(const Ideal<K>& big, const Ideal<K>& small) {
  auto gb = ideal_groebner(big);
  PolyRing<K> amb = big.ring.ambient();
  for (const auto& g : small.gens)
    if (!amb.nf(g, gb).is_zero()) return false;
  return true;
}

template <class K>
bool ideal_equal(const Ideal<K>& a, const Ideal<K>& b) {
  return ideal_contains(a, b) && ideal_contains(b, a);
}

template <class K>
bool ideal_is_unit(const Ideal<K>& I) {
  auto gb = ideal_groebner(I);
  return gb.size() == 1 && I.ring.is_unit(gb[0]);
}

enum class IdealOp { sum, product, intersection, quotient };

template <class K>
Ideal<K> ideal_sum(const Ideal<K>& a, const Ideal<K>& b) {
  require(a.ring.vars == b.ring.vars, errc::ring_mismatch, "ideal sum over different rings");
  auto gens = a.gens;
  gens.insert(gens.end(), b.gens.begin(), b.gens.end());
  return make_ideal(a.ring, std::move(gens));
}

template <class K>
Ideal<K> ideal_product(const Ideal<K>& a, const Ideal<K>& b) {
  require(a.ring.vars == b.ring.vars, errc::ring_mismatch, "ideal product over different rings");
  std::vector<Poly<K>> gens;
  for (const auto& f : a.gens)
    for (const auto& g : b.gens) gens.push_back(a.ring.mul(f, g));
  return make_ideal(a.ring, std::move(gens));
}

/// I cap J via the t-trick: eliminate t from t*I + (1-t)*J.
template <class K>
Ideal<K> ideal_intersection(const Ideal<K>& a, const Ideal<K>& b) {
  require(a.ring.vars == b.ring.vars, errc::ring_mismatch, "ideal intersection over different rings");
  const PolyRing<K>& R = a.ring;
  PolyRing<K> ext = R.ambient().extended({"@t"});
  auto t = ext.var(0);
  auto one_minus_t = ext.sub(ext.one(), t);
  std::vector<Vec<K>> vecs;
  auto add_all = [&](const std::vector<Poly<K>>& gens, const Poly<K>& factor) {
    for (const auto& g : gens) vecs.push_back(Vec<K>{ext.mul(factor, PolyRing<K>::embed_into(g, 1))});
  };
  add_all(a.gens, t);
  for (const auto& r : R.relations) vecs.push_back(Vec<K>{ext.mul(t, PolyRing<K>::embed_into(r, 1))});
  add_all(b.gens, one_minus_t);
  for (const auto& r : R.relations) vecs.push_back(Vec<K>{ext.mul(one_minus_t, PolyRing<K>::embed_into(r, 1))});
  auto gb = mod_groebner(ext, 1, std::move(vecs));
  auto cut = eliminate_prefix(gb, 1);
  std::vector<Poly<K>> gens;
  for (auto& v : cut) gens.push_back(std::move(v[0]));
  return make_ideal(R, std::move(gens));
}

/// (I : g) for one polynomial via syzygies on [g | I-gens | relations].
template <class K>
Ideal<K> ideal_colon_single(const Ideal<K>& I, const Poly<K>& g) {
  const PolyRing<K>& R = I.ring;
  PolyRing<K> amb = R.ambient();
  std::vector<Vec<K>> cols;
  cols.push_back(Vec<K>{g});
  for (const auto& f : I.gens) cols.push_back(Vec<K>{f});
  for (const auto& r : R.relations) cols.push_back(Vec<K>{r});
  auto syz = graph_syzygies(graph_gb(amb, 1, cols));
  std::vector<Poly<K>> gens;
  for (const auto& s : syz)
    if (!s[0].is_zero()) gens.push_back(s[0]);
  return make_ideal(R, std::move(gens));
}

template <class K>
Ideal<K> ideal_quotient(const Ideal<K>& a, const Ideal<K>& b) {
  require(a.ring.vars == b.ring.vars, errc::ring_mismatch, "ideal quotient over different rings");
  std::optional<Ideal<K>> acc;
  if (b.gens.empty()) {
    // (I : (0)) = (1)
    return make_ideal(a.ring, {a.ring.one()});
  }
  for (const auto& g : b.gens) {
    auto q = ideal_colon_single(a, g);
    acc = acc ? ideal_intersection(*acc, q) : q;
  }
  return *acc;
}

template <class K>
Ideal<K> ideal_arith(IdealOp op, const Ideal<K>& a, const Ideal<K>& b) {
  switch (op) {
    case IdealOp::sum: return ideal_sum(a, b);
    case IdealOp::product: return ideal_product(a, b);
    case IdealOp::intersection: return ideal_intersection(a, b);
    case IdealOp::quotient: return ideal_quotient(a, b);
  }
  fail(errc::computation_error, "bad ideal op");
}

/// f in rad(I), by the Rabinowitsch trick: 1 in I + (1 - t f).
template <class K>
bool radical_membership(const Poly<K>& f, const Ideal<K>& I) {
  const PolyRing<K>& R = I.ring;
  if (f.is_zero()) return true;
  PolyRing<K> ext = R.ambient().extended({"@t"});
  auto t = ext.var(0);
  std::vector<Vec<K>> vecs;
  for (const auto& g : I.gens) vecs.push_back(Vec<K>{PolyRing<K>::embed_into(g, 1)});
  for (const auto& r : R.relations) vecs.push_back(Vec<K>{PolyRing<K>::embed_into(r, 1)});
  vecs.push_back(Vec<K>{ext.sub(ext.one(), ext.mul(t, PolyRing<K>::embed_into(f, 1)))});
  auto gb = mod_groebner(ext, 1, std::move(vecs));
  return gb.basis.size() == 1 && ext.is_unit(gb.basis[0][0]);
}

// ---- submodule operations over R^rank ----------------------------------------

/// Append relation columns rel * e_c so ambient computations model the
/// quotient ring.
template <class K>
std::vector<Vec<K>> with_relation_columns(const PolyRing<K>& R, int rank, std::vector<Vec<K>> gens) {
  for (const auto& rel : R.relations)
    for (int c = 0; c < rank; ++c) {
      Vec<K> v = vec_zero(R, rank);
      v[c] = rel;
      gens.push_back(std::move(v));
    }
  return gens;
}

/// Generators of {a : sum a_i cols_i = 0} over the ring (quotient-aware).
template <class K>
std::vector<Vec<K>> kernel_gens(const PolyRing<K>& R, int rank, const std::vector<Vec<K>>& cols) {
  PolyRing<K> amb = R.ambient();
  int n = static_cast<int>(cols.size());
  auto aug = with_relation_columns(R, rank, cols);
  auto syz = graph_syzygies(graph_gb(amb, rank, aug));
  std::vector<Vec<K>> out;
  for (const auto& s : syz) {
    Vec<K> head(s.begin(), s.begin() + n);
    for (auto& p : head) p = R.reduce(p);
    if (!vec_is_zero(head)) out.push_back(std::move(head));
  }
  return out;
}

/// Solve sum x_i cols_i = b over the ring; nullopt when b is not in the span.
template <class K>
std::optional<std::vector<Poly<K>>> span_lift(const PolyRing<K>& R, int rank, const std::vector<Vec<K>>& cols,
                                              const Vec<K>& b) {
  PolyRing<K> amb = R.ambient();
  int n = static_cast<int>(cols.size());
  auto aug = with_relation_columns(R, rank, cols);
  auto g = graph_gb(amb, rank, aug);
  auto lift = graph_lift(g, b);
  if (!lift) return std::nullopt;
  std::vector<Poly<K>> out(lift->begin(), lift->begin() + n);
  for (auto& p : out) p = R.reduce(p);
  return out;
}

template <class K>
bool in_span(const PolyRing<K>& R, int rank, const std::vector<Vec<K>>& cols, const Vec<K>& b) {
  return span_lift(R, rank, cols, b).has_value();
}

/// U cap V inside R^rank via the t-trick, componentwise.
template <class K>
std::vector<Vec<K>> submodule_intersect(const PolyRing<K>& R, int rank, const std::vector<Vec<K>>& u,
                                        const std::vector<Vec<K>>& v) {
  PolyRing<K> ext = R.ambient().extended({"@t"});
  auto t = ext.var(0);
  auto omt = ext.sub(ext.one(), t);
  auto embed = [&](const Vec<K>& w) {
    Vec<K> out(rank);
    for (int c = 0; c < rank; ++c) out[c] = PolyRing<K>::embed_into(w[c], 1);
    return out;
  };
  std::vector<Vec<K>> gens;
  for (const auto& w : with_relation_columns(R, rank, u)) gens.push_back(vec_scale(ext, t, embed(w)));
  for (const auto& w : with_relation_columns(R, rank, v)) gens.push_back(vec_scale(ext, omt, embed(w)));
  auto gb = mod_groebner(ext, rank, std::move(gens));
  auto cut = eliminate_prefix(gb, 1);
  std::vector<Vec<K>> out;
  for (auto& w : cut) {
    for (auto& p : w) p = R.reduce(p);
    if (!vec_is_zero(w)) out.push_back(std::move(w));
  }
  return out;
}

/// (N : f) = {v : f v in N} inside R^rank.
template <class K>
std::vector<Vec<K>> submodule_colon_poly(const PolyRing<K>& R, int rank, const std::vector<Vec<K>>& n,
                                         const Poly<K>& f) {
  PolyRing<K> amb = R.ambient();
  std::vector<Vec<K>> cols;
  for (int c = 0; c < rank; ++c) {
    Vec<K> v = vec_zero(R, rank);
    v[c] = f;
    cols.push_back(std::move(v));
  }
  int head = rank;
  auto aug = cols;
  for (const auto& w : with_relation_columns(R, rank, n)) aug.push_back(w);
  auto syz = graph_syzygies(graph_gb(amb, rank, aug));
  std::vector<Vec<K>> out;
  for (const auto& s : syz) {
    Vec<K> a(s.begin(), s.begin() + head);
    for (auto& p : a) p = R.reduce(p);
    if (!vec_is_zero(a)) out.push_back(std::move(a));
  }
  return out;
}

/// (N : a) for an ideal a: intersection of the per-generator colons.
template <class K>
std::vector<Vec<K>> submodule_colon_ideal(const PolyRing<K>& R, int rank, const std::vector<Vec<K>>& n,
                                          const Ideal<K>& a) {
  std::optional<std::vector<Vec<K>>> acc;
  for (const auto& f : a.gens) {
    auto q = submodule_colon_poly(R, rank, n, f);
    acc = acc ? submodule_intersect(R, rank, *acc, q) : q;
  }
  if (!acc) {
    // colon by the zero ideal is everything
    std::vector<Vec<K>> all;
    for (int c = 0; c < rank; ++c) {
      Vec<K> v = vec_zero(R, rank);
      v[c] = R.one();
      all.push_back(std::move(v));
    }
    return all;
  }
  return *acc;
}

template <class K>
bool submodule_equal(const PolyRing<K>& R, int rank, const std::vector<Vec<K>>& u, const std::vector<Vec<K>>& v) {
  for (const auto& w : v)
    if (!in_span(R, rank, u, w)) return false;
  for (const auto& w : u)
    if (!in_span(R, rank, v, w)) return false;
  return true;
}

/// Saturation (N : a^infinity), detected stable when the quotient repeats on
/// two consecutive steps.
template <class K>
std::vector<Vec<K>> submodule_saturate(const PolyRing<K>& R, int rank, std::vector<Vec<K>> n, const Ideal<K>& a) {
  int stable = 0;
  while (stable < 2) {
    auto next = submodule_colon_ideal(R, rank, n, a);
    if (submodule_equal(R, rank, n, next)) {
      ++stable;
    } else {
      stable = 0;
    }
    n = std::move(next);
  }
  return n;
}

/// Annihilator of coker(cols : R^k -> R^rank): the intersection over basis
/// vectors of (span(cols) : e_c).
template <class K>
Ideal<K> annihilator_of_presentation(const PolyRing<K>& R, int rank, const std::vector<Vec<K>>& cols) {
  if (rank == 0) return make_ideal(R, {R.one()});
  PolyRing<K> amb = R.ambient();
  std::optional<Ideal<K>> acc;
  auto aug = with_relation_columns(R, rank, cols);
  for (int c = 0; c < rank; ++c) {
    Vec<K> e = vec_zero(R, rank);
    e[c] = R.one();
    std::vector<Vec<K>> list;
    list.push_back(std::move(e));
    for (const auto& w : aug) list.push_back(w);
    auto syz = graph_syzygies(graph_gb(amb, rank, list));
    std::vector<Poly<K>> gens;
    for (const auto& s : syz)
      if (!s[0].is_zero()) gens.push_back(R.reduce(s[0]));
    auto q = make_ideal(R, std::move(gens));
    acc = acc ? ideal_intersection(*acc, q) : q;
  }
  return *acc;
}

// ---- primes -------------------------------------------------------------------

enum class PrimeCertificate { monomial_prime, principal_irreducible, maximal_verified, user_asserted };

inline const char* certificate_name(PrimeCertificate c) {
  switch (c) {
    case PrimeCertificate::monomial_prime: return "monomial-prime";
    case PrimeCertificate::principal_irreducible: return "principal-irreducible";
    case PrimeCertificate::maximal_verified: return "maximal-verified";
    case PrimeCertificate::user_asserted: return "user-asserted";
  }
  return "?";
}

template <class K>
struct PrimeIdeal {
  Ideal<K> ideal;
  bool is_maximal = false;
  PrimeCertificate certificate = PrimeCertificate::user_asserted;
};

/// Exponents of the standard monomials of R/I, or nullopt when the quotient
/// is infinite-dimensional. Requires a GB.
template <class K>
std::optional<std::vector<Monomial>> quotient_basis(const PolyRing<K>& amb, const std::vector<Poly<K>>& gb) {
  for (const auto& g : gb)
    if (amb.is_unit(g)) return std::vector<Monomial>{};
  int n = amb.nvars();
  // finite iff every variable has a pure power among the lead monomials
  std::vector<int> cap(n, -1);
  for (const auto& g : gb) {
    const Monomial& m = g.lm();
    int support = -1, count = 0;
    for (int i = 0; i < n; ++i)
      if (m.e[i] > 0) {
        support = i;
        ++count;
      }
    if (count == 1 && (cap[support] < 0 || m.e[support] < cap[support])) cap[support] = m.e[support];
  }
  for (int i = 0; i < n; ++i)
    if (cap[i] < 0) return std::nullopt;
  std::vector<Monomial> basis;
  Monomial cur = Monomial::unit(n);
  // enumerate the box, keep monomials not divisible by any lead
  std::function<void(int)> walk = [&](int i) {
    if (i == n) {
      for (const auto& g : gb)
        if (mono_divides(g.lm(), cur)) return;
      basis.push_back(cur);
      return;
    }
    for (int e = 0; e < cap[i]; ++e) {
      cur.e[i] = e;
      walk(i + 1);
    }
    cur.e[i] = 0;
  };
  walk(0);
  return basis;
}

namespace detail {

template <class K>
bool univariate_irreducible(const PolyRing<K>& R, const Poly<K>& f, int var);

}  // namespace detail

/// Certify a prime from its generators. Best effort within the supported
/// certificate classes; everything else is refused, never guessed.
template <class K>
PrimeIdeal<K> certify_prime(const Ideal<K>& I) {
  const PolyRing<K>& R = I.ring;
  if (R.is_quotient()) {
    // only the residue-field route is sound over a quotient ring: the ambient
    // GB already carries the relations, so a one-dimensional quotient is a field
    auto gbI = with_gb(I);
    auto basis = quotient_basis(R.ambient(), gbI.cached_gb);
    if (basis && basis->size() == 1)
      return PrimeIdeal<K>{gbI, true, PrimeCertificate::maximal_verified};
    fail(errc::not_certifiable, "over a quotient ring only residue-field maximal ideals are certified");
  }

  // monomial-prime: generators exactly a (possibly empty) subset of variables
  bool monomial_vars = true;
  std::vector<bool> used(R.nvars(), false);
  for (const auto& g : I.gens) {
    if (g.t.size() != 1 || g.lm().deg() != 1) {
      monomial_vars = false;
      break;
    }
    for (int i = 0; i < R.nvars(); ++i)
      if (g.lm().e[i] == 1) used[i] = true;
  }
  if (monomial_vars) {
    bool all = std::all_of(used.begin(), used.end(), [](bool b) { return b; });
    bool maximal = R.nvars() == 0 ? true : all;
    return PrimeIdeal<K>{with_gb(I), maximal, PrimeCertificate::monomial_prime};
  }

  auto gbI = with_gb(I);
  auto basis = quotient_basis(R.ambient(), gbI.cached_gb);
  if (basis && !basis->empty()) {
    if (basis->size() == 1) {
      // R/I is one-dimensional over the base field, hence the field itself
      return PrimeIdeal<K>{gbI, true, PrimeCertificate::maximal_verified};
    }
    if (R.nvars() == 1 && gbI.cached_gb.size() == 1 &&
        detail::univariate_irreducible(R, gbI.cached_gb[0], 0)) {
      return PrimeIdeal<K>{gbI, true, PrimeCertificate::maximal_verified};
    }
    fail(errc::not_certifiable, "finite quotient not certified irreducible at desk scale");
  }

  // principal with an irreducible generator
  if (I.gens.size() == 1) {
    const auto& f = I.gens[0];
    if (f.total_deg() == 1) {
      // linear polynomials are irreducible
      return PrimeIdeal<K>{gbI, R.nvars() == 1, PrimeCertificate::principal_irreducible};
    }
    int var = -1, count = 0;
    for (int i = 0; i < R.nvars(); ++i) {
      for (const auto& [m, c] : f.t)
        if (m.e[i] > 0) {
          if (var != i) ++count;
          var = i;
          break;
        }
    }
    if (count == 1 && detail::univariate_irreducible(R, f, var)) {
      return PrimeIdeal<K>{gbI, R.nvars() == 1, PrimeCertificate::principal_irreducible};
    }
  }
  fail(errc::not_certifiable, "no primality certificate applies; refusing to guess");
}

template <class K>
PrimeIdeal<K> assert_prime(const Ideal<K>& I, bool is_maximal) {
  return PrimeIdeal<K>{with_gb(I), is_maximal, PrimeCertificate::user_asserted};
}

/// Minimal primes of a monomial ideal by generator splitting. Each result is
/// generated by a subset of the variables.
template <class K>
std::vector<PrimeIdeal<K>> minimal_primes_monomial(const Ideal<K>& I) {
  const PolyRing<K>& R = I.ring;
  require(!R.is_quotient(), errc::not_monomial, "monomial prime decomposition needs a free polynomial ring");
  std::vector<std::vector<int>> gens;  // squarefree supports
  for (const auto& g : I.gens) {
    require(g.t.size() == 1, errc::not_monomial, "generator is not a monomial");
    std::vector<int> sup;
    for (int i = 0; i < R.nvars(); ++i)
      if (g.lm().e[i] > 0) sup.push_back(i);
    gens.push_back(std::move(sup));
  }
  std::vector<std::vector<bool>> found;  // primes as var subsets
  std::function<void(std::vector<std::vector<int>>, std::vector<bool>)> split =
      [&](std::vector<std::vector<int>> rem, std::vector<bool> chosen) {
        // drop generators already covered
        std::vector<std::vector<int>> left;
        for (auto& g : rem) {
          bool covered = false;
          for (int v : g)
            if (chosen[v]) {
              covered = true;
              break;
            }
          if (!covered) {
            if (g.empty()) return;  // unit generator: no primes on this branch
            left.push_back(std::move(g));
          }
        }
        if (left.empty()) {
          found.push_back(chosen);
          return;
        }
        for (int v : left.front()) {
          auto next = chosen;
          next[v] = true;
          split(left, std::move(next));
        }
      };
  split(gens, std::vector<bool>(R.nvars(), false));
  // keep minimal subsets, dedup
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<std::vector<bool>> minimal;
  for (const auto& a : found) {
    bool is_min = true;
    for (const auto& b : found) {
      if (a == b) continue;
      bool b_subset = true;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] && !a[i]) {
          b_subset = false;
          break;
        }
      if (b_subset) {
        is_min = false;
        break;
      }
    }
    if (is_min) minimal.push_back(a);
  }
  // deterministic output order: earliest-variable primes first
  std::sort(minimal.begin(), minimal.end(), std::greater<>());
  std::vector<PrimeIdeal<K>> out;
  for (const auto& sel : minimal) {
    std::vector<Poly<K>> pg;
    for (int i = 0; i < R.nvars(); ++i)
      if (sel[i]) pg.push_back(R.var(i));
    out.push_back(certify_prime(make_ideal(R, std::move(pg))));
  }
  return out;
}

/// If the prime is maximal with a degree-one residue map (generators reduce
/// to x_i - c_i), return the evaluation point; used by fiber computations.
template <class K>
std::optional<std::vector<typename K::Elem>> residue_evaluation(const PrimeIdeal<K>& m) {
  const PolyRing<K>& R = m.ideal.ring;
  auto gb = ideal_groebner(m.ideal);
  std::vector<std::optional<typename K::Elem>> pt(R.nvars());
  for (const auto& g : gb) {
    // want form x_i - c
    if (g.lm().deg() != 1) return std::nullopt;
    int var = -1;
    for (int i = 0; i < R.nvars(); ++i)
      if (g.lm().e[i] == 1) var = i;
    if (g.t.size() == 1) {
      pt[var] = R.coeff.zero();
    } else if (g.t.size() == 2 && g.t[1].first.is_unit()) {
      pt[var] = R.coeff.neg(R.coeff.div(g.t[1].second, g.t[0].second));
    } else {
      return std::nullopt;
    }
  }
  std::vector<typename K::Elem> out;
  for (auto& v : pt) {
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

/// Evaluate a polynomial at a rational point (entries per variable).
template <class K>
typename K::Elem eval_at(const PolyRing<K>& R, const Poly<K>& f, const std::vector<typename K::Elem>& pt) {
  auto acc = R.coeff.zero();
  for (const auto& [m, c] : f.t) {
    auto t = c;
    for (int i = 0; i < R.nvars(); ++i)
      for (int e = 0; e < m.e[i]; ++e) t = R.coeff.mul(t, pt[i]);
    acc = R.coeff.add(acc, t);
  }
  return acc;
}

namespace detail {

template <class K>
std::vector<typename K::Elem> univariate_coeffs(const Poly<K>& f, int var, int deg) {
  std::vector<typename K::Elem> c(deg + 1, typename K::Elem{});
  for (const auto& [m, co] : f.t) c[m.e[var]] = co;
  return c;
}

// Irreducibility for a polynomial using exactly one variable. Degree <= 3
// reduces to root-finding; over F_p roots are scanned, over QQ the rational
// root theorem applies. Higher degrees are refused (NotCertifiable upstream).
template <class K>
bool univariate_irreducible(const PolyRing<K>& R, const Poly<K>& f, int var) {
  int deg = 0;
  for (const auto& [m, c] : f.t) deg = std::max(deg, m.e[var]);
  if (deg == 1) return true;
  if (deg > 3) return false;
  if constexpr (std::is_same_v<K, PrimeField>) {
    // a cubic/quadratic over F_p is irreducible iff it has no root
    for (std::uint64_t a = 0; a < R.coeff.p; ++a) {
      std::vector<Fp> pt(R.nvars(), Fp{0});
      pt[var] = Fp{a};
      if (R.coeff.is_zero(eval_at(R, f, pt))) return false;
    }
    return true;
  } else {
    // rational root theorem on the cleared-denominator form
    auto cs = univariate_coeffs<K>(f, var, deg);
    Int lcm_den = 1;
    for (auto& c : cs) lcm_den = lcm(lcm_den, Rat(c).get_den());
    std::vector<Int> ic;
    for (auto& c : cs) ic.push_back(Int(Rat(c).get_num() * (lcm_den / Rat(c).get_den())));
    Int a0 = ic[0], an = ic[deg];
    if (a0 == 0) return false;  // root at 0
    std::vector<Int> ps, qs;
    for (Int d = 1; d * d <= abs(a0); ++d)
      if (a0 % d == 0) {
        ps.push_back(d);
        ps.push_back(abs(a0) / d);
      }
    for (Int d = 1; d * d <= abs(an); ++d)
      if (an % d == 0) {
        qs.push_back(d);
        qs.push_back(abs(an) / d);
      }
    for (const auto& p : ps)
      for (const auto& q : qs) {
        for (int sgn : {1, -1}) {
          Rat cand(sgn * p, q);
          cand.canonicalize();
          Rat val = 0;
          for (int i = deg; i >= 0; --i) val = val * cand + Rat(ic[i]);
          if (val == 0) return false;
        }
      }
    return true;
  }
}

}  // namespace detail

}  // namespace dercat
