#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dercat/error.hpp"
#include "dercat/monomial.hpp"
#include "dercat/scalar.hpp"

namespace dercat {

/// Polynomial over the coefficient field K, stored as terms sorted strictly
/// descending in the owning ring's monomial order, no zero coefficients.
template <class K>
struct Poly {
  using Coeff = typename K::Elem;
  std::vector<std::pair<Monomial, Coeff>> t;

  bool is_zero() const { return t.empty(); }
  const Monomial& lm() const { return t.front().first; }
  const Coeff& lc() const { return t.front().second; }
  int total_deg() const {
    int d = -1;
    for (const auto& [m, c] : t) d = std::max(d, m.deg());
    return d;
  }
  friend bool operator==(const Poly&, const Poly&) = default;
};

/// Polynomial ring k[x_1..x_n] with a fixed monomial order, optionally a
/// quotient by `relations` (kept as a reduced Groebner basis; arithmetic
/// normalizes representatives against it). Doubles as the scalar context for
/// matrices and complexes over the ring.
template <class K>
struct PolyRing {
  using Coeff = typename K::Elem;
  using Elem = Poly<K>;

  K coeff;
  std::vector<std::string> vars;
  MonomialOrder order;
  std::vector<Elem> relations;  // reduced GB of the defining ideal, or empty

  int nvars() const { return static_cast<int>(vars.size()); }
  bool is_quotient() const { return !relations.empty(); }

  // ---- construction ----------------------------------------------------------
  Elem zero() const { return Elem{}; }
  Elem one() const { return constant(coeff.one()); }
  Elem constant(const Coeff& c) const {
    Elem p;
    if (!coeff.is_zero(c)) p.t.emplace_back(Monomial::unit(nvars()), c);
    return p;
  }
  Elem from_int(long n) const { return constant(coeff.from_int(n)); }
  Elem var(int i, int power = 1) const {
    Elem p;
    p.t.emplace_back(Monomial::var(nvars(), i, power), coeff.one());
    return reduce(p);
  }
  Elem term(const Monomial& m, const Coeff& c) const {
    Elem p;
    if (!coeff.is_zero(c)) p.t.emplace_back(m, c);
    return reduce(p);
  }

  // ---- arithmetic ------------------------------------------------------------
  Elem add(const Elem& a, const Elem& b) const { return reduce(add_raw(a, b)); }
  Elem sub(const Elem& a, const Elem& b) const { return reduce(add_raw(a, neg(b))); }
  Elem neg(const Elem& a) const {
    Elem p = a;
    for (auto& [m, c] : p.t) c = coeff.neg(c);
    return p;
  }
  Elem mul(const Elem& a, const Elem& b) const { return reduce(mul_raw(a, b)); }
  Elem mul_term(const Elem& a, const Monomial& m, const Coeff& c) const {
    Elem p;
    if (coeff.is_zero(c)) return p;
    p.t.reserve(a.t.size());
    for (const auto& [am, ac] : a.t) {
      Coeff nc = coeff.mul(ac, c);
      if (!coeff.is_zero(nc)) p.t.emplace_back(mono_mul(am, m), nc);
    }
    return reduce(p);
  }
  Elem scale(const Coeff& c, const Elem& a) const { return mul_term(a, Monomial::unit(nvars()), c); }
  Elem monic(const Elem& a) const {
    if (a.is_zero()) return a;
    return scale(coeff.inv(a.lc()), a);
  }

  bool is_zero(const Elem& a) const { return a.t.empty(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  /// Nonzero constants are units; over a quotient ring this is sound but not
  /// complete, which is all the minimization pass needs.
  bool is_unit(const Elem& a) const { return a.t.size() == 1 && a.lm().is_unit(); }
  Coeff inv_unit(const Elem& a) const {
    require(is_unit(a), errc::computation_error, "not a detected unit");
    return coeff.inv(a.lc());
  }

  int cmp(const Monomial& a, const Monomial& b) const { return order.cmp(a, b); }

  // ---- normal form -----------------------------------------------------------
  /// Full normal form of f against the (nonzero) polynomials in gens, reducing
  /// every term. Deterministic: divisors are tried in list order.
  Elem nf(const Elem& f, const std::vector<Elem>& gens) const {
    Elem rem;
    Elem p = f;
    while (!p.t.empty()) {
      bool reduced = false;
      for (const auto& g : gens) {
        if (g.is_zero()) continue;
        if (!mono_divides(g.lm(), p.lm())) continue;
        Monomial q = mono_div(p.lm(), g.lm());
        Coeff c = coeff.div(p.lc(), g.lc());
        p = add_raw(p, neg(mul_term_raw(g, q, c)));
        reduced = true;
        break;
      }
      if (!reduced) {
        rem.t.push_back(p.t.front());
        p.t.erase(p.t.begin());
      }
    }
    return rem;
  }

  /// Exact division by a single divisor; fails if the remainder is nonzero.
  Elem exact_div(const Elem& f, const Elem& g) const {
    require(!g.is_zero(), errc::computation_error, "division by zero polynomial");
    Elem q;
    Elem p = f;
    while (!p.t.empty()) {
      require(mono_divides(g.lm(), p.lm()), errc::computation_error, "inexact polynomial division");
      Monomial m = mono_div(p.lm(), g.lm());
      Coeff c = coeff.div(p.lc(), g.lc());
      q.t.emplace_back(m, c);
      p = add_raw(p, neg(mul_term_raw(g, m, c)));
    }
    std::sort(q.t.begin(), q.t.end(), [&](const auto& x, const auto& y) { return cmp(x.first, y.first) > 0; });
    return q;
  }

  /// Univariate Euclidean division (nvars == 1): f = q*g + r, deg r < deg g.
  std::pair<Elem, Elem> divmod_univariate(const Elem& f, const Elem& g) const {
    require(nvars() == 1 && !is_quotient(), errc::unsupported_ring, "univariate division needs k[x]");
    require(!g.is_zero(), errc::computation_error, "division by zero polynomial");
    Elem q, p = f;
    while (!p.is_zero() && p.lm().e[0] >= g.lm().e[0]) {
      Monomial m = mono_div(p.lm(), g.lm());
      Coeff c = coeff.div(p.lc(), g.lc());
      q.t.emplace_back(m, c);
      p = add_raw(p, neg(mul_term_raw(g, m, c)));
    }
    std::sort(q.t.begin(), q.t.end(), [&](const auto& x, const auto& y) { return cmp(x.first, y.first) > 0; });
    return {q, p};
  }

  // ---- ring extension (internal, for elimination) ------------------------------
  /// Ring with `extra` fresh variables prepended; the new order eliminates the
  /// prefix block. Relations are embedded.
  PolyRing extended(const std::vector<std::string>& extra) const {
    PolyRing r;
    r.coeff = coeff;
    r.vars = extra;
    r.vars.insert(r.vars.end(), vars.begin(), vars.end());
    r.order = MonomialOrder{order.kind, static_cast<int>(extra.size()) + order.elim_block};
    for (const auto& rel : relations) r.relations.push_back(embed_into(rel, static_cast<int>(extra.size())));
    return r;
  }
  /// View a polynomial of this ring inside a ring with `shift` extra leading vars.
  static Elem embed_into(const Elem& f, int shift) {
    Elem g;
    g.t.reserve(f.t.size());
    for (const auto& [m, c] : f.t) {
      Monomial mm;
      mm.e.assign(shift, 0);
      mm.e.insert(mm.e.end(), m.e.begin(), m.e.end());
      g.t.emplace_back(std::move(mm), c);
    }
    return g;
  }
  /// Drop `shift` leading variables; requires the polynomial not to use them.
  static Elem project_from(const Elem& f, int shift) {
    Elem g;
    g.t.reserve(f.t.size());
    for (const auto& [m, c] : f.t) {
      Monomial mm;
      mm.e.assign(m.e.begin() + shift, m.e.end());
      g.t.emplace_back(std::move(mm), c);
    }
    return g;
  }
  static bool uses_prefix(const Elem& f, int shift) {
    for (const auto& [m, c] : f.t)
      for (int i = 0; i < shift; ++i)
        if (m.e[i] > 0) return true;
    return false;
  }
  PolyRing ambient() const {
    PolyRing r = *this;
    r.relations.clear();
    return r;
  }

  // ---- printing ----------------------------------------------------------------
  std::string mono_string(const Monomial& m) const {
    std::string s;
    for (int i = 0; i < nvars(); ++i) {
      if (m.e[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += vars[i];
      if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
    }
    return s;
  }
  std::string to_string(const Elem& f) const {
    if (f.is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < f.t.size(); ++i) {
      const auto& [m, c] = f.t[i];
      std::string cs = coeff.to_string(c);
      bool neg_c = !cs.empty() && cs[0] == '-';
      if (i == 0) {
        if (neg_c) {
          s += "-";
          cs = cs.substr(1);
        }
      } else {
        s += neg_c ? " - " : " + ";
        if (neg_c) cs = cs.substr(1);
      }
      std::string ms = mono_string(m);
      if (ms.empty()) {
        s += cs;
      } else if (cs == "1") {
        s += ms;
      } else {
        s += cs + "*" + ms;
      }
    }
    return s;
  }

  // ---- internals -----------------------------------------------------------------
  Elem add_raw(const Elem& a, const Elem& b) const {
    Elem out;
    out.t.reserve(a.t.size() + b.t.size());
    std::size_t i = 0, j = 0;
    while (i < a.t.size() && j < b.t.size()) {
      int c = cmp(a.t[i].first, b.t[j].first);
      if (c > 0) {
        out.t.push_back(a.t[i++]);
      } else if (c < 0) {
        out.t.push_back(b.t[j++]);
      } else {
        Coeff s = coeff.add(a.t[i].second, b.t[j].second);
        if (!coeff.is_zero(s)) out.t.emplace_back(a.t[i].first, s);
        ++i;
        ++j;
      }
    }
    for (; i < a.t.size(); ++i) out.t.push_back(a.t[i]);
    for (; j < b.t.size(); ++j) out.t.push_back(b.t[j]);
    return out;
  }
  Elem mul_term_raw(const Elem& a, const Monomial& m, const Coeff& c) const {
    Elem p;
    if (coeff.is_zero(c)) return p;
    p.t.reserve(a.t.size());
    for (const auto& [am, ac] : a.t) {
      Coeff nc = coeff.mul(ac, c);
      if (!coeff.is_zero(nc)) p.t.emplace_back(mono_mul(am, m), nc);
    }
    return p;
  }
  Elem mul_raw(const Elem& a, const Elem& b) const {
    Elem acc;
    for (const auto& [m, c] : a.t) acc = add_raw(acc, mul_term_raw(b, m, c));
    return acc;
  }
  Elem reduce(const Elem& f) const { return relations.empty() ? f : nf_no_reduce(f); }

 private:
  Elem nf_no_reduce(const Elem& f) const {
    // same as nf(), against the relation GB; kept separate so nf() itself can
    // be used during quotient-ring construction
    Elem rem, p = f;
    while (!p.t.empty()) {
      bool red = false;
      for (const auto& g : relations) {
        if (!mono_divides(g.lm(), p.lm())) continue;
        Monomial q = mono_div(p.lm(), g.lm());
        Coeff c = coeff.div(p.lc(), g.lc());
        p = add_raw(p, neg(mul_term_raw(g, q, c)));
        red = true;
        break;
      }
      if (!red) {
        rem.t.push_back(p.t.front());
        p.t.erase(p.t.begin());
      }
    }
    return rem;
  }
};

using QQPolyRing = PolyRing<RatField>;
using FpPolyRing = PolyRing<PrimeField>;

/// Euclidean adapter over k[x] for Smith normal form: lowest-degree pivots,
/// monic normalization.
template <class K>
struct PolyEuclid {
  using Elem = Poly<K>;
  PolyRing<K> ring;

  void precheck() const {
    require(ring.nvars() == 1 && !ring.is_quotient(), errc::unsupported_ring,
            "Smith normal form needs ZZ or a univariate polynomial ring over a field");
  }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool norm_less(const Elem& a, const Elem& b) const { return a.lm().e[0] < b.lm().e[0]; }
  std::pair<Elem, Elem> divmod(const Elem& a, const Elem& b) const { return ring.divmod_univariate(a, b); }
  Elem normal_unit(const Elem& a) const { return ring.constant(ring.coeff.inv(a.lc())); }
  bool divides(const Elem& a, const Elem& b) const {
    if (a.is_zero()) return false;
    return ring.divmod_univariate(b, a).second.is_zero();
  }
  Elem exact_div(const Elem& a, const Elem& b) const { return ring.exact_div(a, b); }
  Elem zero() const { return ring.zero(); }
  Elem one() const { return ring.one(); }
  Elem sub(const Elem& a, const Elem& b) const { return ring.sub(a, b); }
  Elem mul(const Elem& a, const Elem& b) const { return ring.mul(a, b); }
};

/// Integral-domain adapter for Bareiss elimination over a free polynomial ring.
template <class K>
struct PolyDomain {
  using Elem = Poly<K>;
  PolyRing<K> ring;

  Elem zero() const { return ring.zero(); }
  Elem one() const { return ring.one(); }
  Elem sub(const Elem& a, const Elem& b) const { return ring.sub(a, b); }
  Elem mul(const Elem& a, const Elem& b) const { return ring.mul(a, b); }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  Elem exact_div(const Elem& a, const Elem& b) const { return ring.exact_div(a, b); }
};

}  // namespace dercat
