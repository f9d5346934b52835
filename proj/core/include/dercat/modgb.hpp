#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "dercat/poly.hpp"

namespace dercat {

/// Element of a free module R^rank: one polynomial per component.
template <class K>
using Vec = std::vector<Poly<K>>;

template <class K>
Vec<K> vec_zero(const PolyRing<K>& r, int rank) {
  return Vec<K>(rank, r.zero());
}

template <class K>
bool vec_is_zero(const Vec<K>& v) {
  for (const auto& p : v)
    if (!p.is_zero()) return false;
  return true;
}

template <class K>
Vec<K> vec_add(const PolyRing<K>& r, const Vec<K>& a, const Vec<K>& b) {
  Vec<K> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = r.add_raw(a[i], b[i]);
  return out;
}

template <class K>
Vec<K> vec_neg(const PolyRing<K>& r, const Vec<K>& a) {
  Vec<K> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = r.neg(a[i]);
  return out;
}

template <class K>
Vec<K> vec_mul_term(const PolyRing<K>& r, const Vec<K>& a, const Monomial& m, const typename K::Elem& c) {
  Vec<K> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = r.mul_term_raw(a[i], m, c);
  return out;
}

template <class K>
Vec<K> vec_scale(const PolyRing<K>& r, const Poly<K>& f, const Vec<K>& a) {
  Vec<K> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = r.mul_raw(f, a[i]);
  return out;
}

/// Module term: a monomial sitting in one component of R^rank.
struct ModTerm {
  int comp = 0;
  Monomial m;
};

/// Order on module terms. Plain mode is position-over-term with lower
/// components dominating; elimination mode lets a leading block of variables
/// dominate everything (used to slice out t-free elements).
struct ModOrder {
  MonomialOrder mono;  // the ring's order (its elim_block is the variable prefix)

  int cmp(const ModTerm& a, const ModTerm& b) const {
    int k = mono.elim_block;
    if (k > 0) {
      // grevlex on the prefix block dominates component position
      int da = 0, db = 0;
      for (int i = 0; i < k; ++i) {
        da += a.m.e[i];
        db += b.m.e[i];
      }
      if (da != db) return da > db ? 1 : -1;
      for (int i = k - 1; i >= 0; --i)
        if (a.m.e[i] != b.m.e[i]) return a.m.e[i] < b.m.e[i] ? 1 : -1;
    }
    if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
    return mono.cmp(a.m, b.m);
  }
};

/// Leading term of a nonzero vector under the module order.
template <class K>
ModTerm vec_lead(const PolyRing<K>& r, const Vec<K>& v) {
  ModOrder mo{r.order};
  std::optional<ModTerm> best;
  for (int c = 0; c < static_cast<int>(v.size()); ++c) {
    if (v[c].is_zero()) continue;
    ModTerm cand{c, v[c].lm()};
    if (!best || mo.cmp(cand, *best) > 0) best = cand;
  }
  require(best.has_value(), errc::computation_error, "lead of zero vector");
  return *best;
}

template <class K>
typename K::Elem vec_lead_coeff(const Vec<K>& v, const ModTerm& t) {
  for (const auto& [m, c] : v[t.comp].t)
    if (m == t.m) return c;
  return typename K::Elem{};
}

/// Groebner basis of a submodule of R^rank, reduced, monic, sorted by leading
/// term descending. The engine works in the free ring (the caller is
/// responsible for augmenting generators when modelling a quotient ring).
template <class K>
struct ModuleGB {
  PolyRing<K> ring;
  int rank = 0;
  std::vector<Vec<K>> basis;
  std::vector<ModTerm> leads;
};

namespace detail {

/// One full-reduction step bundle: normal form of v against basis, optionally
/// tracking v = sum(coeff_i * basis_i) + remainder.
template <class K>
Vec<K> nf_vec_impl(const PolyRing<K>& r, const std::vector<Vec<K>>& basis, const std::vector<ModTerm>& leads,
                   Vec<K> p, typename std::type_identity<std::vector<Poly<K>>>::type* lift) {
  Vec<K> rem = vec_zero(r, static_cast<int>(p.size()));
  if (lift) lift->assign(basis.size(), r.zero());
  while (!vec_is_zero(p)) {
    ModTerm lt = vec_lead(r, p);
    typename K::Elem lc = vec_lead_coeff<K>(p, lt);
    bool reduced = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (leads[i].comp != lt.comp || !mono_divides(leads[i].m, lt.m)) continue;
      Monomial q = mono_div(lt.m, leads[i].m);
      typename K::Elem c = r.coeff.div(lc, vec_lead_coeff<K>(basis[i], leads[i]));
      p = vec_add(r, p, vec_neg(r, vec_mul_term(r, basis[i], q, c)));
      if (lift) (*lift)[i] = r.add_raw((*lift)[i], r.term(q, c));
      reduced = true;
      break;
    }
    if (!reduced) {
      // move the lead term into the remainder
      Poly<K> t;
      t.t.emplace_back(lt.m, lc);
      rem[lt.comp] = r.add_raw(rem[lt.comp], t);
      p[lt.comp] = r.add_raw(p[lt.comp], r.neg(t));
    }
  }
  return rem;
}

}  // namespace detail

template <class K>
Vec<K> mod_nf(const ModuleGB<K>& gb, const Vec<K>& v) {
  return detail::nf_vec_impl(gb.ring, gb.basis, gb.leads, v, nullptr);
}

template <class K>
Vec<K> mod_nf_lift(const ModuleGB<K>& gb, const Vec<K>& v, std::vector<Poly<K>>& lift) {
  return detail::nf_vec_impl(gb.ring, gb.basis, gb.leads, v, &lift);
}

/// Buchberger for submodules of R^rank: normal selection strategy; the
/// coprime-lead criterion in the ideal case and the chain criterion always.
/// Returns the unique reduced Groebner basis for the module order.
template <class K>
ModuleGB<K> mod_groebner(const PolyRing<K>& ring, int rank, std::vector<Vec<K>> gens) {
  // the engine works in the free ring; quotient callers augment with
  // relation columns first
  require(!ring.is_quotient(), errc::computation_error, "module GB engine needs the ambient free ring");
  ModOrder mo{ring.order};
  ModuleGB<K> gb;
  gb.ring = ring;
  gb.rank = rank;

  auto monic = [&](Vec<K> v) {
    ModTerm lt = vec_lead(ring, v);
    auto lc = vec_lead_coeff<K>(v, lt);
    auto inv = ring.coeff.inv(lc);
    for (auto& p : v) p = ring.mul_term_raw(p, Monomial::unit(ring.nvars()), inv);
    return v;
  };

  std::vector<Vec<K>>& g = gb.basis;
  std::vector<ModTerm>& leads = gb.leads;
  for (auto& v : gens) {
    if (vec_is_zero(v)) continue;
    g.push_back(monic(std::move(v)));
    leads.push_back(vec_lead(ring, g.back()));
  }
  // deterministic starting order
  {
    std::vector<std::size_t> idx(g.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return mo.cmp(leads[a], leads[b]) > 0;
    });
    std::vector<Vec<K>> g2;
    std::vector<ModTerm> l2;
    for (auto i : idx) {
      g2.push_back(std::move(g[i]));
      l2.push_back(leads[i]);
    }
    g = std::move(g2);
    leads = std::move(l2);
  }

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    int deg;
  };
  std::vector<Pair> pending;
  std::set<std::pair<std::size_t, std::size_t>> handled;
  auto push_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (leads[i].comp != leads[j].comp) continue;
      Monomial l = mono_lcm(leads[i].m, leads[j].m);
      pending.push_back(Pair{i, j, l, l.deg()});
    }
  };
  for (std::size_t j = 1; j < g.size(); ++j) push_pairs(j);

  while (!pending.empty()) {
    // normal strategy: least lcm degree, then order on lcm, then indices
    std::size_t sel = 0;
    for (std::size_t k = 1; k < pending.size(); ++k) {
      const Pair &a = pending[k], &b = pending[sel];
      int c = a.deg != b.deg ? (a.deg < b.deg ? -1 : 1) : ring.order.cmp(a.lcm, b.lcm);
      if (c < 0 || (c == 0 && std::make_pair(a.i, a.j) < std::make_pair(b.i, b.j))) sel = k;
    }
    Pair pr = pending[sel];
    pending.erase(pending.begin() + sel);
    handled.insert({pr.i, pr.j});

    if (rank == 1 && mono_coprime(leads[pr.i].m, leads[pr.j].m)) continue;
    // chain criterion
    bool skip = false;
    for (std::size_t k = 0; k < g.size() && !skip; ++k) {
      if (k == pr.i || k == pr.j || leads[k].comp != leads[pr.i].comp) continue;
      if (!mono_divides(leads[k].m, pr.lcm)) continue;
      auto key1 = std::minmax(pr.i, k);
      auto key2 = std::minmax(pr.j, k);
      if (handled.count({key1.first, key1.second}) && handled.count({key2.first, key2.second})) skip = true;
    }
    if (skip) continue;

    Monomial qi = mono_div(pr.lcm, leads[pr.i].m);
    Monomial qj = mono_div(pr.lcm, leads[pr.j].m);
    Vec<K> s = vec_add(ring, vec_mul_term(ring, g[pr.i], qi, ring.coeff.one()),
                       vec_neg(ring, vec_mul_term(ring, g[pr.j], qj, ring.coeff.one())));
    Vec<K> r = detail::nf_vec_impl(ring, g, leads, std::move(s), nullptr);
    if (vec_is_zero(r)) continue;
    g.push_back(monic(std::move(r)));
    leads.push_back(vec_lead(ring, g.back()));
    push_pairs(g.size() - 1);
  }

  // minimize: drop elements whose lead is divisible by another surviving lead
  std::vector<bool> keep(g.size(), true);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i == j || !keep[i] || !keep[j]) continue;
      if (leads[j].comp == leads[i].comp && mono_divides(leads[j].m, leads[i].m) &&
          !(leads[i].m == leads[j].m && i < j))
        keep[i] = false;
    }
  std::vector<Vec<K>> min_g;
  std::vector<ModTerm> min_l;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (keep[i]) {
      min_g.push_back(g[i]);
      min_l.push_back(leads[i]);
    }
  // inter-reduce tails
  std::vector<Vec<K>> red_g(min_g.size());
  for (std::size_t i = 0; i < min_g.size(); ++i) {
    std::vector<Vec<K>> others;
    std::vector<ModTerm> other_l;
    for (std::size_t j = 0; j < min_g.size(); ++j)
      if (j != i) {
        others.push_back(min_g[j]);
        other_l.push_back(min_l[j]);
      }
    red_g[i] = detail::nf_vec_impl(ring, others, other_l, min_g[i], nullptr);
  }
  for (auto& v : red_g) v = monic(std::move(v));
  // canonical order: leads descending
  std::vector<std::size_t> idx(red_g.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return mo.cmp(vec_lead(ring, red_g[a]), vec_lead(ring, red_g[b])) > 0;
  });
  ModuleGB<K> out;
  out.ring = ring;
  out.rank = rank;
  for (auto i : idx) {
    out.basis.push_back(std::move(red_g[i]));
    out.leads.push_back(vec_lead(ring, out.basis.back()));
  }
  return out;
}

// ---- derived operations -----------------------------------------------------

/// Graph basis {(v_i, e_i)} in R^(rank + n): membership with lifts and
/// syzygies in one structure.
template <class K>
struct GraphGB {
  ModuleGB<K> gb;
  int rank = 0;  // rank of the original module
  int n = 0;     // number of tagged generators
};

template <class K>
GraphGB<K> graph_gb(const PolyRing<K>& ring, int rank, const std::vector<Vec<K>>& vectors) {
  int n = static_cast<int>(vectors.size());
  std::vector<Vec<K>> gens;
  gens.reserve(n);
  for (int i = 0; i < n; ++i) {
    Vec<K> w = vec_zero(ring, rank + n);
    for (int c = 0; c < rank; ++c) w[c] = vectors[i][c];
    w[rank + i] = ring.one();
    gens.push_back(std::move(w));
  }
  GraphGB<K> out;
  out.gb = mod_groebner(ring, rank + n, std::move(gens));
  out.rank = rank;
  out.n = n;
  return out;
}

/// Syzygies of the tagged generators: graph-GB elements with vanishing first
/// block, projected onto the tag block.
template <class K>
std::vector<Vec<K>> graph_syzygies(const GraphGB<K>& g) {
  std::vector<Vec<K>> out;
  for (const auto& w : g.gb.basis) {
    bool first_zero = true;
    for (int c = 0; c < g.rank && first_zero; ++c)
      if (!w[c].is_zero()) first_zero = false;
    if (!first_zero) continue;
    Vec<K> s(w.begin() + g.rank, w.end());
    out.push_back(std::move(s));
  }
  return out;
}

/// If b lies in the span, return coefficients expressing it; else nullopt.
template <class K>
std::optional<std::vector<Poly<K>>> graph_lift(const GraphGB<K>& g, const Vec<K>& b) {
  const auto& ring = g.gb.ring;
  Vec<K> w = vec_zero(ring, g.rank + g.n);
  for (int c = 0; c < g.rank; ++c) w[c] = b[c];
  Vec<K> rem = mod_nf(g.gb, w);
  for (int c = 0; c < g.rank; ++c)
    if (!rem[c].is_zero()) return std::nullopt;
  std::vector<Poly<K>> lift(g.n);
  for (int i = 0; i < g.n; ++i) lift[i] = ring.neg(rem[g.rank + i]);
  return lift;
}

/// Elements of the span GB with all terms free of the leading `prefix`
/// variables, projected into the smaller ring. The ring order must have
/// elim_block >= prefix.
template <class K>
std::vector<Vec<K>> eliminate_prefix(const ModuleGB<K>& gb, int prefix) {
  std::vector<Vec<K>> out;
  for (const auto& v : gb.basis) {
    bool free_of = true;
    for (const auto& p : v)
      if (PolyRing<K>::uses_prefix(p, prefix)) {
        free_of = false;
        break;
      }
    if (!free_of) continue;
    Vec<K> w(v.size());
    for (std::size_t c = 0; c < v.size(); ++c) w[c] = PolyRing<K>::project_from(v[c], prefix);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace dercat
