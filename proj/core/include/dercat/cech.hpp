#pragma once

#include <vector>

#include "dercat/complex.hpp"

namespace dercat {

/// Cech complex on a sequence x_1..x_n: degrees 0..-n, the degree -k term is
/// the direct sum of localizations R_S over the size-k subsets S (lex order).
/// Localized terms are symbolic: the multiplicative-set tag is the subset, and
/// the only consumer is the residue-field collapse rule below. Localizations
/// are never materialized as modules.
template <class Eng>
struct CechComplex {
  Eng eng;
  std::vector<typename Eng::Elem> elements;

  int n() const { return static_cast<int>(elements.size()); }
  /// Subset tags carried by the degree -k term.
  std::vector<std::vector<int>> tags(int k) const { return detail::subsets_lex(n(), k); }
};

template <class Eng>
CechComplex<Eng> cech_complex(const Eng& eng, std::vector<typename Eng::Elem> xs) {
  return CechComplex<Eng>{eng, std::move(xs)};
}

/// Collapse at a maximal ideal with residue field the base field: the
/// evaluation point gives each element a scalar value; a tagged term survives
/// exactly when every element of its multiplicative set is invertible (value
/// nonzero), and surviving localization maps become identities with the Cech
/// sign. Returns an honest complex of finite-dimensional vector spaces.
template <class Eng, class F>
Complex<FieldEngine<F>> cech_collapse(const CechComplex<Eng>& c, const FieldEngine<F>& fe,
                                      const std::vector<typename F::Elem>& values) {
  using E = typename F::Elem;
  int n = c.n();
  require(static_cast<int>(values.size()) == n, errc::semantic_error, "one value per Cech element required");
  std::vector<bool> invertible(n);
  for (int i = 0; i < n; ++i) invertible[i] = !fe.field.is_zero(values[i]);

  std::map<int, int> ranks;
  std::map<int, Mat<E>> diffs;
  std::vector<std::vector<std::vector<int>>> alive(n + 1);
  for (int k = 0; k <= n; ++k) {
    for (const auto& s : detail::subsets_lex(n, k)) {
      bool ok = true;
      for (int i : s)
        if (!invertible[i]) {
          ok = false;
          break;
        }
      if (ok) alive[k].push_back(s);
    }
    if (!alive[k].empty()) ranks[-k] = static_cast<int>(alive[k].size());
  }
  for (int k = 0; k + 1 <= n; ++k) {
    const auto& src = alive[k];
    const auto& dst = alive[k + 1];
    if (src.empty() || dst.empty()) continue;
    // differential from degree -k to degree -k-1
    std::vector<E> m(dst.size() * src.size(), fe.field.zero());
    for (std::size_t j = 0; j < src.size(); ++j) {
      for (int add = 0; add < n; ++add) {
        if (!invertible[add]) continue;
        const auto& s = src[j];
        if (std::find(s.begin(), s.end(), add) != s.end()) continue;
        std::vector<int> t = s;
        t.insert(std::lower_bound(t.begin(), t.end(), add), add);
        auto it = std::lower_bound(dst.begin(), dst.end(), t);
        if (it == dst.end() || *it != t) continue;
        int i = static_cast<int>(it - dst.begin());
        int pos = static_cast<int>(std::lower_bound(s.begin(), s.end(), add) - s.begin());
        E v = (pos % 2 == 0) ? fe.field.one() : fe.field.neg(fe.field.one());
        m[static_cast<std::size_t>(i) * src.size() + j] = v;
      }
    }
    diffs[-k] = Mat<E>::build(
        static_cast<int>(dst.size()), static_cast<int>(src.size()),
        [&](int i, int j) { return m[static_cast<std::size_t>(i) * src.size() + j]; },
        [&](const E& v) { return fe.field.is_zero(v); });
  }
  return make_complex(fe, std::move(ranks), std::move(diffs));
}

}  // namespace dercat
