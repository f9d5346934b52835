#include "dercat/monomial.hpp"

#include <algorithm>
#include <cassert>

namespace dercat {

bool mono_divides(const Monomial& a, const Monomial& b) {
  assert(a.e.size() == b.e.size());
  for (std::size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  assert(a.e.size() == b.e.size());
  Monomial m = a;
  for (std::size_t i = 0; i < b.e.size(); ++i) m.e[i] += b.e[i];
  return m;
}

Monomial mono_div(const Monomial& a, const Monomial& b) {
  assert(mono_divides(b, a));
  Monomial m = a;
  for (std::size_t i = 0; i < b.e.size(); ++i) m.e[i] -= b.e[i];
  return m;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  assert(a.e.size() == b.e.size());
  Monomial m = a;
  for (std::size_t i = 0; i < b.e.size(); ++i) m.e[i] = std::max(m.e[i], b.e[i]);
  return m;
}

bool mono_coprime(const Monomial& a, const Monomial& b) {
  assert(a.e.size() == b.e.size());
  for (std::size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] > 0 && b.e[i] > 0) return false;
  return true;
}

namespace {

int cmp_lex(const int* a, const int* b, int n) {
  for (int i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  }
  return 0;
}

int cmp_grevlex(const int* a, const int* b, int n) {
  int da = 0, db = 0;
  for (int i = 0; i < n; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (int i = n - 1; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::cmp(const Monomial& a, const Monomial& b) const {
  assert(a.e.size() == b.e.size());
  int n = static_cast<int>(a.e.size());
  int k = std::min(elim_block, n);
  if (k > 0) {
    int c = cmp_grevlex(a.e.data(), b.e.data(), k);
    if (c != 0) return c;
  }
  const int* pa = a.e.data() + k;
  const int* pb = b.e.data() + k;
  int rest = n - k;
  return kind == OrderKind::lex ? cmp_lex(pa, pb, rest) : cmp_grevlex(pa, pb, rest);
}

std::string order_name(const MonomialOrder& o) {
  std::string s = o.kind == OrderKind::lex ? "lex" : "grevlex";
  if (o.elim_block > 0) s += "(elim " + std::to_string(o.elim_block) + ")";
  return s;
}

}  // namespace dercat
