#pragma once

#include <string>
#include <vector>

namespace dercat {

/// Exponent vector. The number of variables is fixed by the owning ring.
struct Monomial {
  std::vector<int> e;

  static Monomial unit(int nvars) { return Monomial{std::vector<int>(nvars, 0)}; }
  static Monomial var(int nvars, int i, int power = 1) {
    Monomial m = unit(nvars);
    m.e[i] = power;
    return m;
  }
  int deg() const {
    int d = 0;
    for (int x : e) d += x;
    return d;
  }
  bool is_unit() const {
    for (int x : e)
      if (x) return false;
    return true;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

bool mono_divides(const Monomial& a, const Monomial& b);  // a | b
Monomial mono_mul(const Monomial& a, const Monomial& b);
Monomial mono_div(const Monomial& a, const Monomial& b);  // a / b, assumes b | a
Monomial mono_lcm(const Monomial& a, const Monomial& b);
bool mono_coprime(const Monomial& a, const Monomial& b);

enum class OrderKind { lex, grevlex };

/// Monomial order: lex or grevlex, optionally preceded by an elimination
/// block (the first `elim_block` variables dominate, compared grevlex among
/// themselves). Used internally for elimination ideals; user-facing orders
/// have elim_block = 0.
struct MonomialOrder {
  OrderKind kind = OrderKind::grevlex;
  int elim_block = 0;

  // -1, 0, 1 for a < b, a == b, a > b
  int cmp(const Monomial& a, const Monomial& b) const;
};

std::string order_name(const MonomialOrder& o);

}  // namespace dercat
