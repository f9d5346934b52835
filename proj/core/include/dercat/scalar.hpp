#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "dercat/error.hpp"

namespace dercat {

using Int = mpz_class;
using Rat = mpq_class;

/// Prime-field element. The modulus lives in the owning `PrimeField` context,
/// so this is just the canonical residue in [0, p).
struct Fp {
  std::uint64_t v = 0;
  friend bool operator==(const Fp&, const Fp&) = default;
};

/// Arithmetic context for F_p. All scalar contexts below expose the same
/// surface (Elem, zero/one, add/sub/mul/neg, is_zero, is_unit, inv where a
/// field, to_string), which is what the generic matrix and polynomial layers
/// program against.
struct PrimeField {
  using Elem = Fp;
  std::uint64_t p = 2;

  Elem zero() const { return Fp{0}; }
  Elem one() const { return Fp{1 % p}; }
  Elem from_int(long n) const {
    long r = n % static_cast<long>(p);
    if (r < 0) r += static_cast<long>(p);
    return Fp{static_cast<std::uint64_t>(r)};
  }
  Elem from_mpz(const Int& n) const {
    Int r = n % static_cast<unsigned long>(p);
    if (r < 0) r += static_cast<unsigned long>(p);
    return Fp{r.get_ui()};
  }
  Elem add(Elem a, Elem b) const {
    std::uint64_t s = a.v + b.v;
    if (s >= p) s -= p;
    return Fp{s};
  }
  Elem sub(Elem a, Elem b) const { return Fp{a.v >= b.v ? a.v - b.v : a.v + p - b.v}; }
  Elem neg(Elem a) const { return Fp{a.v == 0 ? 0 : p - a.v}; }
  Elem mul(Elem a, Elem b) const { return Fp{(a.v * b.v) % p}; }
  Elem inv(Elem a) const {
    require(a.v != 0, errc::computation_error, "division by zero in F_p");
    // extended Euclid; p prime
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a.v);
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
      tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return Fp{static_cast<std::uint64_t>(t)};
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  bool is_zero(Elem a) const { return a.v == 0; }
  bool is_unit(Elem a) const { return a.v != 0; }
  bool eq(Elem a, Elem b) const { return a.v == b.v; }
  std::string to_string(Elem a) const { return std::to_string(a.v); }
};

/// Arithmetic context for arbitrary-precision rationals.
struct RatField {
  using Elem = Rat;

  Elem zero() const { return Rat(0); }
  Elem one() const { return Rat(1); }
  Elem from_int(long n) const { return Rat(n); }
  Elem from_mpz(const Int& n) const { return Rat(n); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    require(a != 0, errc::computation_error, "division by zero in QQ");
    return Rat(1) / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return a / inv_guard(b); }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool is_unit(const Elem& a) const { return a != 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string to_string(const Elem& a) const { return a.get_str(); }

 private:
  static const Rat& inv_guard(const Rat& b) {
    require(b != 0, errc::computation_error, "division by zero in QQ");
    return b;
  }
};

/// Arithmetic context for ZZ (a Euclidean domain, not a field).
struct IntRing {
  using Elem = Int;

  Elem zero() const { return Int(0); }
  Elem one() const { return Int(1); }
  Elem from_int(long n) const { return Int(n); }
  Elem from_mpz(const Int& n) const { return n; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool is_unit(const Elem& a) const { return a == 1 || a == -1; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string to_string(const Elem& a) const { return a.get_str(); }
};

}  // namespace dercat
