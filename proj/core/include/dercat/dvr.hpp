#pragma once

#include <string>
#include <vector>

#include "dercat/error.hpp"

namespace dercat {

/// Formal derived calculus over a complete DVR (R, m, k) on the four building
/// blocks: R itself, the fraction field Q, the injective hull E = E_R(k), and
/// the finite torsion modules T(n) = R/m^n. Objects are finite direct sums of
/// shifted copies. The operation tables are frozen data; validate_dvr_tables()
/// re-derives every entry from small models and the cross-identities and
/// throws on any mismatch (it runs once, before the first table lookup).

enum class DvrKind { free_r, frac_q, hull_e, torsion };

struct DvrSummand {
  DvrKind kind = DvrKind::free_r;
  int n = 0;      // torsion length, >= 1 for torsion summands
  int shift = 0;  // homological shift
  friend auto operator<=>(const DvrSummand&, const DvrSummand&) = default;
};

struct DvrObject {
  std::vector<DvrSummand> summands;  // kept sorted (canonical form)
  bool complete = true;              // ambient DVR completeness flag

  bool is_zero() const { return summands.empty(); }
  friend bool operator==(const DvrObject&, const DvrObject&) = default;
};

/// Subset of Spec(R) = {0, m}.
struct DvrSpecSet {
  bool zero = false;
  bool max = false;
  friend bool operator==(const DvrSpecSet&, const DvrSpecSet&) = default;
  DvrSpecSet intersect(DvrSpecSet o) const { return {zero && o.zero, max && o.max}; }
  DvrSpecSet unite(DvrSpecSet o) const { return {zero || o.zero, max || o.max}; }
  bool subset_of(DvrSpecSet o) const { return (!zero || o.zero) && (!max || o.max); }
  bool empty() const { return !zero && !max; }
};

std::string to_string(const DvrSpecSet& s);

// construction helpers
DvrObject dvr_zero(bool complete = true);
DvrObject dvr_r(int shift = 0, bool complete = true);
DvrObject dvr_q(int shift = 0, bool complete = true);
DvrObject dvr_e(int shift = 0, bool complete = true);
DvrObject dvr_t(int n, int shift = 0, bool complete = true);
DvrObject dvr_sum(const DvrObject& a, const DvrObject& b);
DvrObject dvr_shift(const DvrObject& a, int k);
std::string to_string(const DvrObject& a);

// the calculus
DvrObject dvr_tensor(const DvrObject& a, const DvrObject& b);
DvrObject dvr_rhom(const DvrObject& a, const DvrObject& b);
enum class DvrIdeal { zero, max };
DvrObject dvr_gamma(const DvrObject& a, DvrIdeal ideal = DvrIdeal::max);
DvrObject dvr_lambda(const DvrObject& a, DvrIdeal ideal = DvrIdeal::max);
DvrSpecSet dvr_supp(const DvrObject& a);
DvrSpecSet dvr_cosupp(const DvrObject& a);
bool dvr_adically_finite(const DvrObject& a, DvrIdeal ideal);

/// Whether every homology module is finitely generated (no Q or E summands).
bool dvr_fg(const DvrObject& a);

/// Re-derive the frozen tables: torsion entries against Smith-normal-form
/// models over k[x], the E and Q entries against Matlis duality, Hom-tensor
/// adjointness and the support/co-support identities, exhaustively over the
/// basis. Throws on the first inconsistency. Runs automatically once.
void validate_dvr_tables();

}  // namespace dercat
