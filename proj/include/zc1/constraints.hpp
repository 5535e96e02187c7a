#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "zc1/group_data.hpp"

namespace zc1 {

// Integer partial augmentations of a torsion unit, indexed by class.
struct PAVector {
  std::map<std::string, long> entries;  // zero entries omitted
  long unit_order = 1;

  long at(const std::string& cid) const {
    auto it = entries.find(cid);
    return it == entries.end() ? 0 : it->second;
  }
  long augmentation() const {
    long s = 0;
    for (const auto& [c, v] : entries) s += v;
    return s;
  }
  friend bool operator==(const PAVector& a, const PAVector& b) {
    return a.unit_order == b.unit_order && a.entries == b.entries;
  }
  friend bool operator<(const PAVector& a, const PAVector& b) {
    if (a.unit_order != b.unit_order) return a.unit_order < b.unit_order;
    return a.entries < b.entries;
  }
};

// A power-coherent tree describing a torsion unit together with its proper
// powers: children[p] is u^p, of order order/p.
struct SolvedUnit {
  long order = 1;
  PAVector pa;
  std::map<long, std::shared_ptr<const SolvedUnit>> children;

  bool trivial_here() const {
    return pa.entries.size() == 1 && pa.entries.begin()->second == 1;
  }
  // the rational-conjugacy pattern: every level has all but one partial
  // augmentation zero and the remaining one equal to 1
  bool trivial_pattern() const {
    if (!trivial_here()) return false;
    for (const auto& [p, ch] : children)
      if (!ch->trivial_pattern()) return false;
    return true;
  }
  std::string key() const;  // canonical serialization, for dedup/sort
};

using SolvedUnitPtr = std::shared_ptr<const SolvedUnit>;

// Trivial solved unit of the class with index ci, children via power maps.
SolvedUnitPtr trivial_unit(const GroupData& g, int ci);
// u^k for any k; coprime residual powers require trivial-pattern units.
SolvedUnitPtr unit_power(const GroupData& g, const SolvedUnitPtr& u, long k);

// Exact linear form in partial augmentations.
struct LinearForm {
  Rational constant;
  std::map<std::string, Rational> coefficients;

  Rational evaluate(const PAVector& pa) const {
    Rational v = constant;
    for (const auto& [c, q] : coefficients) v += q * Rational(pa.at(c));
    return v;
  }
};

// One constraint: form value required to lie in [lo, hi]; when `integral`,
// required to be an integer as well. Equalities have lo == hi.
struct Constraint {
  LinearForm form;
  Rational lo;
  Rational hi;
  bool integral = true;
  std::string note;  // provenance, e.g. "mu[chi11, zeta_8^3]"
};

struct ConstraintSystem {
  std::vector<std::string> variables;  // classes not forced to zero, table order
  std::vector<Constraint> equalities;
  std::vector<Constraint> mu_forms;
  // For prime-power orders: the classes whose partial augmentations must not
  // all vanish mod p (disjunctive; applied as a post-filter).
  std::vector<std::string> cl_classes;
  long cl_modulus = 0;
  std::vector<std::string> notes;
};

// Power assignment: for each divisor d | n with 1 < d < n, the solved unit
// standing for u^d. (u^n is the identity and is implicit.)
using PowerAssignment = std::map<long, SolvedUnitPtr>;

struct Toggles {
  bool ordinary = true;
  std::vector<long> modular_primes;  // e.g. {5}
  bool fusion = true;
  bool berman_higman = true;
  bool remark2 = true;
  bool cohn_livingstone = true;
  bool central_translation = true;
};

// chi(u) = sum_c eps_c chi(c); chi given as a full-table character.
Cyclotomic value_of_character_at_unit(const GroupData& g, const PAVector& pa,
                                      const Character& chi);

// phi(u) over p-regular classes; requires p not dividing the unit order and
// no support on p-singular classes. `phi` is indexed by p_regular_classes(p).
Cyclotomic value_of_brauer_at_unit(const GroupData& g, const PAVector& pa,
                                   const Character& phi, long p);

// The eigenvalue-multiplicity form mu(zeta_n^xi_exponent, u, chi) as an exact
// linear form in the partial augmentations of u, with the powers of u taken
// from `powers`. Ambient root order is exactly n here.
LinearForm mu_form(const GroupData& g, long xi_exponent, long n, const Character& chi,
                   const PowerAssignment& powers);

// Full constraint system for a hypothetical unit of order n under the given
// power assignment and, when fusion is enabled, the quotient image `qimage`
// (a solved unit of the quotient group `quotient`).
ConstraintSystem build_system(const GroupData& g, long n, const PowerAssignment& powers,
                              const Toggles& toggles, const GroupData* quotient = nullptr,
                              const SolvedUnitPtr& qimage = nullptr);

}  // namespace zc1
