#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "zc1/constraints.hpp"

namespace zc1 {

// Finite per-variable integer bounds derived from the constraint system.
struct SolutionBox {
  std::vector<long> lo;  // aligned with system.variables
  std::vector<long> hi;
  bool empty() const {
    for (size_t i = 0; i < lo.size(); ++i)
      if (lo[i] > hi[i]) return true;
    return false;
  }
};

// Interval propagation over the box conditions, with an exact rational LP
// fallback for variables propagation alone cannot bound. Throws an
// "unbounded-variable" error when the system itself is unbounded.
SolutionBox solve_box(const ConstraintSystem& system);

// Statistics from an enumeration run: for each eliminated box point the first
// violated constraint, aggregated as counts per constraint note.
struct EliminationCounts {
  std::map<std::string, std::uint64_t> first_violation;
  void merge(const EliminationCounts& o);
};

// All integer points of the box satisfying every constraint (plus the
// disjunctive Cohn-Livingstone filter), in lexicographic class order.
std::vector<PAVector> enumerate_integer_solutions(const ConstraintSystem& system,
                                                  const SolutionBox& box, long unit_order,
                                                  EliminationCounts* stats = nullptr);
// Single-threaded reference implementation of the same kernel.
std::vector<PAVector> enumerate_integer_solutions_serial(const ConstraintSystem& system,
                                                         const SolutionBox& box, long unit_order,
                                                         EliminationCounts* stats = nullptr);

enum class Zc1Status {
  verified_trivial,
  reduced_via_central_translation,
  open,
};

const char* to_string(Zc1Status s);

struct OrderVerdict {
  long order = 1;
  std::vector<SolvedUnitPtr> solutions;  // canonically sorted
  Zc1Status status = Zc1Status::verified_trivial;
  std::vector<std::string> notes;
  EliminationCounts eliminations;
  bool no_units() const { return solutions.empty(); }
};

// One solved unit per class of element order n; children via power maps.
std::vector<SolvedUnitPtr> trivial_solutions(const GroupData& g, long n);

// All diamond-coherent assignments of solved units to the proper divisors.
std::vector<PowerAssignment> enumerate_power_assignments(
    const GroupData& g, const std::map<long, OrderVerdict>& solved, long n);

// The partial augmentations of z*u for a central class z.
PAVector central_translate(const GroupData& g, const PAVector& pa, const std::string& z_class);

// Candidate unit orders for the group: divisors of the exponent whose
// prime-power parts are element orders and whose image order can exist in the
// quotient (when a quotient link is present and fusion is enabled).
std::vector<long> candidate_orders(const GroupData& g, const GroupData* quotient,
                                   const Toggles& toggles);

class Engine {
 public:
  // `quotient` may be null when the group has no quotient link or fusion is
  // disabled. The quotient itself is always solved with its own full toggle
  // set: fusion constraints presuppose the quotient's solved state.
  Engine(const GroupData& g, const GroupData* quotient, const Toggles& toggles);

  OrderVerdict solve_order(long n);                      // solves dependencies on demand
  const std::map<long, OrderVerdict>& verdicts() const { return verdicts_; }
  std::map<long, OrderVerdict> verify_zc1();             // all candidate orders
  bool all_verified() const;

  const GroupData& group() const { return g_; }
  const GroupData* quotient_group() const { return quotient_; }
  const std::map<long, OrderVerdict>* quotient_verdicts() const {
    return quotient_engine_ ? &quotient_engine_->verdicts_ : nullptr;
  }

 private:
  OrderVerdict solve_order_impl(long n);
  std::vector<SolvedUnitPtr> quotient_branches(long n, const PowerAssignment& powers);
  const GroupData& g_;
  const GroupData* quotient_;
  Toggles toggles_;
  std::unique_ptr<Engine> quotient_engine_;
  std::map<long, OrderVerdict> verdicts_;
};

}  // namespace zc1
