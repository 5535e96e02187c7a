#pragma once

#include <optional>
#include <vector>

#include "zc1/rational.hpp"

namespace zc1 {

enum class LpStatus { optimal, unbounded, infeasible };

struct LpResult {
  LpStatus status;
  Rational value;  // defined when optimal
};

// Maximize c.y subject to A y <= b, y >= 0. Exact rational two-phase tableau
// simplex with Bland's rule (terminates, deterministic).
LpResult simplex_max(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                     const std::vector<Rational>& c);

// Maximize sign * x_var over { x free : rows a.x <= rhs }.
LpResult lp_bound(const std::vector<std::pair<std::vector<Rational>, Rational>>& rows, int nvars,
                  int var, int sign);

}  // namespace zc1
