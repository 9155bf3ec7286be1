#pragma once

#include "latticewave/rational.hpp"

namespace lw {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;
  Vec x;
};

// max c.x subject to A x <= b, x free. Exact rational two-phase simplex
// with Bland's rule.
LpResult lp_maximize(const std::vector<Vec>& A, const Vec& b, const Vec& c);

}  // namespace lw
