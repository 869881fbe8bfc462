#pragma once

#include <optional>
#include <vector>

#include "btt/rational.hpp"

namespace btt {

/// Exact feasibility for {y : A y = b, y >= 0} over Q.
///
/// Phase one of the primal simplex method with Bland's rule, so it
/// terminates without any perturbation. Returns a feasible y or nullopt.
/// Rows of `a` must all have the same length.
std::optional<std::vector<Rational>> feasible_point(const std::vector<std::vector<Rational>>& a,
                                                    const std::vector<Rational>& b);

}  // namespace btt
