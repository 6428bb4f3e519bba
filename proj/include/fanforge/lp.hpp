#pragma once

#include "fanforge/rational.hpp"

#include <optional>

namespace fanforge {

/// Outcome of an exact feasibility search for {x >= 0 : A x = b}.
struct Feasibility {
    /// A nonnegative solution when one exists.
    std::optional<RatVec> solution;
    /// Otherwise a Farkas certificate y with y^T A <= 0 and y^T b > 0.
    RatVec certificate;

    bool feasible() const { return solution.has_value(); }
};

/// Phase-one simplex with Bland's rule over exact rationals. Terminates on
/// every input; intended for the small systems that arise at desk scale.
Feasibility nonnegative_solution(const RatMat& a, const RatVec& b);

}  // namespace fanforge
