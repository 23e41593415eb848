#pragma once

#include "freelat/rational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace freelat {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// Dual ray y proving {x >= 0 : A x = b} is empty: A^T y <= 0 and b^T y > 0.
struct FarkasCertificate {
    RationalVector y;
};

struct FeasibilityResult {
    std::optional<RationalVector> solution;       ///< x >= 0 with A x = b
    std::optional<FarkasCertificate> certificate;  ///< set iff solution is empty
    std::size_t pivots = 0;

    explicit operator bool() const noexcept { return solution.has_value(); }
};

/// Exact phase-1 simplex with Bland's rule on {x >= 0 : A x = b}.
/// Every row of `a` must have the same length.
FeasibilityResult solve_feasibility(const RationalMatrix& a, std::span<const Rational> b);

bool verify_solution(const RationalMatrix& a, std::span<const Rational> b,
                     std::span<const Rational> x);
bool verify_certificate(const RationalMatrix& a, std::span<const Rational> b,
                        const FarkasCertificate& cert);

}  // namespace freelat
