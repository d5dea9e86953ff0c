#ifndef EVIDFUSE_COMBINATION_HPP
#define EVIDFUSE_COMBINATION_HPP

#include <cstddef>

#include "evidfuse/core.hpp"

namespace evidfuse {

// Conflict below this distance from 1 is treated as total.
inline constexpr double kTotalConflictTolerance = 1e-12;

/// Mass the two BPAs jointly assign to disjoint focal pairs (k in [0, 1]).
double conflict(const Bpa& m1, const Bpa& m2);

/// Dempster's rule. Throws TotalConflictError when k == 1.
Bpa combine(const Bpa& m1, const Bpa& m2);

/// Folds combine over operations + 1 copies of m, left to right.
Bpa self_combine(const Bpa& m, std::size_t operations);

}  // namespace evidfuse

#endif  // EVIDFUSE_COMBINATION_HPP
