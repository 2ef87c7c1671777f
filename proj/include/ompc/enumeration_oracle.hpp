#pragma once

#include "ompc/solver.hpp"

namespace ompc {

/// Exhaustive argmin over subsets of the constraint support. Global optimum;
/// ties break toward the lexicographically smallest id set.
/// Throws OracleCapacityError above supportCap.
SetOracle exactEnumerationOracle(int supportCap = 20);

/// Argmin restricted to singletons. Exact whenever every support coefficient
/// is >= 1: tau is monotone under set inclusion, so a covering singleton
/// always weakly beats each of its supersets. Used for the unit-coefficient
/// adversary streams whose supports are too wide to enumerate.
SetOracle bestSingletonOracle();

}  // namespace ompc
