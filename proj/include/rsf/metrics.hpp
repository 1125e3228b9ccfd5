#pragma once

#include <vector>

#include "rsf/graph.hpp"

namespace rsf {

// 10 log10(max_value^2 / MSE); +infinity when the signals are identical.
double psnr(const Signal& reference, const Signal& candidate, double max_value);

// Pair-counting Adjusted Rand Index between two labelings of the same
// nodes. Chance-corrected: a single-cluster prediction scores 0 against any
// non-trivial truth; label permutations score 1 against themselves.
double adjusted_rand_index(const std::vector<int>& pred, const std::vector<int>& truth);

// Spearman rank correlation with average ranks for ties.
double spearman_rank_correlation(const std::vector<double>& xs,
                                 const std::vector<double>& ys);

} // namespace rsf
