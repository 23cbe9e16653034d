#pragma once

#include <span>
#include <vector>

namespace irtbench {

/// 1-based ranks in ascending value order; tied values share their mean rank.
std::vector<double> average_ranks(std::span<const double> values);

double pearson(std::span<const double> x, std::span<const double> y);
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace irtbench
