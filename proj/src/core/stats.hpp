#pragma once

#include <string>
#include <vector>

namespace irtbench {

/// n blocks (rating periods) by k treatments (classifiers), row-major.
struct BlockDesign {
  std::vector<std::string> treatments;
  std::vector<std::string> blocks;
  std::vector<double> values;

  std::size_t k() const noexcept { return treatments.size(); }
  std::size_t n() const noexcept { return blocks.size(); }
  double at(std::size_t block, std::size_t treatment) const { return values[block * k() + treatment]; }
  void validate(std::size_t min_treatments) const;
};

struct FriedmanResult {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
  std::vector<double> mean_ranks;
  double tie_fraction = 0.0;  // share of cells whose value is tied within its block
};

struct NemenyiResult {
  double alpha = 0.05;
  double q_alpha = 0.0;
  double critical_difference = 0.0;
  std::vector<double> mean_ranks;
  std::vector<double> p_values;  // k x k, row-major, symmetric, unit diagonal
};

/// Within-block average ranks (1 = smallest value), row-major like the design.
std::vector<double> block_ranks(const BlockDesign& design);

FriedmanResult friedman(const BlockDesign& design);

/// Tabulated q_alpha (studentized range / sqrt 2, infinite df) for
/// alpha in {0.05, 0.10} and 2 <= k <= 20.
double nemenyi_q(double alpha, std::size_t k);

/// CDF of the studentized range of k standard normals (infinite df).
double studentized_range_cdf(double q, std::size_t k);

NemenyiResult nemenyi(const BlockDesign& design, double alpha = 0.05);

}  // namespace irtbench
