#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rwre::stats {

struct CountTable {
  std::vector<std::string> labels;
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const;
};

struct TestResult {
  double stat = 0.0;
  int dof = 0;
  double pvalue = 1.0;
  int pooled_cells = 0;  // cells merged to keep expected counts >= 5
};

/// Regularized upper incomplete gamma Q(s, x) = Gamma(s,x)/Gamma(s).
/// Series for x < s+1, Lentz continued fraction otherwise.
double regularized_gamma_q(double s, double x);

/// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_tail(double stat, int dof);

/// Pearson goodness-of-fit test. Cells with expected count < 5 are pooled
/// (smallest expected first) and the number of merges reported.
TestResult chisq_gof(const CountTable& observed, std::span<const double> expected_probs);

/// Contingency-table independence test; throws StatError on degenerate
/// margins (a zero row or column sum).
TestResult chisq_independence(const std::vector<std::vector<std::uint64_t>>& joint);

/// Total variation distance between two probability vectors.
double tv_distance(std::span<const double> p, std::span<const double> q);

}  // namespace rwre::stats
