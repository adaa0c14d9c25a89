#include "rwre/statlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rwre/errors.hpp"

namespace rwre::stats {

std::uint64_t CountTable::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

namespace {

// P(s,x) by series expansion, valid (and fast) for x < s + 1.
double gamma_p_series(double s, double x) {
  double ap = s;
  double sum = 1.0 / s;
  double del = sum;
  for (int i = 0; i < 1000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Q(s,x) by modified Lentz continued fraction, valid for x >= s + 1.
double gamma_q_cf(double s, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

}  // namespace

double regularized_gamma_q(double s, double x) {
  if (s <= 0.0 || x < 0.0) throw StatError("regularized_gamma_q: need s > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < s + 1.0) return 1.0 - gamma_p_series(s, x);
  return gamma_q_cf(s, x);
}

double chi_square_tail(double stat, int dof) {
  if (dof < 1) throw StatError("chi_square_tail: dof must be >= 1");
  if (stat <= 0.0) return 1.0;
  return regularized_gamma_q(0.5 * dof, 0.5 * stat);
}

TestResult chisq_gof(const CountTable& observed, std::span<const double> expected_probs) {
  if (observed.counts.size() != expected_probs.size()) {
    throw StatError("chisq_gof: size mismatch between counts and expected probabilities");
  }
  double psum = std::accumulate(expected_probs.begin(), expected_probs.end(), 0.0);
  if (std::fabs(psum - 1.0) > 1e-9) throw StatError("chisq_gof: expected probabilities must sum to 1");
  const double n = static_cast<double>(observed.total());
  if (n == 0) throw StatError("chisq_gof: empty table");

  // Pool low-expectation cells, smallest expected first, into the cell with
  // the next-smallest expectation.
  struct Cell {
    double obs;
    double exp;
  };
  std::vector<Cell> cells;
  cells.reserve(observed.counts.size());
  for (std::size_t i = 0; i < observed.counts.size(); ++i) {
    cells.push_back({static_cast<double>(observed.counts[i]), n * expected_probs[i]});
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.exp < b.exp; });
  int pooled = 0;
  while (cells.size() > 1 && cells.front().exp < 5.0) {
    cells[1].obs += cells[0].obs;
    cells[1].exp += cells[0].exp;
    cells.erase(cells.begin());
    std::sort(cells.begin(), cells.end(),
              [](const Cell& a, const Cell& b) { return a.exp < b.exp; });
    ++pooled;
  }
  if (cells.size() < 2) throw StatError("chisq_gof: degenerate single-cell table after pooling");

  TestResult r;
  r.pooled_cells = pooled;
  for (const Cell& c : cells) {
    double d = c.obs - c.exp;
    r.stat += d * d / c.exp;
  }
  r.dof = static_cast<int>(cells.size()) - 1;
  r.pvalue = chi_square_tail(r.stat, r.dof);
  return r;
}

TestResult chisq_independence(const std::vector<std::vector<std::uint64_t>>& joint) {
  const std::size_t rows = joint.size();
  if (rows < 2) throw StatError("chisq_independence: need at least 2 rows");
  const std::size_t cols = joint.front().size();
  if (cols < 2) throw StatError("chisq_independence: need at least 2 columns");
  for (const auto& row : joint) {
    if (row.size() != cols) throw StatError("chisq_independence: ragged table");
  }

  std::vector<double> rsum(rows, 0.0), csum(cols, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      rsum[i] += static_cast<double>(joint[i][j]);
      csum[j] += static_cast<double>(joint[i][j]);
      total += static_cast<double>(joint[i][j]);
    }
  }
  for (double s : rsum) {
    if (s == 0.0) throw StatError("chisq_independence: zero row margin");
  }
  for (double s : csum) {
    if (s == 0.0) throw StatError("chisq_independence: zero column margin");
  }

  TestResult r;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      double expect = rsum[i] * csum[j] / total;
      double d = static_cast<double>(joint[i][j]) - expect;
      r.stat += d * d / expect;
    }
  }
  r.dof = static_cast<int>((rows - 1) * (cols - 1));
  r.pvalue = chi_square_tail(r.stat, r.dof);
  return r;
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw StatError("tv_distance: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::fabs(p[i] - q[i]);
  return 0.5 * s;
}

}  // namespace rwre::stats
