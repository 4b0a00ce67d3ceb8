#include "teamdiv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "teamdiv/special_functions.hpp"

namespace teamdiv {

double median(std::span<const double> values, MedianMode mode) {
  if (values.empty()) throw std::invalid_argument("median of an empty list");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  const double lo = sorted[n / 2 - 1];
  if (mode == MedianMode::kLowerMiddle) return lo;
  return lo + (sorted[n / 2] - lo) / 2.0;
}

OneZeroCount one_zero_counts(std::span<const double> max_distances, double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  OneZeroCount out;
  for (double d : max_distances) {
    if (d <= epsilon) ++out.zeros;
    if (d >= 1.0 - epsilon) ++out.ones;
  }
  if (out.zeros > 0) {
    out.ratio = static_cast<double>(out.ones) / static_cast<double>(out.zeros);
  }
  return out;
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("pearson: need at least 3 observations");

  const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw std::invalid_argument("pearson: zero variance");

  CorrelationResult out;
  out.n = n;
  out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(n - 2);
  const double one_minus_r2 = 1.0 - out.r * out.r;
  if (one_minus_r2 <= 0.0) {
    out.p_value = 0.0;
  } else {
    const double t = out.r * std::sqrt(df) / std::sqrt(one_minus_r2);
    out.p_value = student_t_two_sided_p(t, df);
  }
  return out;
}

ChiSquareResult chi_square_homogeneity(std::span<const std::int64_t> counts_a,
                                       std::span<const std::int64_t> counts_b) {
  if (counts_a.size() != counts_b.size()) {
    throw std::invalid_argument("chi-square: rows differ in length");
  }
  std::int64_t total_a = 0, total_b = 0;
  for (std::size_t i = 0; i < counts_a.size(); ++i) {
    if (counts_a[i] < 0 || counts_b[i] < 0) {
      throw std::invalid_argument("chi-square: negative count");
    }
    total_a += counts_a[i];
    total_b += counts_b[i];
  }
  if (total_a == 0 || total_b == 0) throw std::invalid_argument("chi-square: all-zero row");

  const double n = static_cast<double>(total_a + total_b);
  double statistic = 0.0;
  int kept = 0;
  for (std::size_t i = 0; i < counts_a.size(); ++i) {
    const std::int64_t column = counts_a[i] + counts_b[i];
    if (column == 0) continue;
    ++kept;
    const double expected_a = static_cast<double>(total_a) * static_cast<double>(column) / n;
    const double expected_b = static_cast<double>(total_b) * static_cast<double>(column) / n;
    const double da = static_cast<double>(counts_a[i]) - expected_a;
    const double db = static_cast<double>(counts_b[i]) - expected_b;
    statistic += da * da / expected_a + db * db / expected_b;
  }
  if (kept < 2) throw std::invalid_argument("chi-square: fewer than two nonempty categories");

  ChiSquareResult out;
  out.statistic = statistic;
  out.df = kept - 1;
  out.p_value = chi_square_upper_p(statistic, out.df);
  return out;
}

ChiSquareResult chi_square_goodness_of_fit(std::span<const std::int64_t> observed,
                                           std::span<const double> probabilities) {
  if (observed.size() != probabilities.size()) {
    throw std::invalid_argument("goodness of fit: length mismatch");
  }
  if (observed.size() < 2) throw std::invalid_argument("goodness of fit: need 2 categories");
  const double psum = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  if (std::fabs(psum - 1.0) > 1e-9) {
    throw std::invalid_argument("goodness of fit: probabilities must sum to 1");
  }
  const double n =
      static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::int64_t{0}));
  if (n <= 0.0) throw std::invalid_argument("goodness of fit: no observations");
  double statistic = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(probabilities[i] > 0.0)) {
      throw std::invalid_argument("goodness of fit: probabilities must be positive");
    }
    const double expected = n * probabilities[i];
    const double d = static_cast<double>(observed[i]) - expected;
    statistic += d * d / expected;
  }
  ChiSquareResult out;
  out.statistic = statistic;
  out.df = static_cast<int>(observed.size()) - 1;
  out.p_value = chi_square_upper_p(statistic, out.df);
  return out;
}

std::vector<std::int64_t> pool_counts(std::span<const std::vector<std::int64_t>> rows,
                                      std::size_t arity) {
  std::vector<std::int64_t> out(arity, 0);
  for (const auto& row : rows) {
    if (row.size() != arity) throw std::invalid_argument("pool_counts: row length mismatch");
    for (std::size_t i = 0; i < arity; ++i) out[i] += row[i];
  }
  return out;
}

}  // namespace teamdiv
