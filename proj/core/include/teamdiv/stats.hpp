#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace teamdiv {

inline constexpr double kSignificanceLevel = 0.05;
inline constexpr double kDefaultZeroOneEpsilon = 1e-9;

inline bool is_significant(double p_value, double alpha = kSignificanceLevel) {
  return p_value < alpha;
}

enum class MedianMode {
  kMeanOfMiddle,  // average of the two middle values for even counts
  kLowerMiddle,   // lower of the two, keeps integer data integral
};

// Throws std::invalid_argument for an empty input.
double median(std::span<const double> values, MedianMode mode = MedianMode::kMeanOfMiddle);

struct OneZeroCount {
  std::size_t zeros = 0;
  std::size_t ones = 0;
  // ones / zeros; absent when zeros == 0.
  std::optional<double> ratio;
};

// zeros: d <= epsilon, ones: d >= 1 - epsilon.
OneZeroCount one_zero_counts(std::span<const double> max_distances,
                             double epsilon = kDefaultZeroOneEpsilon);

struct CorrelationResult {
  double r = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

// Sample Pearson r with a two-sided p-value from t = r sqrt(n-2)/sqrt(1-r^2)
// on n-2 degrees of freedom. Throws std::invalid_argument on length
// mismatch, n < 3 or a constant series.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

struct ChiSquareResult {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
};

// Homogeneity test on the 2 x m table formed by the two count rows, without
// continuity correction. Categories whose column total is zero are dropped.
// Throws std::invalid_argument for unequal lengths, an all-zero row or fewer
// than two usable categories.
ChiSquareResult chi_square_homogeneity(std::span<const std::int64_t> counts_a,
                                       std::span<const std::int64_t> counts_b);

// Goodness of fit of observed counts to category probabilities (which must
// sum to 1 within 1e-9). df = categories - 1.
ChiSquareResult chi_square_goodness_of_fit(std::span<const std::int64_t> observed,
                                           std::span<const double> probabilities);

// Elementwise sum; an empty list yields zeros of the given arity. Throws
// std::invalid_argument when a row's length differs from `arity`.
std::vector<std::int64_t> pool_counts(std::span<const std::vector<std::int64_t>> rows,
                                      std::size_t arity);

}  // namespace teamdiv
