#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace teamdiv {

// Identifier recorded next to generated data. The engine is std::mt19937_64,
// whose output sequence is fixed by the C++ standard; every distribution
// below is implemented here rather than taken from <random>, whose
// algorithms vary between standard libraries.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64+teamdiv-dist-v1";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // 53-bit uniform in [0, 1).
  double uniform();
  // Uniform integer in [0, n); rejection sampling, n > 0.
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p) { return uniform() < p; }
  // Marsaglia polar method.
  double normal();
  // Marsaglia-Tsang; shape < 1 handled with the U^(1/shape) boost.
  double gamma(double shape, double scale);
  // Knuth multiplication, applied in slices of mean <= 16.
  std::uint64_t poisson(double mean);
  // Gamma-Poisson mixture with the given mean and dispersion (1/size);
  // variance = mean + dispersion * mean^2.
  std::uint64_t negative_binomial(double mean, double dispersion);
  // Index drawn proportionally to nonnegative weights (not all zero).
  std::size_t discrete(std::span<const double> weights);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[static_cast<std::size_t>(below(i))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace teamdiv
