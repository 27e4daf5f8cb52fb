#pragma once

#include <span>
#include <string>
#include <vector>

#include "formicode/exact.hpp"

namespace formicode {

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r = 0.0;  // Pearson correlation
  int n = 0;
  bool degenerate = false;  // response (or computed regressor) had zero variance
};

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::string method;
  bool exact = false;
  bool degenerate = false;
};

enum class Alternative { first_less, first_greater, two_sided };

// P(X >= k) for X ~ Binomial(n, p). Exact rational arithmetic for n <= 30,
// log-space otherwise.
double binomial_tail(int n, int k, double p);

// Log-space evaluation regardless of n (log-sum-exp over lgamma terms).
double binomial_tail_log(int n, int k, double p);

// Exact rational tail for any n; the value every other path must agree with.
BigRational binomial_tail_exact(int n, int k, const BigRational& p);

// Probability that a uniformly random total order of sum(sizes) items lists
// the groups in one prescribed order: prod(sizes_j!) / n!, exact.
BigRational permutation_order_test(const std::vector<int>& group_sizes);

// Two-sample Wilcoxon rank-sum (Mann-Whitney) test. Midranks for ties.
// Exact enumeration of the rank-sum null distribution when the combined
// sample size is <= 24, normal approximation with tie correction above.
// The default alternative is "first sample stochastically smaller"; pass the
// sample hypothesized smaller (e.g. informed search times) first.
// Identical values across both samples give p = 1 with the degenerate flag.
TestResult rank_sum_test(std::span<const double> first,
                         std::span<const double> second,
                         Alternative alternative = Alternative::first_less);

// Ordinary least squares of ys on xs with Pearson correlation. Zero variance
// in xs is an error; zero variance in ys yields slope 0, r 0, degenerate.
FitResult linear_fit(std::span<const double> xs, std::span<const double> ys);

// Fits seconds = a * bits + b and returns 60 / a in bits per minute.
// A nonpositive slope is a non-physical rate and throws std::domain_error.
double transmission_rate(std::span<const double> bits,
                         std::span<const double> seconds);

int distance_to_nearest_anchor(int index, const std::vector<int>& anchors);

struct BranchTime {
  int branch;
  double seconds;
};

// Pearson correlation (via linear_fit) between contact time and distance to
// the nearest anchor, excluding branches <= exclude_below near the trunk
// entrance. Zero variance on either side is reported via the degenerate
// flag rather than thrown, since the regressor is computed, not user input.
FitResult anchor_distance_correlation(std::span<const BranchTime> records,
                                      const std::vector<int>& anchors,
                                      int exclude_below = 4);

// Published reference transmission rates, kept for report output.
struct SpeciesRate {
  const char* species;
  double bits_per_minute;
};

inline constexpr SpeciesRate kReferenceRates[] = {
    {"Formica sanguinea", 0.738},
    {"Formica polyctena", 1.094},
};

}  // namespace formicode
