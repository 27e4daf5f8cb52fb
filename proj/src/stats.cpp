#include "formicode/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace formicode {

BigInt factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of negative number");
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt c = 1;
  for (int i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;  // exact at every step: c is C(n-k+i, i)
  }
  return c;
}

namespace {

void check_binomial_args(int n, int k, double p) {
  if (n < 0 || k < 0 || k > n) {
    throw std::invalid_argument("need 0 <= k <= n for a binomial tail");
  }
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::invalid_argument("need 0 < p < 1 for a binomial tail");
  }
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

BigRational rational_pow(const BigRational& base, int exponent) {
  using boost::multiprecision::pow;
  return BigRational(pow(numerator(base), static_cast<unsigned>(exponent)),
                     pow(denominator(base), static_cast<unsigned>(exponent)));
}

}  // namespace

BigRational binomial_tail_exact(int n, int k, const BigRational& p) {
  if (n < 0 || k < 0 || k > n) {
    throw std::invalid_argument("need 0 <= k <= n for a binomial tail");
  }
  if (!(p > 0) || !(p < 1)) {
    throw std::invalid_argument("need 0 < p < 1 for a binomial tail");
  }
  const BigRational q = BigRational(1) - p;
  BigRational tail = 0;
  for (int i = k; i <= n; ++i) {
    BigRational term(binomial_coefficient(n, i));
    term *= rational_pow(p, i);
    term *= rational_pow(q, n - i);
    tail += term;
  }
  return tail;
}

double binomial_tail_log(int n, int k, double p) {
  check_binomial_args(n, k, p);
  if (k == 0) return 1.0;

  const long double log_p = std::log(static_cast<long double>(p));
  const long double log_q = std::log(1.0L - static_cast<long double>(p));
  auto log_term = [&](int i) {
    return std::lgamma(n + 1.0L) - std::lgamma(i + 1.0L) -
           std::lgamma(n - i + 1.0L) + i * log_p + (n - i) * log_q;
  };

  long double max_log = log_term(k);
  for (int i = k + 1; i <= n; ++i) max_log = std::max(max_log, log_term(i));

  long double sum = 0.0L;
  for (int i = k; i <= n; ++i) sum += std::exp(log_term(i) - max_log);
  return static_cast<double>(std::exp(max_log) * sum);
}

double binomial_tail(int n, int k, double p) {
  check_binomial_args(n, k, p);
  // Exact rationals stay cheap up to a few dozen trials; beyond that the
  // log-space path (validated against the exact one in tests) takes over.
  if (n <= 30) {
    return to_double(binomial_tail_exact(n, k, BigRational(p)));
  }
  return binomial_tail_log(n, k, p);
}

BigRational permutation_order_test(const std::vector<int>& group_sizes) {
  if (group_sizes.empty()) {
    throw std::invalid_argument("need at least one group");
  }
  int total = 0;
  BigInt within_group_orders = 1;
  for (int size : group_sizes) {
    if (size < 1) throw std::invalid_argument("group sizes must be >= 1");
    total += size;
    within_group_orders *= factorial(size);
  }
  return BigRational(within_group_orders, factorial(total));
}

namespace {

// Midranks of the pooled sample, in pooled order; doubled so ties stay
// integral. Also accumulates sum(t^3 - t) over tie groups.
struct PooledRanks {
  std::vector<std::int64_t> doubled_ranks;
  double tie_correction = 0.0;
  bool all_tied = false;
};

PooledRanks pooled_midranks(std::span<const double> first,
                            std::span<const double> second) {
  const std::size_t n = first.size() + second.size();
  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(n);
  for (std::size_t i = 0; i < first.size(); ++i) order.emplace_back(first[i], i);
  for (std::size_t i = 0; i < second.size(); ++i) {
    order.emplace_back(second[i], first.size() + i);
  }
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  PooledRanks out;
  out.doubled_ranks.assign(n, 0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && order[j].first == order[i].first) ++j;
    // positions i..j-1 tie; midrank = (i+1 + j) / 2, doubled = i + j + 1
    const std::int64_t doubled = static_cast<std::int64_t>(i + j + 1);
    for (std::size_t k = i; k < j; ++k) {
      out.doubled_ranks[order[k].second] = doubled;
    }
    const double t = static_cast<double>(j - i);
    out.tie_correction += t * t * t - t;
    i = j;
  }
  out.all_tied = !order.empty() && order.front().first == order.back().first;
  return out;
}

// Number of n1-subsets of `doubled_ranks` whose doubled rank sum is <= bound,
// by dynamic programming over items. Counts fit in 64 bits for N <= 24.
std::uint64_t count_subsets_with_sum_le(
    const std::vector<std::int64_t>& doubled_ranks, std::size_t n1,
    std::int64_t bound) {
  std::int64_t max_sum = 0;
  for (auto r : doubled_ranks) max_sum += r;
  if (bound < 0) return 0;
  bound = std::min(bound, max_sum);

  const auto sum_index = static_cast<std::size_t>(max_sum);
  std::vector<std::vector<std::uint64_t>> ways(
      n1 + 1, std::vector<std::uint64_t>(sum_index + 1, 0));
  ways[0][0] = 1;
  for (auto rank : doubled_ranks) {
    for (std::size_t j = n1; j >= 1; --j) {
      for (std::int64_t s = max_sum; s >= rank; --s) {
        const auto si = static_cast<std::size_t>(s);
        if (ways[j - 1][si - static_cast<std::size_t>(rank)] != 0) {
          ways[j][si] += ways[j - 1][si - static_cast<std::size_t>(rank)];
        }
      }
    }
  }
  std::uint64_t count = 0;
  for (std::int64_t s = 0; s <= bound; ++s) {
    count += ways[n1][static_cast<std::size_t>(s)];
  }
  return count;
}

}  // namespace

TestResult rank_sum_test(std::span<const double> first,
                         std::span<const double> second,
                         Alternative alternative) {
  if (first.empty() || second.empty()) {
    throw std::invalid_argument("rank-sum test needs two nonempty samples");
  }
  const std::size_t n1 = first.size();
  const std::size_t n2 = second.size();
  const std::size_t n = n1 + n2;

  const PooledRanks ranks = pooled_midranks(first, second);

  std::int64_t doubled_w = 0;  // doubled rank sum of the first sample
  for (std::size_t i = 0; i < n1; ++i) doubled_w += ranks.doubled_ranks[i];

  TestResult result;
  result.statistic = static_cast<double>(doubled_w) / 2.0;

  if (ranks.all_tied) {
    result.method = "rank-sum (degenerate: all values tied)";
    result.p_value = 1.0;
    result.exact = true;
    result.degenerate = true;
    return result;
  }

  if (n <= 24) {
    const BigInt total = binomial_coefficient(static_cast<int>(n),
                                              static_cast<int>(n1));
    const std::uint64_t le =
        count_subsets_with_sum_le(ranks.doubled_ranks, n1, doubled_w);
    const std::uint64_t lt =
        count_subsets_with_sum_le(ranks.doubled_ranks, n1, doubled_w - 1);
    const BigRational p_less(BigInt(le), total);
    const BigRational p_greater = BigRational(1) - BigRational(BigInt(lt), total);
    result.exact = true;
    result.method = "rank-sum (exact enumeration)";
    switch (alternative) {
      case Alternative::first_less:
        result.p_value = to_double(p_less);
        break;
      case Alternative::first_greater:
        result.p_value = to_double(p_greater);
        break;
      case Alternative::two_sided:
        result.p_value =
            std::min(1.0, 2.0 * std::min(to_double(p_less), to_double(p_greater)));
        break;
    }
    return result;
  }

  // Normal approximation with tie correction and continuity correction.
  const double w = result.statistic;
  const double dn1 = static_cast<double>(n1);
  const double dn2 = static_cast<double>(n2);
  const double dn = static_cast<double>(n);
  const double mean = dn1 * (dn + 1.0) / 2.0;
  const double variance =
      dn1 * dn2 / 12.0 * ((dn + 1.0) - ranks.tie_correction / (dn * (dn - 1.0)));
  const double sd = std::sqrt(variance);
  const double p_less = normal_cdf((w - mean + 0.5) / sd);
  const double p_greater = 1.0 - normal_cdf((w - mean - 0.5) / sd);
  result.exact = false;
  result.method = "rank-sum (normal approximation, tie-corrected)";
  switch (alternative) {
    case Alternative::first_less:
      result.p_value = p_less;
      break;
    case Alternative::first_greater:
      result.p_value = p_greater;
      break;
    case Alternative::two_sided:
      result.p_value = std::min(1.0, 2.0 * std::min(p_less, p_greater));
      break;
  }
  return result;
}

FitResult linear_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("x and y must have equal length");
  }
  const std::size_t n = xs.size();
  if (n < 2) throw std::invalid_argument("need at least 2 points to fit");

  const double mean_x = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double mean_y = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }

  if (sxx == 0.0) {
    throw std::invalid_argument("zero variance in x; nothing to regress on");
  }

  FitResult fit;
  fit.n = static_cast<int>(n);
  if (syy == 0.0) {
    fit.slope = 0.0;
    fit.intercept = mean_y;
    fit.r = 0.0;
    fit.degenerate = true;
    return fit;
  }
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  // Rounding can push a perfect correlation an ulp past 1.
  fit.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return fit;
}

double transmission_rate(std::span<const double> bits,
                         std::span<const double> seconds) {
  const FitResult fit = linear_fit(bits, seconds);
  if (!(fit.slope > 0.0)) {
    throw std::domain_error(
        "seconds-per-bit slope is not positive; rate undefined");
  }
  return 60.0 / fit.slope;
}

int distance_to_nearest_anchor(int index, const std::vector<int>& anchors) {
  if (anchors.empty()) throw std::invalid_argument("no anchors given");
  int best = std::abs(index - anchors.front());
  for (int anchor : anchors) best = std::min(best, std::abs(index - anchor));
  return best;
}

FitResult anchor_distance_correlation(std::span<const BranchTime> records,
                                      const std::vector<int>& anchors,
                                      int exclude_below) {
  std::vector<double> distances;
  std::vector<double> times;
  for (const BranchTime& record : records) {
    if (record.branch <= exclude_below) continue;
    distances.push_back(distance_to_nearest_anchor(record.branch, anchors));
    times.push_back(record.seconds);
  }
  if (distances.size() < 3) {
    throw std::invalid_argument(
        "need at least 3 records beyond the excluded branches");
  }

  // The regressor is computed, so zero variance is a degenerate result here,
  // not a caller error.
  bool all_same = std::all_of(distances.begin(), distances.end(),
                              [&](double d) { return d == distances.front(); });
  if (all_same) {
    FitResult fit;
    fit.n = static_cast<int>(distances.size());
    fit.intercept =
        std::accumulate(times.begin(), times.end(), 0.0) / times.size();
    fit.degenerate = true;
    return fit;
  }
  return linear_fit(distances, times);
}

}  // namespace formicode
