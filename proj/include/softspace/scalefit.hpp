#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace softspace {

class Rng;

// Hurwitz zeta(s, q) = sum_{k>=0} (k + q)^-s for s > 1, q > 0. Direct
// summation up to q + k >= 10, then Euler-Maclaurin with six Bernoulli
// corrections (relative error well below 1e-10).
double hurwitz_zeta(double s, double q);

struct PowerLawFit {
  double alpha = 0.0;
  std::int64_t x_min = 1;
  std::size_t n_tail = 0;
  double ks_distance = 0.0;
  double log_likelihood = 0.0;
};

// Distinct values with multiplicities, ascending.
struct ValueCounts {
  std::vector<std::int64_t> values;
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;

  static ValueCounts from(std::span<const std::int64_t> data);
  ValueCounts tail(std::int64_t x_min) const;
};

// Discrete power-law log-likelihood of the observations >= x_min:
// -n ln zeta(alpha, x_min) - alpha sum ln x.
double power_law_log_likelihood(const ValueCounts& data, double alpha, std::int64_t x_min);

// Sup over integers x >= x_min of |F_empirical(x) - F_fitted(x)| on the tail.
double power_law_ks_distance(const ValueCounts& data, double alpha, std::int64_t x_min);

// Maximum-likelihood discrete power law. With x_min fixed, alpha maximizes the
// log-likelihood over (1, 6] to 1e-6; without it, every observed value is a
// candidate cutoff and the one minimizing the KS distance wins.
// Throws ArgumentError with fewer than 2 tail points, FitError when the tail
// holds a single distinct value.
PowerLawFit fit_power_law(std::span<const std::int64_t> totals, std::optional<std::int64_t> x_min = std::nullopt);

// Inverse-CDF draw from the discrete power law with the given cutoff.
std::int64_t sample_power_law(Rng& rng, double alpha, std::int64_t x_min);

struct GofBootstrap {
  double p_value = 0.0;
  std::size_t replicates = 0;
};

// Semi-parametric bootstrap goodness-of-fit p-value: the share of synthetic
// data sets whose refitted KS distance is at least the observed one.
GofBootstrap bootstrap_gof(std::span<const std::int64_t> totals, const PowerLawFit& fit, std::size_t replicates,
                           std::uint64_t seed);

struct CcdfPoint {
  std::int64_t x = 0;
  double empirical = 0.0;              // P(X >= x) over all observations
  std::optional<double> fitted;        // tail model scaled by n_tail / n, for x >= x_min
};

// CCDF evaluated on logarithmically spaced integers (20 per decade).
std::vector<CcdfPoint> binned_ccdf(std::span<const std::int64_t> totals, const PowerLawFit& fit);

std::string power_law_json(const PowerLawFit& fit, std::size_t n_observations, const std::optional<GofBootstrap>& gof);
void write_ccdf(std::ostream& out, const std::vector<CcdfPoint>& points);

}  // namespace softspace
