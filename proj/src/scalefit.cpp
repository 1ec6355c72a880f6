#include "softspace/scalefit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

#include <boost/math/tools/minima.hpp>

#include "json.hpp"
#include "softspace/delimited.hpp"
#include "softspace/error.hpp"
#include "softspace/rng.hpp"

namespace softspace {

double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0)) throw ArgumentError("hurwitz_zeta requires s > 1");
  if (!(q > 0.0)) throw ArgumentError("hurwitz_zeta requires q > 0");
  // B_2j / (2j)! for j = 1..6
  static constexpr double kBernoulli[] = {1.0 / 12.0,         -1.0 / 720.0,          1.0 / 30240.0,
                                          -1.0 / 1209600.0,   1.0 / 47900160.0,      -691.0 / 1307674368000.0};
  double sum = 0.0;
  double a = q;
  while (a < 10.0) {
    sum += std::pow(a, -s);
    a += 1.0;
  }
  const double a_pow = std::pow(a, -s);
  sum += a * a_pow / (s - 1.0) + 0.5 * a_pow;
  // Term j: B_2j/(2j)! * s(s+1)...(s+2j-2) * a^(-s-2j+1)
  double rising = s;
  double power = a_pow / a;
  for (int j = 0; j < 6; ++j) {
    sum += kBernoulli[j] * rising * power;
    rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    power /= a * a;
  }
  return sum;
}

ValueCounts ValueCounts::from(std::span<const std::int64_t> data) {
  std::map<std::int64_t, std::int64_t> m;
  for (auto x : data) {
    if (x < 1) throw ArgumentError("power-law data must be positive integers");
    ++m[x];
  }
  ValueCounts vc;
  for (const auto& [v, c] : m) {
    vc.values.push_back(v);
    vc.counts.push_back(c);
    vc.total += c;
  }
  return vc;
}

ValueCounts ValueCounts::tail(std::int64_t x_min) const {
  ValueCounts t;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < x_min) continue;
    t.values.push_back(values[i]);
    t.counts.push_back(counts[i]);
    t.total += counts[i];
  }
  return t;
}

namespace {

constexpr double kAlphaLow = 1.0 + 1e-9;
constexpr double kAlphaHigh = 6.0;

double log_sum(const ValueCounts& tail) {
  double s = 0.0;
  for (std::size_t i = 0; i < tail.values.size(); ++i)
    s += static_cast<double>(tail.counts[i]) * std::log(static_cast<double>(tail.values[i]));
  return s;
}

double likelihood_from_sum(double alpha, std::int64_t n, double sum_log, std::int64_t x_min) {
  return -static_cast<double>(n) * std::log(hurwitz_zeta(alpha, static_cast<double>(x_min))) - alpha * sum_log;
}

double mle_alpha(const ValueCounts& tail, std::int64_t x_min) {
  const double sum_log = log_sum(tail);
  auto neg = [&](double a) { return -likelihood_from_sum(a, tail.total, sum_log, x_min); };
  // 24 bits: the bracket shrinks below ~1e-7.
  auto [alpha, value] = boost::math::tools::brent_find_minima(neg, kAlphaLow, kAlphaHigh, 24);
  return alpha;
}

double ks_on_tail(const ValueCounts& tail, double alpha, std::int64_t x_min) {
  const double z = hurwitz_zeta(alpha, static_cast<double>(x_min));
  const double n = static_cast<double>(tail.total);
  double d = 0.0;
  std::int64_t below = 0;  // observations strictly smaller than the current value
  for (std::size_t i = 0; i < tail.values.size(); ++i) {
    const std::int64_t v = tail.values[i];
    const double zv = hurwitz_zeta(alpha, static_cast<double>(v));
    // Just before v the empirical CDF is below/n; the model CDF at v-1 is 1 - zeta(v)/z.
    if (v > x_min) d = std::max(d, std::abs(static_cast<double>(below) / n - (1.0 - zv / z)));
    below += tail.counts[i];
    const double fitted = 1.0 - hurwitz_zeta(alpha, static_cast<double>(v) + 1.0) / z;
    d = std::max(d, std::abs(static_cast<double>(below) / n - fitted));
  }
  return std::min(d, 1.0);
}

PowerLawFit fit_fixed(const ValueCounts& all, std::int64_t x_min) {
  const ValueCounts tail = all.tail(x_min);
  if (tail.total < 2) throw ArgumentError("power-law fit needs at least 2 observations >= x_min");
  if (tail.values.size() < 2) throw FitError("power-law tail holds a single distinct value");
  PowerLawFit fit;
  fit.x_min = x_min;
  fit.n_tail = static_cast<std::size_t>(tail.total);
  fit.alpha = mle_alpha(tail, x_min);
  fit.log_likelihood = power_law_log_likelihood(tail, fit.alpha, x_min);
  fit.ks_distance = ks_on_tail(tail, fit.alpha, x_min);
  return fit;
}

}  // namespace

double power_law_log_likelihood(const ValueCounts& data, double alpha, std::int64_t x_min) {
  const ValueCounts tail = data.tail(x_min);
  return likelihood_from_sum(alpha, tail.total, log_sum(tail), x_min);
}

double power_law_ks_distance(const ValueCounts& data, double alpha, std::int64_t x_min) {
  return ks_on_tail(data.tail(x_min), alpha, x_min);
}

PowerLawFit fit_power_law(std::span<const std::int64_t> totals, std::optional<std::int64_t> x_min) {
  const ValueCounts all = ValueCounts::from(totals);
  if (x_min) {
    if (*x_min < 1) throw ArgumentError("x_min must be >= 1");
    return fit_fixed(all, *x_min);
  }
  std::optional<PowerLawFit> best;
  std::int64_t remaining = all.total;
  for (std::size_t i = 0; i < all.values.size(); ++i) {
    // Candidate cutoff values[i]: tail needs two points and two distinct values.
    if (remaining >= 2 && i + 1 < all.values.size()) {
      PowerLawFit f = fit_fixed(all, all.values[i]);
      if (!best || f.ks_distance < best->ks_distance) best = f;
    }
    remaining -= all.counts[i];
  }
  if (!best) {
    if (all.total < 2) throw ArgumentError("power-law fit needs at least 2 observations");
    throw FitError("power-law fit needs at least two distinct values");
  }
  return *best;
}

std::int64_t sample_power_law(Rng& rng, double alpha, std::int64_t x_min) {
  if (!(alpha > 1.0)) throw ArgumentError("alpha must be > 1");
  if (x_min < 1) throw ArgumentError("x_min must be >= 1");
  const double u = rng.uniform_open0();
  const double z = hurwitz_zeta(alpha, static_cast<double>(x_min));
  // Largest x with P(X >= x) = zeta(alpha, x) / z >= u.
  auto survival = [&](std::int64_t x) { return hurwitz_zeta(alpha, static_cast<double>(x)) / z; };
  constexpr std::int64_t kCap = std::int64_t{1} << 60;
  std::int64_t lo = x_min, hi = x_min + 1;
  while (hi < kCap && survival(hi) >= u) {
    lo = hi;
    hi = x_min + 2 * (hi - x_min);
  }
  if (hi >= kCap) return lo;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (survival(mid) >= u) lo = mid;
    else hi = mid;
  }
  return lo;
}

GofBootstrap bootstrap_gof(std::span<const std::int64_t> totals, const PowerLawFit& fit, std::size_t replicates,
                           std::uint64_t seed) {
  std::vector<std::int64_t> body;
  for (auto x : totals)
    if (x < fit.x_min) body.push_back(x);
  const std::size_t n = totals.size();
  const double p_tail = static_cast<double>(fit.n_tail) / static_cast<double>(n);
  Rng rng(seed);
  std::size_t exceed = 0, done = 0;
  for (std::size_t rep = 0; rep < replicates; ++rep) {
    std::vector<std::int64_t> synthetic;
    synthetic.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (body.empty() || rng.bernoulli(p_tail)) synthetic.push_back(sample_power_law(rng, fit.alpha, fit.x_min));
      else synthetic.push_back(body[rng.below(body.size())]);
    }
    try {
      if (fit_power_law(synthetic).ks_distance >= fit.ks_distance) ++exceed;
      ++done;
    } catch (const Error&) {
      // Degenerate replicate; skip.
    }
  }
  return {done ? static_cast<double>(exceed) / static_cast<double>(done) : 0.0, done};
}

std::vector<CcdfPoint> binned_ccdf(std::span<const std::int64_t> totals, const PowerLawFit& fit) {
  const ValueCounts all = ValueCounts::from(totals);
  std::vector<CcdfPoint> out;
  if (all.total == 0) return out;
  const double n = static_cast<double>(all.total);
  const double z = hurwitz_zeta(fit.alpha, static_cast<double>(fit.x_min));
  const std::int64_t max_x = all.values.back();
  std::int64_t last = 0;
  for (int k = 0;; ++k) {
    const auto x = static_cast<std::int64_t>(std::llround(std::pow(10.0, k / 20.0)));
    if (x > max_x) break;
    if (x == last) continue;
    last = x;
    std::int64_t at_least = 0;
    for (std::size_t i = 0; i < all.values.size(); ++i)
      if (all.values[i] >= x) at_least += all.counts[i];
    CcdfPoint p{x, static_cast<double>(at_least) / n, std::nullopt};
    if (x >= fit.x_min)
      p.fitted = static_cast<double>(fit.n_tail) / n * hurwitz_zeta(fit.alpha, static_cast<double>(x)) / z;
    out.push_back(p);
  }
  return out;
}

std::string power_law_json(const PowerLawFit& fit, std::size_t n_observations, const std::optional<GofBootstrap>& gof) {
  nlohmann::ordered_json j;
  j["alpha"] = fit.alpha;
  j["x_min"] = fit.x_min;
  j["n_tail"] = fit.n_tail;
  j["ks_distance"] = fit.ks_distance;
  j["log_likelihood"] = fit.log_likelihood;
  j["n_observations"] = n_observations;
  j["likelihood"] = "discrete (Hurwitz zeta normalized)";
  if (gof) j["gof_bootstrap"] = {{"p_value", gof->p_value}, {"replicates", gof->replicates}};
  return j.dump(1);
}

void write_ccdf(std::ostream& out, const std::vector<CcdfPoint>& points) {
  io::write_row(out, {"x", "empirical_ccdf", "fitted_ccdf"});
  for (const auto& p : points)
    io::write_row(out, {std::to_string(p.x), io::format_double(p.empirical), p.fitted ? io::format_double(*p.fitted) : "NA"});
}

}  // namespace softspace
