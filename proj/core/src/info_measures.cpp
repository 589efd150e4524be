#include "statcx/info_measures.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "statcx/error.hpp"
#include "summation.hpp"

namespace statcx {
namespace {

void require_same_size(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(p.size()) + " vs " + std::to_string(q.size()));
  }
}

double unit_scale(LogUnit unit) { return unit == LogUnit::kBits ? 1.0 / std::numbers::ln2 : 1.0; }

}  // namespace

double entropy_normalized(const DiscreteDistribution& p) {
  detail::CompensatedSum acc;
  for (double x : p) acc += detail::xlogx(x);
  const double h = -acc.value() / std::log(static_cast<double>(p.size()));
  return std::clamp(h, 0.0, 1.0);
}

double disequilibrium_sq(const DiscreteDistribution& p) {
  const double u = 1.0 / static_cast<double>(p.size());
  detail::CompensatedSum acc;
  for (double x : p) {
    const double d = x - u;
    acc += d * d;
  }
  return acc.value();
}

double jsd(const DiscreteDistribution& p, const DiscreteDistribution& q, LogUnit unit) {
  require_same_size(p, q);
  // H*(m) - (H*(p) + H*(q)) / 2 collected termwise so cancellation happens per bin.
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    acc += 0.5 * (detail::xlogx(p[i]) + detail::xlogx(q[i])) - detail::xlogx(m);
  }
  return std::max(0.0, acc.value() * unit_scale(unit));
}

double total_variation(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  require_same_size(p, q);
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::fabs(p[i] - q[i]);
  return 0.5 * acc.value();
}

double kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q, LogUnit unit) {
  require_same_size(p, q);
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
    acc += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(0.0, acc.value() * unit_scale(unit));
}

void FDivergenceSpec::validate() const {
  if (!f) throw Error(ErrorCode::kRange, "f-divergence '" + name + "' has no generator");
  const double at_one = f(1.0);
  if (!(std::fabs(at_one) <= 1e-12)) {
    throw Error(ErrorCode::kRange, "generator '" + name + "' has f(1) != 0");
  }
}

FDivergenceSpec total_variation_generator() {
  return {[](double x) { return 0.5 * std::fabs(1.0 - x); }, "tv"};
}

FDivergenceSpec kl_generator(LogUnit unit) {
  const double s = unit_scale(unit);
  return {[s](double x) { return detail::xlogx(x) * s; }, "kl"};
}

FDivergenceSpec jsd_generator(LogUnit unit) {
  // Halved relative to the textbook generator so that D_f equals the
  // mixture form returned by jsd().
  const double s = unit_scale(unit);
  return {[s](double x) {
            const double a = x > 0.0 ? x * std::log(2.0 * x / (x + 1.0)) : 0.0;
            return 0.5 * s * (a + std::log(2.0 / (x + 1.0)));
          },
          "jsd"};
}

double f_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q,
                    const FDivergenceSpec& spec) {
  require_same_size(p, q);
  spec.validate();
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] <= 0.0) {
      throw Error(ErrorCode::kSupport, "generic f-divergence needs q_i > 0 (index " +
                                           std::to_string(i) + ")");
    }
    acc += q[i] * spec.f(p[i] / q[i]);
  }
  return acc.value();
}

double error_function(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  return 1.0 - total_variation(p, q);
}

}  // namespace statcx
