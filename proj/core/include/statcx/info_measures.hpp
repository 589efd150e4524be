#pragma once

#include <functional>
#include <string>

#include "statcx/distribution.hpp"

namespace statcx {

enum class LogUnit { kBits, kNats };

/// Shannon entropy divided by log N; lies in [0, 1].
double entropy_normalized(const DiscreteDistribution& p);

/// Squared Euclidean distance to the uniform distribution,
/// sum (p_i - 1/N)^2 = sum p_i^2 - 1/N.
double disequilibrium_sq(const DiscreteDistribution& p);

/// Jensen-Shannon divergence through the mixture m = (p + q) / 2:
/// H*(m) - (H*(p) + H*(q)) / 2 with unnormalized entropies H*.
/// Bits keep the value in [0, 1]; nats put it in [0, ln 2].
double jsd(const DiscreteDistribution& p, const DiscreteDistribution& q,
           LogUnit unit = LogUnit::kBits);

/// Half the L1 distance.
double total_variation(const DiscreteDistribution& p, const DiscreteDistribution& q);

/// sum p_i log(p_i / q_i); +infinity when p is not absolutely continuous
/// with respect to q.
double kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q,
                     LogUnit unit = LogUnit::kBits);

/// A convex generator f with f(1) = 0 and a label.
struct FDivergenceSpec {
  std::function<double(double)> f;
  std::string name;

  /// Throws kRange when |f(1)| > 1e-12.
  void validate() const;
};

FDivergenceSpec total_variation_generator();
FDivergenceSpec kl_generator(LogUnit unit = LogUnit::kBits);
FDivergenceSpec jsd_generator(LogUnit unit = LogUnit::kBits);

/// sum q_i f(p_i / q_i). q must be strictly positive.
double f_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q,
                    const FDivergenceSpec& spec);

/// Minimal total error of distinguishing two hypotheses, 1 - TV(p, q).
double error_function(const DiscreteDistribution& p, const DiscreteDistribution& q);

}  // namespace statcx
