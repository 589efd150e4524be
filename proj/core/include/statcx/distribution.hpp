#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace statcx {

/// A point on the probability simplex of dimension N >= 2.
///
/// Construction validates that every entry lies in [0, 1] and that the
/// entries sum to one within kSimplexTolerance. Exact zeros are allowed;
/// every functional in this library uses the 0 * log 0 = 0 convention.
/// Instances are immutable.
class DiscreteDistribution {
 public:
  static constexpr double kSimplexTolerance = 1e-9;

  explicit DiscreteDistribution(std::vector<double> probs);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const noexcept { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }

  auto begin() const noexcept { return probs_.cbegin(); }
  auto end() const noexcept { return probs_.cend(); }

  friend bool operator==(const DiscreteDistribution&, const DiscreteDistribution&) = default;

 private:
  std::vector<double> probs_;
};

/// Parameterization of the two-level spike family: K = omega * N entries of
/// (1 - p_max) / K followed by N - K entries of p_max / (N - K).
///
/// Integer mode fixes K and derives omega = K / N; continuous mode takes
/// omega directly and need not correspond to a realizable distribution.
class FamilyPoint {
 public:
  static FamilyPoint integer(std::size_t n, std::size_t k, double p_max);
  static FamilyPoint continuous(std::size_t n, double omega, double p_max);

  std::size_t n() const noexcept { return n_; }
  double omega() const noexcept { return omega_; }
  double p_max() const noexcept { return p_max_; }
  std::optional<std::size_t> k() const noexcept { return k_; }
  bool is_integer() const noexcept { return k_.has_value(); }

  /// The point with the two groups swapped, (1 - omega, 1 - p_max). It
  /// describes the same multiset of probabilities.
  FamilyPoint mirrored() const;

 private:
  FamilyPoint(std::size_t n, double omega, double p_max, std::optional<std::size_t> k)
      : n_(n), omega_(omega), p_max_(p_max), k_(k) {}

  std::size_t n_;
  double omega_;
  double p_max_;
  std::optional<std::size_t> k_;
};

DiscreteDistribution uniform(std::size_t n);

/// Materializes an integer-mode family point; low group first.
DiscreteDistribution spike_family(const FamilyPoint& point);

/// Divides nonnegative weights by their sum.
DiscreteDistribution normalize(std::span<const double> raw);

/// Single-column CSV with header `p`.
void write_csv(std::ostream& out, const DiscreteDistribution& p);
DiscreteDistribution read_csv(std::istream& in);

}  // namespace statcx
