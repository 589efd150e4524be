#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>

#include "statcx/distribution.hpp"

namespace statcx {

/// Which disequilibrium multiplies the normalized entropy.
enum class ComplexityKind { kSq, kJsd, kTv };

inline constexpr ComplexityKind kAllKinds[] = {ComplexityKind::kSq, ComplexityKind::kJsd,
                                               ComplexityKind::kTv};

std::string_view to_string(ComplexityKind kind) noexcept;
/// Accepts "sq", "jsd", "tv" in any case.
std::optional<ComplexityKind> parse_kind(std::string_view text) noexcept;

/// H(p) * D_SQ(p).
double c_sq(const DiscreteDistribution& p);

/// H(p) * JSD(p || uniform) with the divergence in bits.
double c_jsd(const DiscreteDistribution& p);

/// H(p) * TV(p, uniform)^2.
double c_tv(const DiscreteDistribution& p);

double complexity(ComplexityKind kind, const DiscreteDistribution& p);

/// Entropy factor, disequilibrium factor and their product for one family point.
struct FamilyEvaluation {
  ComplexityKind kind;
  FamilyPoint point;
  double h;
  double d;
  double c;
};

/// Closed-form complexity on the spike family as a function of
/// (omega, p_max). Works for non-integer omega * N.
FamilyEvaluation family_eval(ComplexityKind kind, const FamilyPoint& point);

/// Entropy of the spike family, H^(K)(omega, p_max).
double family_entropy(std::size_t n, double omega, double p_max);

/// Normalized entropy of the mixture of the family with the uniform
/// distribution, H^(K)(m).
double family_mixture_entropy(std::size_t n, double omega, double p_max);

/// Writes `omega,p_max,c` rows for omega = i * step (interior of (0, 1))
/// and p_max = j * step (closed [0, 1]).
void write_family_grid(std::ostream& out, ComplexityKind kind, std::size_t n, double step);

/// Writes `p1,p2,c` rows over the 3-point simplex, p3 = 1 - p1 - p2.
void write_simplex_grid(std::ostream& out, ComplexityKind kind, double step);

}  // namespace statcx
