#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "statcx/complexity.hpp"

namespace statcx {

enum class SearchMode { kContinuous, kInteger };

/// Best family point found for one (kind, N).
struct OptimumRecord {
  ComplexityKind kind;
  std::size_t n;
  double omega_star;
  double p_max_star;
  double c_star;
  SearchMode mode;
  /// N - K*, rounded to the nearest integer in continuous mode.
  std::size_t n_minus_k_star;
};

/// Admissible omega range searched for a kind. The SQ closed form has a
/// pole at omega -> 0 and omega -> 1, so SQ is restricted to realizable
/// group sizes, [1/N, 1 - 1/N]. JSD and TV use the open interval.
struct OmegaRange {
  double lo;
  double hi;
};
OmegaRange omega_range(ComplexityKind kind, std::size_t n);

/// Maximizes the family closed form over (omega, p_max).
///
/// Continuous mode scans a 1/512 grid and polishes the best cells by
/// coordinate ascent with a halving step until the step drops below 1e-7.
/// Integer mode scans every K in [1, N - 1] with a 1-D search in p_max.
/// Of the two mirror-image optima the one with p_max >= 1/2 is returned.
OptimumRecord maximize_family(ComplexityKind kind, std::size_t n,
                              SearchMode mode = SearchMode::kContinuous);

enum class ExtremumType { kMaximum, kMinimum, kSaddle };

struct SimplexExtremum {
  std::array<double, 3> p;
  double c;
  ExtremumType type;
};

/// Exhaustive scan of the N = 3 simplex on the lattice (i * step, j * step).
///
/// Interior lattice points are classified against their 8 neighbours:
/// maxima and minima by comparison, saddles by four or more sign changes
/// around the ring. Adjacent flagged points are merged; each cluster is
/// represented by its extreme value (maxima, minima) or by its point of
/// smallest discrete gradient (saddles).
std::vector<SimplexExtremum> brute_force_simplex(ComplexityKind kind, std::size_t n, double step);

/// The two stationarity residuals of the TV family complexity and their
/// difference; f1 is the p_max-derivative, f2 the omega-derivative.
struct ResidualTriple {
  double f1;
  double f2;
  double f3;
};

ResidualTriple tv_residuals(std::size_t n, double omega, double p_max);

/// g(x, y, z) = y ln x - x ln y + x ln z - z ln x + z ln y - y ln z,
/// nonnegative for 0 < x <= y <= z <= 1.
double ordered_triple_residual(double x, double y, double z);

/// Decision level as a fraction of the maximal family complexity for N.
double threshold(ComplexityKind kind, std::size_t n, double fraction = 0.25);

}  // namespace statcx
