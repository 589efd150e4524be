#include "statcx/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "statcx/error.hpp"

namespace statcx {
namespace {

constexpr int kGridCells = 512;
constexpr double kFinalStep = 1e-7;
constexpr double kOpenMargin = 1e-12;
constexpr std::size_t kPolishedCandidates = 8;

struct Candidate {
  double omega;
  double p_max;
  double c;
};

// Lexicographic (c, omega, p_max) so the reduction does not depend on
// evaluation order.
bool better(const Candidate& a, const Candidate& b) {
  return std::tie(a.c, a.omega, a.p_max) > std::tie(b.c, b.omega, b.p_max);
}

double eval_c(ComplexityKind kind, std::size_t n, double omega, double p_max) {
  const double c = family_eval(kind, FamilyPoint::continuous(n, omega, p_max)).c;
  return std::isfinite(c) ? c : -std::numeric_limits<double>::infinity();
}

Candidate polish(ComplexityKind kind, std::size_t n, const OmegaRange& range, Candidate start,
                 double step, bool move_omega) {
  Candidate best = start;
  while (step >= kFinalStep) {
    bool improved = false;
    const double moves[4][2] = {{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}};
    for (const auto& mv : moves) {
      if (!move_omega && mv[0] != 0.0) continue;
      const double omega = std::clamp(best.omega + mv[0], range.lo, range.hi);
      const double p_max = std::clamp(best.p_max + mv[1], 0.0, 1.0);
      if (omega == best.omega && p_max == best.p_max) continue;
      const Candidate trial{omega, p_max, eval_c(kind, n, omega, p_max)};
      if (trial.c > best.c) {
        best = trial;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

OptimumRecord finish(ComplexityKind kind, std::size_t n, SearchMode mode, Candidate best,
                     std::optional<std::size_t> k) {
  auto point = k ? FamilyPoint::integer(n, *k, best.p_max)
                 : FamilyPoint::continuous(n, best.omega, best.p_max);
  if (point.p_max() < 0.5) point = point.mirrored();
  const auto eval = family_eval(kind, point);
  const double n_real = static_cast<double>(n);
  const std::size_t n_minus_k =
      point.k() ? n - *point.k()
                : static_cast<std::size_t>(std::llround(n_real * (1.0 - point.omega())));
  return OptimumRecord{kind, n, point.omega(), point.p_max(), eval.c, mode, n_minus_k};
}

OptimumRecord maximize_continuous(ComplexityKind kind, std::size_t n) {
  const OmegaRange range = omega_range(kind, n);

  std::vector<double> omegas;
  if (kind == ComplexityKind::kSq) omegas.push_back(range.lo);
  for (int i = 1; i < kGridCells; ++i) {
    const double omega = static_cast<double>(i) / kGridCells;
    if (omega > range.lo && omega < range.hi) omegas.push_back(omega);
  }
  if (kind == ComplexityKind::kSq) omegas.push_back(range.hi);

  const std::size_t rows = omegas.size();
  const std::size_t cols = kGridCells + 1;
  std::vector<double> grid(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      grid[i * cols + j] = eval_c(kind, n, omegas[i], static_cast<double>(j) / kGridCells);
    }
  }

  // Grid-local maxima (4-neighbourhood, boundary cells included) seed the polish.
  std::vector<Candidate> seeds;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double c = grid[i * cols + j];
      const bool peak = (i == 0 || grid[(i - 1) * cols + j] <= c) &&
                        (i + 1 == rows || grid[(i + 1) * cols + j] <= c) &&
                        (j == 0 || grid[i * cols + j - 1] <= c) &&
                        (j + 1 == cols || grid[i * cols + j + 1] <= c);
      if (peak) seeds.push_back({omegas[i], static_cast<double>(j) / kGridCells, c});
    }
  }
  std::sort(seeds.begin(), seeds.end(), better);
  if (seeds.size() > kPolishedCandidates) seeds.resize(kPolishedCandidates);

  Candidate best{0.5, 0.5, -std::numeric_limits<double>::infinity()};
  for (const auto& seed : seeds) {
    const Candidate polished = polish(kind, n, range, seed, 1.0 / kGridCells, true);
    if (better(polished, best)) best = polished;
  }
  return finish(kind, n, SearchMode::kContinuous, best, std::nullopt);
}

OptimumRecord maximize_integer(ComplexityKind kind, std::size_t n) {
  Candidate best{0.5, 0.5, -std::numeric_limits<double>::infinity()};
  std::size_t best_k = 1;
  for (std::size_t k = 1; k < n; ++k) {
    const double omega = static_cast<double>(k) / static_cast<double>(n);
    Candidate row_best{omega, 0.0, -std::numeric_limits<double>::infinity()};
    for (int j = 0; j <= kGridCells; ++j) {
      const double p_max = static_cast<double>(j) / kGridCells;
      const Candidate trial{omega, p_max, eval_c(kind, n, omega, p_max)};
      if (better(trial, row_best)) row_best = trial;
    }
    row_best = polish(kind, n, OmegaRange{omega, omega}, row_best, 1.0 / kGridCells, false);
    if (better(row_best, best)) {
      best = row_best;
      best_k = k;
    }
  }
  return finish(kind, n, SearchMode::kInteger, best, best_k);
}

}  // namespace

OmegaRange omega_range(ComplexityKind kind, std::size_t n) {
  if (kind == ComplexityKind::kSq) {
    const double inv = 1.0 / static_cast<double>(n);
    return {inv, 1.0 - inv};
  }
  return {kOpenMargin, 1.0 - kOpenMargin};
}

OptimumRecord maximize_family(ComplexityKind kind, std::size_t n, SearchMode mode) {
  if (n < 3) throw Error(ErrorCode::kInvalidDimension, "maximize_family needs n >= 3");
  return mode == SearchMode::kContinuous ? maximize_continuous(kind, n)
                                         : maximize_integer(kind, n);
}

// ---------------------------------------------------------------------------

namespace {

struct Lattice {
  long cells;
  std::vector<double> values;  // NaN outside the simplex

  double at(long i, long j) const { return values[static_cast<std::size_t>(i * (cells + 1) + j)]; }
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

struct Flagged {
  long i;
  long j;
  ExtremumType type;
  double c;
  double grad2;
};

}  // namespace

std::vector<SimplexExtremum> brute_force_simplex(ComplexityKind kind, std::size_t n, double step) {
  if (n != 3) throw Error(ErrorCode::kInvalidDimension, "simplex scan is defined for n = 3 only");
  if (!(step > 0.0)) throw Error(ErrorCode::kRange, "step must be positive");
  if (step > 1e-2) throw Error(ErrorCode::kResolution, "step coarser than 1e-2");

  Lattice lat{static_cast<long>(std::llround(1.0 / step)), {}};
  const long m = lat.cells;
  const double inv = 1.0 / static_cast<double>(m);
  lat.values.assign(static_cast<std::size_t>((m + 1) * (m + 1)),
                    std::numeric_limits<double>::quiet_NaN());
  for (long i = 0; i <= m; ++i) {
    for (long j = 0; i + j <= m; ++j) {
      const DiscreteDistribution p({i * inv, j * inv, (m - i - j) * inv});
      lat.values[static_cast<std::size_t>(i * (m + 1) + j)] = complexity(kind, p);
    }
  }

  static constexpr long kRing[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, 1},
                                       {1, 1},   {1, 0},  {1, -1}, {0, -1}};
  std::vector<Flagged> flagged;
  for (long i = 1; i < m; ++i) {
    for (long j = 1; i + j <= m - 2; ++j) {
      const double c = lat.at(i, j);
      int signs[8];
      int above = 0;
      int below = 0;
      for (int r = 0; r < 8; ++r) {
        const double v = lat.at(i + kRing[r][0], j + kRing[r][1]);
        signs[r] = v > c ? 1 : (v < c ? -1 : 0);
        above += signs[r] > 0;
        below += signs[r] < 0;
      }
      std::optional<ExtremumType> type;
      if (above == 0 && below > 0) {
        type = ExtremumType::kMaximum;
      } else if (below == 0 && above > 0) {
        type = ExtremumType::kMinimum;
      } else {
        int prev = 0;
        for (int r = 7; r >= 0 && prev == 0; --r) prev = signs[r];
        int changes = 0;
        for (int s : signs) {
          if (s == 0) continue;
          if (s != prev) ++changes;
          prev = s;
        }
        if (changes >= 4) type = ExtremumType::kSaddle;
      }
      if (!type) continue;
      const double gx = lat.at(i + 1, j) - lat.at(i - 1, j);
      const double gy = lat.at(i, j + 1) - lat.at(i, j - 1);
      flagged.push_back({i, j, *type, c, gx * gx + gy * gy});
    }
  }

  DisjointSets sets(flagged.size());
  for (std::size_t a = 0; a < flagged.size(); ++a) {
    for (std::size_t b = a + 1; b < flagged.size(); ++b) {
      if (flagged[b].i > flagged[a].i + 1) break;  // flagged is sorted by i
      if (flagged[a].type == flagged[b].type && std::labs(flagged[a].j - flagged[b].j) <= 1) {
        sets.unite(a, b);
      }
    }
  }

  std::vector<std::optional<std::size_t>> representative(flagged.size());
  for (std::size_t a = 0; a < flagged.size(); ++a) {
    auto& rep = representative[sets.find(a)];
    if (!rep) {
      rep = a;
      continue;
    }
    const Flagged& cur = flagged[*rep];
    const Flagged& cand = flagged[a];
    bool take = false;
    switch (cand.type) {
      case ExtremumType::kMaximum: take = cand.c > cur.c; break;
      case ExtremumType::kMinimum: take = cand.c < cur.c; break;
      case ExtremumType::kSaddle: take = cand.grad2 < cur.grad2; break;
    }
    if (take) rep = a;
  }

  // A ring of ties next to a lattice extremum can mimic a saddle; a true
  // saddle is never adjacent to an extremum at lattice resolution.
  std::vector<bool> spurious(flagged.size(), false);
  for (std::size_t a = 0; a < flagged.size(); ++a) {
    if (flagged[a].type != ExtremumType::kSaddle) continue;
    for (const auto& other : flagged) {
      if (other.type != ExtremumType::kSaddle && std::labs(other.i - flagged[a].i) <= 1 &&
          std::labs(other.j - flagged[a].j) <= 1) {
        spurious[sets.find(a)] = true;
      }
    }
  }

  std::vector<SimplexExtremum> out;
  for (std::size_t root = 0; root < representative.size(); ++root) {
    const auto& rep = representative[root];
    if (!rep || spurious[root]) continue;
    const Flagged& f = flagged[*rep];
    out.push_back({{f.i * inv, f.j * inv, (m - f.i - f.j) * inv}, f.c, f.type});
  }
  std::sort(out.begin(), out.end(), [](const SimplexExtremum& a, const SimplexExtremum& b) {
    return std::tie(a.type, a.p) < std::tie(b.type, b.p);
  });
  return out;
}

ResidualTriple tv_residuals(std::size_t n, double omega, double p_max) {
  if (n < 2) throw Error(ErrorCode::kInvalidDimension, "tv_residuals needs n >= 2");
  if (!(omega > 0.0 && omega < 1.0) || !(p_max > 0.0 && p_max < 1.0)) {
    throw Error(ErrorCode::kRange, "tv_residuals needs omega and p_max strictly inside (0, 1)");
  }
  const double log_n = std::log(static_cast<double>(n));
  const double shift = p_max + omega - 1.0;
  const double entropy = family_entropy(n, omega, p_max);
  const double high_ratio = p_max / (1.0 - omega);
  const double low_ratio = (1.0 - p_max) / omega;
  const double log_gap = std::log(high_ratio) - std::log(low_ratio);
  const double ratio_gap = high_ratio - low_ratio;

  ResidualTriple r{};
  r.f1 = 2.0 * shift * (entropy - shift / (2.0 * log_n) * log_gap);
  r.f2 = 2.0 * shift * (entropy - shift / (2.0 * log_n) * ratio_gap);
  r.f3 = shift * shift / log_n *
         (-std::log(high_ratio) + std::log(low_ratio) + high_ratio - low_ratio);
  return r;
}

double ordered_triple_residual(double x, double y, double z) {
  if (!(x > 0.0 && x <= y && y <= z && z <= 1.0)) {
    throw Error(ErrorCode::kRange, "need 0 < x <= y <= z <= 1");
  }
  const double lx = std::log(x);
  const double ly = std::log(y);
  const double lz = std::log(z);
  return (y * lx - x * ly) + (x * lz - z * lx) + (z * ly - y * lz);
}

double threshold(ComplexityKind kind, std::size_t n, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw Error(ErrorCode::kRange, "fraction outside (0, 1)");
  return fraction * maximize_family(kind, n, SearchMode::kContinuous).c_star;
}

}  // namespace statcx
