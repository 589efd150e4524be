#include "statcx/complexity.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "statcx/error.hpp"
#include "statcx/info_measures.hpp"
#include "summation.hpp"

namespace statcx {

std::string_view to_string(ComplexityKind kind) noexcept {
  switch (kind) {
    case ComplexityKind::kSq: return "sq";
    case ComplexityKind::kJsd: return "jsd";
    case ComplexityKind::kTv: return "tv";
  }
  return "?";
}

std::optional<ComplexityKind> parse_kind(std::string_view text) noexcept {
  std::string lower;
  for (char ch : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (lower == "sq") return ComplexityKind::kSq;
  if (lower == "jsd") return ComplexityKind::kJsd;
  if (lower == "tv") return ComplexityKind::kTv;
  return std::nullopt;
}

double c_sq(const DiscreteDistribution& p) { return entropy_normalized(p) * disequilibrium_sq(p); }

double c_jsd(const DiscreteDistribution& p) {
  return entropy_normalized(p) * jsd(p, uniform(p.size()), LogUnit::kBits);
}

double c_tv(const DiscreteDistribution& p) {
  const double tv = total_variation(p, uniform(p.size()));
  return entropy_normalized(p) * tv * tv;
}

double complexity(ComplexityKind kind, const DiscreteDistribution& p) {
  switch (kind) {
    case ComplexityKind::kSq: return c_sq(p);
    case ComplexityKind::kJsd: return c_jsd(p);
    case ComplexityKind::kTv: return c_tv(p);
  }
  throw Error(ErrorCode::kRange, "unknown complexity kind");
}

namespace {

// a * log(a / b) with the a = 0 limit taken as 0.
double xlog_ratio(double a, double b) { return a > 0.0 ? a * std::log(a / b) : 0.0; }

}  // namespace

double family_entropy(std::size_t n, double omega, double p_max) {
  const double log_n = std::log(static_cast<double>(n));
  return 1.0 - (xlog_ratio(1.0 - p_max, omega) + xlog_ratio(p_max, 1.0 - omega)) / log_n;
}

double family_mixture_entropy(std::size_t n, double omega, double p_max) {
  const double log_n = std::log(static_cast<double>(n));
  const double low = 0.5 * (1.0 - p_max + omega);
  const double high = 0.5 * (1.0 + p_max - omega);
  return 1.0 - (xlog_ratio(low, omega) + xlog_ratio(high, 1.0 - omega)) / log_n;
}

FamilyEvaluation family_eval(ComplexityKind kind, const FamilyPoint& point) {
  const double omega = point.omega();
  const double p_max = point.p_max();
  if (!(omega > 0.0 && omega < 1.0)) throw Error(ErrorCode::kRange, "omega outside (0, 1)");
  if (!(p_max >= 0.0 && p_max <= 1.0)) throw Error(ErrorCode::kRange, "p_max outside [0, 1]");

  const std::size_t n = point.n();
  const double h = family_entropy(n, omega, p_max);
  const double shift = p_max + omega - 1.0;
  double d = 0.0;
  switch (kind) {
    case ComplexityKind::kSq:
      d = shift * shift / (static_cast<double>(n) * omega * (1.0 - omega));
      break;
    case ComplexityKind::kTv:
      d = shift * shift;
      break;
    case ComplexityKind::kJsd: {
      // Unnormalized-entropy form H*(m) - (H*(p) + log N) / 2, converted to bits.
      // Evaluated as mixture terms relative to the family terms so that the
      // divergence is exactly zero on the line p_max + omega = 1.
      const double low = 1.0 - p_max;
      const double mix_low = 0.5 * (low + omega);
      const double mix_high = 0.5 * (p_max + 1.0 - omega);
      const double nats = 0.5 * (xlog_ratio(low, omega) + xlog_ratio(p_max, 1.0 - omega)) -
                          xlog_ratio(mix_low, omega) - xlog_ratio(mix_high, 1.0 - omega);
      d = std::max(0.0, nats / std::numbers::ln2);
      break;
    }
  }
  return FamilyEvaluation{kind, point, h, d, h * d};
}

void write_family_grid(std::ostream& out, ComplexityKind kind, std::size_t n, double step) {
  if (!(step >= 1e-4 && step <= 1e-1)) throw Error(ErrorCode::kResolution, "grid step outside [1e-4, 1e-1]");
  const auto cells = static_cast<long>(std::llround(1.0 / step));
  const auto old = out.precision(6);
  out << "omega,p_max,c\n";
  for (long i = 1; i < cells; ++i) {
    const double omega = static_cast<double>(i) / static_cast<double>(cells);
    for (long j = 0; j <= cells; ++j) {
      const double p_max = static_cast<double>(j) / static_cast<double>(cells);
      const auto eval = family_eval(kind, FamilyPoint::continuous(n, omega, p_max));
      out << omega << ',' << p_max << ',' << eval.c << '\n';
    }
  }
  out.precision(old);
}

void write_simplex_grid(std::ostream& out, ComplexityKind kind, double step) {
  if (!(step >= 1e-4 && step <= 1e-1)) throw Error(ErrorCode::kResolution, "grid step outside [1e-4, 1e-1]");
  const auto cells = static_cast<long>(std::llround(1.0 / step));
  const auto old = out.precision(6);
  out << "p1,p2,c\n";
  for (long i = 0; i <= cells; ++i) {
    for (long j = 0; i + j <= cells; ++j) {
      const double p1 = static_cast<double>(i) / static_cast<double>(cells);
      const double p2 = static_cast<double>(j) / static_cast<double>(cells);
      const double p3 = static_cast<double>(cells - i - j) / static_cast<double>(cells);
      const double c = complexity(kind, DiscreteDistribution({p1, p2, p3}));
      out << p1 << ',' << p2 << ',' << c << '\n';
    }
  }
  out.precision(old);
}

}  // namespace statcx
