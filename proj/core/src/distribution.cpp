#include "statcx/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "statcx/error.hpp"
#include "summation.hpp"

namespace statcx {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidDimension: return "invalid dimension";
    case ErrorCode::kInvalidFamily: return "invalid family";
    case ErrorCode::kRange: return "out of range";
    case ErrorCode::kDegenerateInput: return "degenerate input";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kSupport: return "support";
    case ErrorCode::kResolution: return "resolution";
    case ErrorCode::kAliasing: return "aliasing";
    case ErrorCode::kLength: return "length";
    case ErrorCode::kIo: return "i/o";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.size() < 2) {
    throw Error(ErrorCode::kInvalidDimension,
                "a distribution needs at least 2 entries, got " + std::to_string(probs_.size()));
  }
  detail::CompensatedSum total;
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kRange, "probability " + std::to_string(p) + " outside [0, 1]");
    }
    total += p;
  }
  if (std::fabs(total.value() - 1.0) > kSimplexTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "entries sum to " << total.value() << ", not 1";
    throw Error(ErrorCode::kRange, msg.str());
  }
}

FamilyPoint FamilyPoint::integer(std::size_t n, std::size_t k, double p_max) {
  if (n < 2) throw Error(ErrorCode::kInvalidDimension, "family needs n >= 2");
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::kInvalidFamily,
                "k = " + std::to_string(k) + " outside [1, " + std::to_string(n - 1) + "]");
  }
  if (!(p_max >= 0.0 && p_max <= 1.0)) {
    throw Error(ErrorCode::kRange, "p_max outside [0, 1]");
  }
  return FamilyPoint(n, static_cast<double>(k) / static_cast<double>(n), p_max, k);
}

FamilyPoint FamilyPoint::continuous(std::size_t n, double omega, double p_max) {
  if (n < 2) throw Error(ErrorCode::kInvalidDimension, "family needs n >= 2");
  if (!(omega > 0.0 && omega < 1.0)) throw Error(ErrorCode::kRange, "omega outside (0, 1)");
  if (!(p_max >= 0.0 && p_max <= 1.0)) throw Error(ErrorCode::kRange, "p_max outside [0, 1]");
  return FamilyPoint(n, omega, p_max, std::nullopt);
}

FamilyPoint FamilyPoint::mirrored() const {
  if (k_) return integer(n_, n_ - *k_, 1.0 - p_max_);
  return continuous(n_, 1.0 - omega_, 1.0 - p_max_);
}

DiscreteDistribution uniform(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::kInvalidDimension, "uniform needs n >= 2");
  return DiscreteDistribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DiscreteDistribution spike_family(const FamilyPoint& point) {
  if (!point.k()) {
    throw Error(ErrorCode::kInvalidFamily, "spike_family needs an integer-mode point");
  }
  const std::size_t n = point.n();
  const std::size_t k = *point.k();
  const double low = (1.0 - point.p_max()) / static_cast<double>(k);
  const double high = point.p_max() / static_cast<double>(n - k);
  std::vector<double> probs(n, high);
  std::fill_n(probs.begin(), k, low);
  return DiscreteDistribution(std::move(probs));
}

DiscreteDistribution normalize(std::span<const double> raw) {
  if (raw.size() < 2) throw Error(ErrorCode::kInvalidDimension, "normalize needs >= 2 entries");
  detail::CompensatedSum total;
  for (double x : raw) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw Error(ErrorCode::kRange, "normalize needs finite nonnegative weights");
    }
    total += x;
  }
  const double sum = total.value();
  if (sum <= 0.0) throw Error(ErrorCode::kDegenerateInput, "all weights are zero");
  std::vector<double> probs(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) probs[i] = raw[i] / sum;
  return DiscreteDistribution(std::move(probs));
}

void write_csv(std::ostream& out, const DiscreteDistribution& p) {
  const auto old = out.precision(17);
  out << "p\n";
  for (double x : p) out << x << '\n';
  out.precision(old);
}

DiscreteDistribution read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, "empty distribution CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "p") throw Error(ErrorCode::kParse, "expected header 'p', got '" + line + "'");
  std::vector<double> probs;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(line, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, "bad probability '" + line + "'");
    }
    if (used != line.size()) throw Error(ErrorCode::kParse, "bad probability '" + line + "'");
    probs.push_back(value);
  }
  return DiscreteDistribution(std::move(probs));
}

}  // namespace statcx
