#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "statcx/optimizer.hpp"
#include "test_support.hpp"

using namespace statcx;

TEST_CASE("maximize_family continuous examples") {
  const auto sq = maximize_family(ComplexityKind::kSq, 1024);
  CHECK(std::fabs(sq.c_star - 0.1898) <= 5e-4);
  CHECK(std::fabs(sq.p_max_star - 0.6979) <= 5e-3);
  CHECK(std::fabs(sq.omega_star - 0.9990) <= 5e-3);
  CHECK(sq.n_minus_k_star == 1);
  CHECK(sq.mode == SearchMode::kContinuous);

  const auto tv = maximize_family(ComplexityKind::kTv, 2048);
  CHECK(std::fabs(tv.c_star - 0.5667) <= 5e-4);
  CHECK(std::fabs(tv.p_max_star - 0.9999) <= 5e-3);
  CHECK(std::fabs(tv.omega_star - 0.9122) <= 5e-3);
  CHECK(tv.n_minus_k_star == 180);

  const auto js = maximize_family(ComplexityKind::kJsd, 256);
  CHECK(std::fabs(js.c_star - 0.4482) <= 5e-4);
  CHECK(js.p_max_star == 1.0);
  CHECK(std::fabs(js.omega_star - 0.8703) <= 5e-3);
  CHECK(js.n_minus_k_star == 33);

  const auto sq3 = maximize_family(ComplexityKind::kSq, 3);
  CHECK(std::fabs(sq3.c_star - 0.1932) <= 1e-3);
  CHECK(std::fabs(sq3.p_max_star - 0.8315) <= 5e-3);
  CHECK(std::fabs(sq3.omega_star - 0.6666) <= 5e-3);
}

TEST_CASE("OptimumRecord invariants") {
  for (auto kind : kAllKinds) {
    for (std::size_t n : {3u, 17u, 256u}) {
      const auto r = maximize_family(kind, n);
      CHECK(r.omega_star > 0.0);
      CHECK(r.omega_star < 1.0);
      CHECK(r.p_max_star >= 0.5);
      CHECK(r.p_max_star <= 1.0);
      const double again = family_eval(kind, FamilyPoint::continuous(n, r.omega_star, r.p_max_star)).c;
      CHECK(std::fabs(r.c_star - again) <= 1e-10);
    }
  }
  CHECK(code_of([] { maximize_family(ComplexityKind::kTv, 2); }) == ErrorCode::kInvalidDimension);
}

TEST_CASE("integer mode agrees with exhaustive direct evaluation") {
  // Brute force over every K and a fine p_max lattice, using the direct
  // functionals on materialized distributions.
  for (auto kind : kAllKinds) {
    const std::size_t n = 12;
    double best = -1.0;
    for (std::size_t k = 1; k < n; ++k) {
      for (int j = 0; j <= 4000; ++j) {
        const auto p = spike_family(FamilyPoint::integer(n, k, j / 4000.0));
        best = std::max(best, complexity(kind, p));
      }
    }
    const auto r = maximize_family(kind, n, SearchMode::kInteger);
    CHECK(r.mode == SearchMode::kInteger);
    CHECK(r.c_star >= best - 1e-9);
    CHECK(r.c_star <= best + 1e-5);
    const auto k_star = n - r.n_minus_k_star;
    const auto direct = complexity(kind, spike_family(FamilyPoint::integer(n, k_star, r.p_max_star)));
    CHECK(std::fabs(direct - r.c_star) <= 1e-10);
  }
}

TEST_CASE("integer mode never beats the continuous relaxation") {
  for (auto kind : kAllKinds) {
    for (std::size_t n : {3u, 64u, 256u}) {
      const auto cont = maximize_family(kind, n);
      const auto integ = maximize_family(kind, n, SearchMode::kInteger);
      CHECK(integ.c_star <= cont.c_star + 1e-9);
    }
  }
}

TEST_CASE("brute_force_simplex on C_SQ") {
  const auto extrema = brute_force_simplex(ComplexityKind::kSq, 3, 5e-4);
  int maxima = 0, saddles = 0, minima = 0;
  for (const auto& e : extrema) {
    std::array<double, 3> sorted = e.p;
    std::sort(sorted.begin(), sorted.end());
    switch (e.type) {
      case ExtremumType::kMaximum:
        ++maxima;
        CHECK(std::fabs(e.c - 0.1932) <= 1e-3);
        CHECK(std::fabs(sorted[0] - 0.08425) <= 1e-3);
        CHECK(std::fabs(sorted[1] - 0.08425) <= 1e-3);
        CHECK(std::fabs(sorted[2] - 0.8315) <= 1e-3);
        break;
      case ExtremumType::kSaddle:
        ++saddles;
        CHECK(std::fabs(e.c - 0.1062) <= 1e-3);
        CHECK(std::fabs(sorted[0] - 0.006) <= 1e-3);
        CHECK(std::fabs(sorted[1] - 0.497) <= 1e-3);
        CHECK(std::fabs(sorted[2] - 0.497) <= 1e-3);
        break;
      case ExtremumType::kMinimum:
        ++minima;
        CHECK(e.c <= 1e-6);
        for (double x : e.p) CHECK(std::fabs(x - 1.0 / 3.0) <= 1e-3);
        break;
    }
  }
  CHECK(maxima == 3);
  CHECK(saddles == 3);
  CHECK(minima == 1);
}

TEST_CASE("brute_force_simplex agrees with the family optimizer") {
  const auto best = maximize_family(ComplexityKind::kSq, 3);
  for (const auto& e : brute_force_simplex(ComplexityKind::kSq, 3, 1e-3)) {
    if (e.type != ExtremumType::kMaximum) continue;
    CHECK(std::fabs(e.c - best.c_star) <= 1e-4);
    CHECK(std::fabs(*std::max_element(e.p.begin(), e.p.end()) - best.p_max_star) <= 2e-3);
  }
}

TEST_CASE("brute_force_simplex preconditions") {
  CHECK(code_of([] { brute_force_simplex(ComplexityKind::kSq, 4, 1e-3); }) == ErrorCode::kInvalidDimension);
  CHECK(code_of([] { brute_force_simplex(ComplexityKind::kSq, 3, 0.05); }) == ErrorCode::kResolution);
}

TEST_CASE("tv_residuals") {
  for (double omega : {0.1, 0.37, 0.8}) {
    const auto r = tv_residuals(64, omega, 1.0 - omega);
    CHECK(r.f1 == 0.0);
    CHECK(r.f2 == 0.0);
    CHECK(r.f3 == 0.0);
  }

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unit(0.01, 0.99);
  for (int trial = 0; trial < 500; ++trial) {
    const auto r = tv_residuals(2 + rng() % 4000, unit(rng), unit(rng));
    CHECK(std::fabs(r.f3 - (r.f1 - r.f2)) <= 1e-10);
  }

  // f1 and f2 are the partial derivatives in p_max and omega; compare with
  // central differences of the closed form.
  const std::size_t n = 128;
  const double omega = 0.7, p = 0.85, h = 1e-6;
  auto c = [&](double w, double q) {
    return family_eval(ComplexityKind::kTv, FamilyPoint::continuous(n, w, q)).c;
  };
  const auto r = tv_residuals(n, omega, p);
  CHECK(r.f1 == doctest::Approx((c(omega, p + h) - c(omega, p - h)) / (2 * h)).epsilon(1e-6));
  CHECK(r.f2 == doctest::Approx((c(omega + h, p) - c(omega - h, p)) / (2 * h)).epsilon(1e-6));

  CHECK(code_of([] { tv_residuals(8, 0.0, 0.5); }) == ErrorCode::kRange);
  CHECK(code_of([] { tv_residuals(8, 0.5, 1.0); }) == ErrorCode::kRange);
}

TEST_CASE("TV optima are stationary and lie on the f3 curve") {
  for (std::size_t n : {128u, 1024u}) {
    const auto r = maximize_family(ComplexityKind::kTv, n);
    const auto at = tv_residuals(n, r.omega_star, r.p_max_star);
    CHECK(std::fabs(at.f1) <= 1e-3);
    CHECK(std::fabs(at.f2) <= 1e-3);
    CHECK(std::fabs(at.f3) <= 1e-3);
    const auto twin = tv_residuals(n, 1.0 - r.omega_star, 1.0 - r.p_max_star);
    CHECK(std::fabs(twin.f1) <= 1e-3);
    CHECK(std::fabs(twin.f2) <= 1e-3);
  }
}

TEST_CASE("ordered_triple_residual") {
  CHECK(ordered_triple_residual(0.3, 0.3, 0.9) == 0.0);
  CHECK(ordered_triple_residual(0.1, 0.6, 0.6) == 0.0);
  CHECK(ordered_triple_residual(0.2, 0.2, 0.2) == 0.0);
  // Direct evaluation of the defining formula gives 0.408660499.
  CHECK(ordered_triple_residual(0.1, 0.5, 0.9) == doctest::Approx(0.408660499).epsilon(1e-9));
  CHECK(code_of([] { ordered_triple_residual(0.5, 0.2, 0.9); }) == ErrorCode::kRange);
  CHECK(code_of([] { ordered_triple_residual(0.0, 0.2, 0.9); }) == ErrorCode::kRange);
  CHECK(code_of([] { ordered_triple_residual(0.1, 0.2, 1.5); }) == ErrorCode::kRange);

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unit(1e-9, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    std::array<double, 3> v{unit(rng), unit(rng), unit(rng)};
    std::sort(v.begin(), v.end());
    CHECK(ordered_triple_residual(v[0], v[1], v[2]) >= -1e-12);
  }
}

TEST_CASE("threshold") {
  CHECK(std::fabs(threshold(ComplexityKind::kSq, 2048) - 0.0465) <= 2e-4);
  CHECK(std::fabs(threshold(ComplexityKind::kJsd, 2048) - 0.1328) <= 2e-4);
  CHECK(std::fabs(threshold(ComplexityKind::kTv, 2048) - 0.1417) <= 2e-4);
  const double quarter = threshold(ComplexityKind::kTv, 256, 0.25);
  CHECK(threshold(ComplexityKind::kTv, 256, 0.5) == doctest::Approx(2.0 * quarter));
  CHECK(code_of([] { threshold(ComplexityKind::kTv, 256, 0.0); }) == ErrorCode::kRange);
  CHECK(code_of([] { threshold(ComplexityKind::kTv, 256, 1.0); }) == ErrorCode::kRange);
}
