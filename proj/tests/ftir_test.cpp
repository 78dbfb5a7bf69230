#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ifm/errors.hpp"
#include "ifm/ftir.hpp"

namespace ifm {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(EvanescentB, ReferenceValue) {
  // 2 pi / 633 nm * sqrt(1.125 - 1)
  EXPECT_NEAR(evanescent_b(CouplerParams::reference()), 3509386.2070761187, 1e-6);
}

TEST(EvanescentB, ScalesWithInverseWavelength) {
  const CouplerParams p(633e-9, 1.5, 1.5, 1.0, kPi / 4);
  const CouplerParams half(316.5e-9, 1.5, 1.5, 1.0, kPi / 4);
  EXPECT_NEAR(evanescent_b(half) / evanescent_b(p), 2.0, 1e-14);
}

TEST(EvanescentB, VanishesAtCriticalAngle) {
  const double critical = std::asin(1.0 / 1.5);
  const CouplerParams p(633e-9, 1.5, 1.5, 1.0, critical + 1e-9);
  EXPECT_GT(evanescent_b(p), 0.0);
  EXPECT_LT(evanescent_b(p), 1e3);
}

TEST(EvanescentB, PrintedFormHasNoEvanescentFieldForEqualIndices) {
  const CouplerParams p(633e-9, 1.5, 1.5, 1.0, kPi / 4, DecayIndex::printed);
  EXPECT_THROW(evanescent_b(p), NoEvanescentFieldError);
  EXPECT_THROW(complex_reflection(1e-7, p), NoEvanescentFieldError);
  // A denser prism makes the printed radicand positive.
  const CouplerParams dense(633e-9, 2.0, 1.2, 1.0, kPi / 4, DecayIndex::printed);
  EXPECT_NEAR(evanescent_b(dense), 2 * kPi / 633e-9 * std::sqrt(2.0 - 1.44), 1e-6);
  // ... but then no wave propagates inside the resonator.
  EXPECT_THROW(complex_reflection(1e-7, dense), std::domain_error);
}

TEST(CouplerParams, Validation) {
  EXPECT_THROW(CouplerParams(-1.0, 1.5, 1.5, 1.0, kPi / 4), std::invalid_argument);
  EXPECT_THROW(CouplerParams(633e-9, 1.5, 1.5, 0.9, kPi / 4), std::invalid_argument);
  EXPECT_THROW(CouplerParams(633e-9, 1.0, 1.5, 1.0, kPi / 4), std::invalid_argument);
  EXPECT_THROW(CouplerParams(633e-9, 1.5, 1.5, 1.0, kPi / 2), std::invalid_argument);
  // 1.2 sin 45 < 1: not totally reflected
  EXPECT_THROW(CouplerParams(633e-9, 1.2, 1.5, 1.0, kPi / 4), std::invalid_argument);
}

TEST(TirPhase, CriticalAngleIsZero) {
  const double n = 1.0 / 1.5;
  EXPECT_NEAR(tir_phase(std::asin(n), n), 0.0, 1e-7);
}

TEST(TirPhase, GrazingApproachesPi) {
  EXPECT_NEAR(tir_phase(kPi / 2 - 1e-9, 1.0 / 1.5), kPi, 1e-8);
}

TEST(TirPhase, FortyFiveDegrees) {
  // 2 atan(sqrt(0.5 - 1/2.25) / sqrt(0.5)) = 2 atan(1/3)
  EXPECT_NEAR(tir_phase(kPi / 4, 1.0 / 1.5), 2 * std::atan(1.0 / 3.0), 1e-15);
  EXPECT_NEAR(tir_phase(kPi / 4, 1.0 / 1.5), 0.6435011087932844, 1e-15);
}

TEST(TirPhase, MonotoneAboveCritical) {
  const double n = 1.0 / 1.5;
  const double lo = std::asin(n);
  double prev = tir_phase(lo, n);
  for (int k = 1; k < 1000; ++k) {
    const double t = lo + (kPi / 2 - lo) * k / 1000.0;
    const double d = tir_phase(t, n);
    EXPECT_GT(d, prev);
    prev = d;
  }
}

TEST(TirPhase, SubCriticalIsDomainError) {
  EXPECT_THROW(tir_phase(0.3, 1.0 / 1.5), std::domain_error);
}

TEST(ComplexReflection, GoldenValueAtOneWavelength) {
  // Frozen from an independent 40-digit evaluation of the printed formula.
  const auto c = complex_reflection(633e-9, CouplerParams::reference());
  EXPECT_NEAR(c.r, 0.98295282160781444, 1e-13);
  EXPECT_NEAR(c.delta, 0.76785295692890924, 1e-13);
}

TEST(ComplexReflection, LimitsAndMonotonicity) {
  const auto p = CouplerParams::reference();
  EXPECT_NEAR(complex_reflection(0.0, p).r, 0.0, 1e-15);
  EXPECT_GT(complex_reflection(10 * p.lambda0(), p).r, 0.999);
  EXPECT_DOUBLE_EQ(complex_reflection(1.0, p).r, 1.0);

  double prev = complex_reflection(0.0, p).r;
  for (int k = 1; k <= 1000; ++k) {
    const double r = complex_reflection(10 * p.lambda0() * k / 1000.0, p).r;
    EXPECT_GE(r, prev);
    EXPECT_LE(r, 1.0);
    prev = r;
  }
}

TEST(ComplexReflection, ContinuousOnFineSweep) {
  const auto p = CouplerParams::reference();
  double prev = complex_reflection(0.0, p).r;
  for (int k = 1; k <= 100000; ++k) {
    const double r = complex_reflection(10 * p.lambda0() * k / 100000.0, p).r;
    EXPECT_LT(std::abs(r - prev), 1e-3);
    prev = r;
  }
}

TEST(ComplexReflection, PhaseWrapped) {
  const auto p = CouplerParams::reference();
  for (int k = 0; k <= 200; ++k) {
    const double d = complex_reflection(2 * p.lambda0() * k / 200.0, p).delta;
    EXPECT_GT(d, -kPi);
    EXPECT_LE(d, kPi);
  }
}

TEST(ComplexReflection, NegativeGap) {
  EXPECT_THROW(complex_reflection(-1e-9, CouplerParams::reference()), std::invalid_argument);
}

TEST(WrapPhase, Range) {
  EXPECT_DOUBLE_EQ(wrap_phase(kPi), kPi);
  EXPECT_NEAR(wrap_phase(-kPi), kPi, 1e-15);
  EXPECT_NEAR(wrap_phase(3 * kPi / 2), -kPi / 2, 1e-15);
}

TEST(MatchGap, RoundTrip) {
  const auto p = CouplerParams::reference();
  const double expected[] = {1.1349548538066276e-06, 9.785564240427788e-07, 8.074610297740644e-07};
  const double alphas[] = {0.0005, 0.0015, 0.005};
  for (int k = 0; k < 3; ++k) {
    const double x = match_gap(alphas[k], p);
    EXPECT_LT(std::abs(complex_reflection(x, p).r - std::exp(-alphas[k])), 1e-10);
    EXPECT_NEAR(x, expected[k], 1e-15);
  }
  EXPECT_NEAR(complex_reflection(match_gap(0.0015, p), p).r, 0.99850112, 1e-8);
}

TEST(MatchGap, UnreachableTargets) {
  const auto p = CouplerParams::reference();
  // r(0) = 0 here, so any alpha gives a reachable target below 1 ...
  EXPECT_NO_THROW(match_gap(50.0, p));
  // ... except alpha = 0 (r = 1 needs an infinite gap) and an infinite loss.
  EXPECT_THROW(match_gap(0.0, p), NoSolutionError);
  EXPECT_THROW(match_gap(INFINITY, p), NoSolutionError);
  // Unequal faces lift r(0) above zero.
  const CouplerParams uneven(633e-9, 1.5, 2.4, 1.0, kPi / 4);
  const double r0 = complex_reflection(0.0, uneven).r;
  ASSERT_GT(r0, 0.0);
  EXPECT_THROW(match_gap(-std::log(r0) + 0.5, uneven), NoSolutionError);
  EXPECT_NEAR(complex_reflection(match_gap(-std::log(r0) - 0.01, uneven), uneven).r,
              r0 * std::exp(0.01), 1e-10);
}

}  // namespace
}  // namespace ifm
