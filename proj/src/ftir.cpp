#include "ifm/ftir.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ifm/errors.hpp"

namespace ifm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kReflectivityTol = 1e-12;
constexpr int kMaxBisections = 400;

}  // namespace

CouplerParams::CouplerParams(double lambda0, double n1, double n2, double n_gap, double theta1,
                             DecayIndex decay)
    : lambda0_(lambda0), n1_(n1), n2_(n2), n_gap_(n_gap), theta1_(theta1), decay_(decay) {
  if (!(lambda0 > 0.0) || !std::isfinite(lambda0))
    throw std::invalid_argument("lambda0 must be positive");
  if (!(n_gap >= 1.0)) throw std::invalid_argument("n_gap must be >= 1");
  if (!(n1 > n_gap) || !(n2 > n_gap))
    throw std::invalid_argument("prism and resonator indices must exceed the gap index");
  if (!(theta1 > 0.0 && theta1 < kPi / 2)) throw std::invalid_argument("theta1 must lie in (0, pi/2)");
  if (!(n1 * std::sin(theta1) > n_gap))
    throw std::invalid_argument("prism face is not in total internal reflection");
}

CouplerParams CouplerParams::reference() {
  return CouplerParams(633e-9, 1.5, 1.5, 1.0, kPi / 4);
}

double CouplerParams::theta2() const {
  const double s = n1_ * std::sin(theta1_) / n2_;
  if (!(s < 1.0)) throw std::domain_error("no propagating refracted wave in the resonator");
  return std::asin(s);
}

double wrap_phase(double angle) {
  double w = std::remainder(angle, 2 * kPi);
  if (w <= -kPi) w += 2 * kPi;
  return w;
}

double evanescent_b(const CouplerParams& p) {
  const double s = p.n1() * std::sin(p.theta1());
  const double other = p.decay() == DecayIndex::gap ? p.n_gap() : p.n2();
  const double radicand = s * s - other * other;
  if (!(radicand > 0.0)) throw NoEvanescentFieldError("no evanescent field: radicand is not positive");
  return 2 * kPi / p.lambda0() * std::sqrt(radicand);
}

double tir_phase(double theta, double n_rel) {
  const double s = std::sin(theta);
  if (!(s >= n_rel)) throw std::domain_error("tir_phase: angle below critical angle");
  const double c = std::cos(theta);
  return 2 * std::atan2(std::sqrt(s * s - n_rel * n_rel), c);
}

ComplexReflection complex_reflection(double x, const CouplerParams& p) {
  if (!(x >= 0.0)) throw std::invalid_argument("gap must be non-negative");
  const double b = evanescent_b(p);
  const double d1 = tir_phase(p.theta1(), p.n_gap() / p.n1());
  const double d2 = tir_phase(p.theta2(), p.n_gap() / p.n2());
  const double two_bx = 2 * b * x;
  if (std::isinf(std::cosh(two_bx))) return {1.0, wrap_phase(std::tan(d1))};

  const double ch = std::cosh(two_bx);
  double r = 1.0 - 2 * std::sin(d1) * std::sin(d2) / (ch - std::cos(d1 + d2));
  r = std::clamp(r, 0.0, 1.0);

  // Exponent of the reflection factor, read as a phase. Its 0/0 point at x = 0
  // for identical faces coincides with r = 0, where the phase is undefined.
  const double num = std::sin(d1) * std::sinh(two_bx);
  const double den = std::cos(d1) * ch - std::cos(d2);
  double delta = 0.0;
  if (den != 0.0) {
    delta = wrap_phase(num / den);
  } else if (num != 0.0) {
    delta = kPi / 2;
  }
  return {r, delta};
}

double power_reflectivity(double x, const CouplerParams& p) {
  const double r = complex_reflection(x, p).r;
  return r * r;
}

double match_gap(double alpha, const CouplerParams& p) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
  if (!std::isfinite(alpha)) throw NoSolutionError("zero target reflectivity is not attainable");
  const double target = std::exp(-alpha);
  auto excess = [&](double x) { return complex_reflection(x, p).r - target; };

  double lo = 0.0;
  if (excess(lo) > 0.0 || !(target < 1.0))
    throw NoSolutionError("target reflectivity outside attainable range [r(0), 1)");
  if (excess(lo) == 0.0) return lo;

  double hi = p.lambda0();
  int grow = 0;
  while (excess(hi) < 0.0) {
    lo = hi;
    hi *= 2;
    if (++grow > 200) throw NoSolutionError("target reflectivity not reached at any finite gap");
  }

  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double e = excess(mid);
    if (std::abs(e) < kReflectivityTol) return mid;
    if (e < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double mid = 0.5 * (lo + hi);
  if (std::abs(excess(mid)) < 1e-10) return mid;
  throw NumericalError("match_gap: bisection did not converge");
}

}  // namespace ifm
