#include "ifm/resonator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ifm/errors.hpp"

namespace ifm {

namespace {

void check_reflectivity(double R) {
  if (!(R >= 0.0 && R < 1.0)) throw std::invalid_argument("reflectivity R must lie in [0, 1)");
}

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

double clamp_unit(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace

void RingParams::validate() const {
  check_reflectivity(R);
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
}

double RingParams::finesse() const {
  const double rho = std::exp(-alpha) * std::sqrt(R);
  return std::numbers::pi * std::sqrt(rho) / (1.0 - rho);
}

double RingParams::coupling() const { return coupling_c(std::sqrt(R), alpha); }

RingParams RingParams::impedance_matched(double alpha, double delta) {
  const double r = std::exp(-alpha);
  return RingParams{r * r, alpha, 2 * std::numbers::pi - delta, delta};
}

double coupling_c(double r, double alpha) {
  if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("amplitude reflectivity must lie in [0, 1)");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
  const double s = std::exp(-alpha);
  const double d = 1.0 - s * r;
  return -std::expm1(-2 * alpha) * (1.0 - r * r) / (d * d);
}

double steady_eta(const RingParams& rp, double detuning_phase) {
  rp.validate();
  const double c = rp.coupling();
  const double k = 2 * rp.finesse() / std::numbers::pi *
                   std::sin((rp.delta + rp.phi + detuning_phase) / 2);
  return clamp_unit(1.0 - c / (1.0 + k * k));
}

Complex partial_amplitude(int n, double R, double psi) {
  if (n < 0) throw std::invalid_argument("round-trip count must be non-negative");
  check_reflectivity(R);
  const Complex phase = std::polar(1.0, psi);
  const Complex q = R * phase;
  // sum_{k<n} q^k; the ratio form is singular only at q == 1, impossible for R < 1.
  const Complex geometric = (1.0 - std::pow(q, n)) / (1.0 - q);
  return std::sqrt(R) * (-1.0 + (1.0 - R) * phase * geometric);
}

Complex partial_amplitude_direct(int n, double R, double psi) {
  if (n < 0) throw std::invalid_argument("round-trip count must be non-negative");
  check_reflectivity(R);
  const Complex phase = std::polar(1.0, psi);
  const double root = std::sqrt(R);
  Complex total = -root;
  // B_i = sqrt(1-R) sqrt(R) sqrt(1-R) e^{i psi} (R e^{i psi})^{i-1}
  Complex term = (1.0 - R) * root * phase;
  for (int i = 1; i <= n; ++i) {
    total += term;
    term *= R * phase;
  }
  return total;
}

double asymptotic_spectral_ratio(double R, double psi) {
  check_reflectivity(R);
  const Complex phase = std::polar(1.0, psi);
  return R * std::norm(1.0 - phase) / std::norm(1.0 - R * phase);
}

double asymptotic_spectral_ratio_alt(double R, double psi) {
  check_reflectivity(R);
  const double one_minus = 1.0 - R;
  // 1 - 2 R cos psi + R^2 regrouped so that it keeps full precision near resonance.
  const double half_sin = std::sin(psi / 2);
  const double denom = one_minus * one_minus + 4 * R * half_sin * half_sin;
  return 1.0 - one_minus * one_minus / denom;
}

double coherence_factor(int j, const SourceSpec& source) {
  if (!source.is_pulse()) return 1.0;
  const double a = *source.a;
  return std::exp(-static_cast<double>(j) * j / (4 * a * a));
}

double eta_n(double R, int n, const SourceSpec& source) {
  check_reflectivity(R);
  if (n < 0) throw std::invalid_argument("round-trip count must be non-negative");
  source.validate();
  if (R == 0.0) return 0.0;

  const double log_r = std::log(R);
  if (!source.is_pulse() && n * std::abs(log_r) > 700.0) return std::exp((2.0 * n + 1) * log_r);

  CompensatedSum sum;
  for (int j = n; j >= 1; --j) {
    const double near = std::exp((j - 1) * log_r);
    const double far = std::exp((2.0 * n - j) * log_r);
    sum.add((near + far) * coherence_factor(j, source));
  }
  const double bracket = std::exp(2.0 * n * log_r) - 1.0 + 2.0 * sum.value();
  return clamp_unit(R * (1.0 - (1.0 - R) / (1.0 + R) * bracket));
}

EtaCurve eta_curve(double R, int n_max, const SourceSpec& source) {
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  EtaCurve curve{{}, {}, source, R};
  curve.n_values.reserve(n_max + 1);
  curve.eta_values.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    curve.n_values.push_back(n);
    curve.eta_values.push_back(eta_n(R, n, source));
  }
  return curve;
}

namespace {

double eta_limit_on(double R, double a, const FrequencyGrid& grid) {
  const double one_minus = 1.0 - R;
  const double resonant = grid.integrate([&](double u) {
    const double au = a * u;
    return std::exp(-au * au) / (1.0 - 2 * R * std::cos(u) + R * R);
  });
  const double norm = grid.integrate([&](double u) {
    const double au = a * u;
    return std::exp(-au * au);
  });
  return 1.0 - one_minus * one_minus * resonant / norm;
}

}  // namespace

double eta_limit(double R, const SourceSpec& source, const FrequencyGrid& grid) {
  check_reflectivity(R);
  source.validate();
  if (!source.is_pulse()) return 0.0;
  const double a = *source.a;
  if (!grid.covers(a)) throw NumericalError("eta_limit: grid truncates the Gaussian weight above 1e-12");
  const double coarse = eta_limit_on(R, a, grid);
  const double fine = eta_limit_on(R, a, grid.refined());
  if (std::abs(fine - coarse) > 1e-8) throw NumericalError("eta_limit: quadrature not converged");
  return clamp_unit(fine);
}

double eta_limit(double R, const SourceSpec& source) {
  if (!source.is_pulse()) return eta_limit(R, source, make_grid(1.0, 3, 1.0));
  return eta_limit(R, source, make_grid(*source.a));
}

double eta_limit_small_angle(double R, double a) {
  check_reflectivity(R);
  if (!(a > 0.0)) throw std::invalid_argument("a must be positive");
  const double x = a * (1.0 - R) / std::sqrt(R);
  // erfcx(x) = exp(x^2) erfc(x); the direct product is accurate for x < ~25.
  const double erfcx = x < 25.0 ? std::exp(x * x) * std::erfc(x)
                                : 1.0 / (x * std::sqrt(std::numbers::pi)) * (1.0 - 0.5 / (x * x));
  return 1.0 - std::sqrt(std::numbers::pi) * x * erfcx;
}

}  // namespace ifm
