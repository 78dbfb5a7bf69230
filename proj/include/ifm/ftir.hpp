#pragma once

// Frustrated-total-internal-reflection coupler between a prism and the
// resonator, s-polarized light.

namespace ifm {

/// Which index appears under the square root of the decay constant.
enum class DecayIndex {
  gap,      // n1^2 sin^2(theta1) - n_gap^2: decay inside the low-index gap
  printed,  // n1^2 sin^2(theta1) - n2^2: literal form, imaginary for n1 == n2
};

class CouplerParams {
 public:
  /// Throws std::invalid_argument on any out-of-range field or when the
  /// prism face is not in total reflection against the gap medium.
  CouplerParams(double lambda0, double n1, double n2, double n_gap, double theta1,
                DecayIndex decay = DecayIndex::gap);

  /// 633 nm, n1 = n2 = 1.5, air gap, 45 degrees.
  static CouplerParams reference();

  double lambda0() const noexcept { return lambda0_; }
  double n1() const noexcept { return n1_; }
  double n2() const noexcept { return n2_; }
  double n_gap() const noexcept { return n_gap_; }
  double theta1() const noexcept { return theta1_; }
  DecayIndex decay() const noexcept { return decay_; }

  /// Refraction angle inside the resonator, n1 sin(theta1) = n2 sin(theta2).
  /// Throws std::domain_error when no refracted wave exists.
  double theta2() const;

 private:
  double lambda0_, n1_, n2_, n_gap_, theta1_;
  DecayIndex decay_;
};

struct ComplexReflection {
  double r;      // amplitude magnitude in [0, 1]
  double delta;  // phase in (-pi, pi]
};

/// Wraps an angle into (-pi, pi].
double wrap_phase(double angle);

/// Evanescent decay constant in 1/m. Throws NoEvanescentFieldError when the
/// radicand is not positive.
double evanescent_b(const CouplerParams& p);

/// s-polarized total-reflection phase, tan(delta/2) = sqrt(sin^2 t - n^2) / cos t,
/// with n_rel the low/high index ratio. Throws std::domain_error below the
/// critical angle.
double tir_phase(double theta, double n_rel);

/// Field reflection r e^{i delta} of the coupler at gap x (meters).
ComplexReflection complex_reflection(double x, const CouplerParams& p);

/// Power reflectivity |r(x)|^2.
double power_reflectivity(double x, const CouplerParams& p);

/// Gap x_m with |r(x_m)| = exp(-alpha), found by bisection. Throws
/// NoSolutionError when the target is unreachable and NumericalError when
/// bisection does not converge.
double match_gap(double alpha, const CouplerParams& p);

}  // namespace ifm
