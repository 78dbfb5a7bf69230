#pragma once

// Ring-resonator response: the steady-state reflected power of a lossy
// impedance-matched cavity, and the lossless round-trip series for the
// reflected amplitude and energy ratio after n round trips.

#include <vector>

#include "ifm/spectral.hpp"

namespace ifm {

/// Coupler reflectivity plus the round-trip loss and phases of the cavity.
/// The finesse is derived from R and alpha on every access.
struct RingParams {
  double R = 0.0;      // power reflectivity, [0, 1)
  double alpha = 0.0;  // round-trip amplitude loss constant, >= 0
  double phi = 0.0;    // total round-trip phase
  double delta = 0.0;  // coupler reflection phase

  void validate() const;
  /// pi sqrt(rho) / (1 - rho) with rho = exp(-alpha) sqrt(R).
  double finesse() const;
  double coupling() const;

  /// Parameters with |r| = exp(-alpha) and phi + delta = 2 pi N.
  static RingParams impedance_matched(double alpha, double delta = 0.0);
};

struct EtaCurve {
  std::vector<int> n_values;
  std::vector<double> eta_values;
  SourceSpec source;
  double R = 0.0;
};

/// (1 - e^{-2 alpha})(1 - r^2) / (1 - e^{-alpha} r)^2. Equals 1 at r = e^{-alpha}.
double coupling_c(double r, double alpha);

/// Steady-state reflected/incoming power with phi shifted by detuning_phase.
double steady_eta(const RingParams& rp, double detuning_phase = 0.0);

/// Reflected amplitude B_n / A after n round trips, closed geometric form.
Complex partial_amplitude(int n, double R, double psi);
/// Same quantity by summing the round-trip contributions one at a time.
Complex partial_amplitude_direct(int n, double R, double psi);

/// |B_r / A|^2 = R |1 - e^{i psi}|^2 / |1 - R e^{i psi}|^2.
double asymptotic_spectral_ratio(double R, double psi);
/// 1 - (1 - R)^2 / (1 - 2 R cos psi + R^2).
double asymptotic_spectral_ratio_alt(double R, double psi);

/// Envelope factor of the j-th cross term: 1 for cw, exp(-j^2 / (4 a^2)) for a
/// Gaussian pulse.
double coherence_factor(int j, const SourceSpec& source);

/// Reflected/incident energy after n round trips.
///
/// Evaluates
///   R { 1 - (1-R)/(1+R) [ R^{2n} - 1 + 2 sum_{j=1..n} (1 + R^{2n-2j+1}) R^{j-1} Phi(j) ] }
/// with the sum accumulated from j = n downward (compensated). For cw sources
/// with n |ln R| > 700 the powers underflow and R^{2n+1} is returned directly.
double eta_n(double R, int n, const SourceSpec& source);

/// eta_n for n = 0..n_max.
EtaCurve eta_curve(double R, int n_max, const SourceSpec& source);

/// Asymptotic energy ratio for n -> infinity. Symbolic 0 for cw. For pulses a
/// ratio of two trapezoid quadratures over `grid`; the result is checked
/// against a refined grid and NumericalError is thrown if it moves by more
/// than 1e-8, or if the grid does not cover the Gaussian to 1e-12 of its peak.
double eta_limit(double R, const SourceSpec& source, const FrequencyGrid& grid);
double eta_limit(double R, const SourceSpec& source);

/// Small-angle closed form of eta_limit (1 - cos u ~ u^2 / 2):
///   1 - sqrt(pi) a (1-R) / sqrt(R) * erfcx(a (1-R) / sqrt(R)).
double eta_limit_small_angle(double R, double a);

}  // namespace ifm
