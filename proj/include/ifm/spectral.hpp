#pragma once

// Frequency grids, Gaussian source spectra and beam-energy quadrature.
//
// All detunings are dimensionless: u = (omega - omega_res) * T, with T the
// cavity round-trip time. A pulse source with coherence time tau is then
// described by a single number a = tau / T.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ifm {

using Complex = std::complex<double>;

/// Throws std::domain_error if either component is NaN or infinite.
void require_finite(Complex z, const char* what);

/// Uniform, symmetric detuning grid with composite trapezoid weights.
class FrequencyGrid {
 public:
  /// Validates ordering, symmetry about zero and positive weights.
  FrequencyGrid(std::vector<double> samples, std::vector<double> weights);

  std::span<const double> samples() const noexcept { return samples_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double half_width() const noexcept { return samples_.back(); }

  /// Same span with a midpoint inserted between each pair of samples.
  FrequencyGrid refined() const;

  /// True when the weight exp(-(a u)^2) at the endpoints is below `floor`.
  bool covers(double a, double floor = 1e-12) const;

  /// Trapezoid sum of f(u) over the grid.
  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t k = 0; k < samples_.size(); ++k) sum += weights_[k] * f(samples_[k]);
    return sum;
  }

 private:
  std::vector<double> samples_;
  std::vector<double> weights_;
};

enum class SourceKind { cw, pulse };

struct SourceSpec {
  SourceKind kind = SourceKind::cw;
  std::optional<double> a;  // tau / T, pulse only
  double amplitude_scale = 1.0;

  static SourceSpec cw(double amplitude_scale = 1.0);
  static SourceSpec pulse(double a, double amplitude_scale = 1.0);

  /// Throws std::invalid_argument when the kind/a pairing or the scale is invalid.
  void validate() const;
  bool is_pulse() const noexcept { return kind == SourceKind::pulse; }
};

/// Complex amplitude A(u) on a grid, or the symbolic single line of a cw source.
class SpectralAmplitude {
 public:
  SpectralAmplitude(FrequencyGrid grid, std::vector<Complex> values);
  static SpectralAmplitude cw_line(double amplitude_scale);

  bool is_cw_line() const noexcept { return !grid_.has_value(); }
  const FrequencyGrid& grid() const;
  std::span<const Complex> values() const noexcept { return values_; }
  double line_amplitude() const noexcept { return line_amplitude_; }

 private:
  SpectralAmplitude() = default;
  std::optional<FrequencyGrid> grid_;
  std::vector<Complex> values_;
  double line_amplitude_ = 0.0;
};

/// Standard deviation of the energy weight exp(-(a u)^2), i.e. 1 / (a sqrt 2).
double gaussian_sigma(double a);

/// Symmetric uniform grid of `points` samples spanning +-span_sigmas * gaussian_sigma(a).
/// `points` must be odd and at least 3 so that u = 0 is a sample.
FrequencyGrid make_grid(double a, int points = 4001, double span_sigmas = 8.0);

/// A(u) = amplitude_scale * exp(-(a u)^2 / 2). Rejects cw sources.
SpectralAmplitude gaussian_spectrum(const SourceSpec& source, const FrequencyGrid& grid);

/// Integral of |A(u)|^2 du by trapezoid quadrature. For the symbolic cw line the
/// line strength |A|^2 is returned.
double beam_energy(const SpectralAmplitude& spec);

}  // namespace ifm
