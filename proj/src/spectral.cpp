#include "ifm/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace ifm {

void require_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::domain_error(std::string("non-finite complex value: ") + what);
}

FrequencyGrid::FrequencyGrid(std::vector<double> samples, std::vector<double> weights)
    : samples_(std::move(samples)), weights_(std::move(weights)) {
  const std::size_t n = samples_.size();
  if (n == 0) throw std::invalid_argument("frequency grid is empty");
  if (weights_.size() != n) throw std::invalid_argument("grid weights and samples differ in length");
  const double scale = std::abs(samples_.back()) + std::abs(samples_.front());
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(samples_[k]) || !(weights_[k] > 0.0))
      throw std::invalid_argument("grid samples must be finite with positive weights");
    if (k > 0 && !(samples_[k] > samples_[k - 1]))
      throw std::invalid_argument("grid samples must be strictly increasing");
    if (std::abs(samples_[k] + samples_[n - 1 - k]) > 1e-12 * scale)
      throw std::invalid_argument("grid must be symmetric about zero detuning");
  }
}

FrequencyGrid FrequencyGrid::refined() const {
  const int points = static_cast<int>(2 * samples_.size() - 1);
  const int half = (points - 1) / 2;
  const double step = half_width() / half;
  std::vector<double> s(points), w(points, step);
  for (int k = 0; k < points; ++k) s[k] = step * (k - half);
  w.front() = w.back() = 0.5 * step;
  return FrequencyGrid(std::move(s), std::move(w));
}

bool FrequencyGrid::covers(double a, double floor) const {
  const double edge = a * half_width();
  return std::exp(-edge * edge) <= floor;
}

SourceSpec SourceSpec::cw(double amplitude_scale) {
  SourceSpec s{SourceKind::cw, std::nullopt, amplitude_scale};
  s.validate();
  return s;
}

SourceSpec SourceSpec::pulse(double a, double amplitude_scale) {
  SourceSpec s{SourceKind::pulse, a, amplitude_scale};
  s.validate();
  return s;
}

void SourceSpec::validate() const {
  if (!(amplitude_scale > 0.0) || !std::isfinite(amplitude_scale))
    throw std::invalid_argument("amplitude_scale must be positive");
  if (kind == SourceKind::pulse) {
    if (!a || !(*a > 0.0) || !std::isfinite(*a))
      throw std::invalid_argument("pulse source requires a > 0");
  } else if (a) {
    throw std::invalid_argument("cw source carries no coherence ratio a");
  }
}

SpectralAmplitude::SpectralAmplitude(FrequencyGrid grid, std::vector<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size())
    throw std::invalid_argument("spectral values and grid differ in length");
  for (const auto& v : values_) require_finite(v, "spectral amplitude");
}

SpectralAmplitude SpectralAmplitude::cw_line(double amplitude_scale) {
  SpectralAmplitude s;
  s.line_amplitude_ = amplitude_scale;
  return s;
}

const FrequencyGrid& SpectralAmplitude::grid() const {
  if (!grid_) throw std::logic_error("cw line has no sampling grid");
  return *grid_;
}

double gaussian_sigma(double a) { return 1.0 / (a * std::sqrt(2.0)); }

FrequencyGrid make_grid(double a, int points, double span_sigmas) {
  if (points < 3 || points % 2 == 0)
    throw std::invalid_argument("grid points must be odd and >= 3");
  if (!(span_sigmas > 0.0)) throw std::invalid_argument("span_sigmas must be positive");
  if (!(a > 0.0)) throw std::invalid_argument("coherence ratio a must be positive");
  const int half = (points - 1) / 2;
  const double step = span_sigmas * gaussian_sigma(a) / half;
  std::vector<double> s(points), w(points, step);
  for (int k = 0; k < points; ++k) s[k] = step * (k - half);
  w.front() = w.back() = 0.5 * step;
  return FrequencyGrid(std::move(s), std::move(w));
}

SpectralAmplitude gaussian_spectrum(const SourceSpec& source, const FrequencyGrid& grid) {
  source.validate();
  if (!source.is_pulse()) throw std::invalid_argument("gaussian_spectrum requires a pulse source");
  const double a = *source.a;
  std::vector<Complex> values;
  values.reserve(grid.size());
  for (double u : grid.samples()) {
    const double au = a * u;
    values.emplace_back(source.amplitude_scale * std::exp(-0.5 * au * au), 0.0);
  }
  return SpectralAmplitude(grid, std::move(values));
}

double beam_energy(const SpectralAmplitude& spec) {
  if (spec.is_cw_line()) return spec.line_amplitude() * spec.line_amplitude();
  const auto& grid = spec.grid();
  const auto values = spec.values();
  const auto weights = grid.weights();
  double sum = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) sum += weights[k] * std::norm(values[k]);
  return sum;
}

}  // namespace ifm
