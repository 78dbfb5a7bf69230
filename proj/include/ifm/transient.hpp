#pragma once

// Trip-by-trip evolution of the intracavity field under a cw drive, and a
// photon-counting harness for switching the round-trip path on and off.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ifm/resonator.hpp"
#include "ifm/spectral.hpp"

namespace ifm {

/// Field just inside the input coupler, normalized to unit incident amplitude.
struct CavityState {
  Complex intracavity{0.0, 0.0};
  int trips_elapsed = 0;
  bool blocked = false;  // round-trip path redirected (object present / Pockels on)
};

/// One round trip: c' = sqrt(1-R) + R e^{i psi} c, or c' = sqrt(1-R) when blocked.
CavityState step_cavity(const CavityState& s, double R, double psi);

/// Amplitude leaving toward D_r during the trip that starts in state s:
/// -sqrt(R) + sqrt(1-R) sqrt(R) e^{i psi} c, and -sqrt(R) when blocked.
Complex reflected_amplitude(const CavityState& s, double R, double psi);

/// Power bookkeeping of one trip. The four terms add up to the unit input.
struct TripEnergy {
  double reflected;
  double transmitted;
  double redirected;
  double stored_increment;
};
TripEnergy trip_energy(const CavityState& s, double R, double psi);

/// Smallest n with R^{2n+1} <= epsilon; 0 when epsilon >= R.
int rounds_to_threshold(double R, double epsilon);

/// Round-trip time (ns) implied if `rounds_to_threshold(R, epsilon)` trips
/// take `buildup_ns`.
double implied_round_trip_time_ns(double R, double epsilon, double buildup_ns);

/// Reflected power per trip, n = 0..n_max, from iterating step_cavity at psi = 0.
EtaCurve build_up_curve(double R, int n_max);

struct SwitchTransition {
  double time_ns;
  bool blocked;
};

struct SwitchScenario {
  std::vector<SwitchTransition> schedule;  // cavity starts empty and unblocked at t = 0
  double round_trip_time_ns = 0.01;
  double photon_rate_per_ns = 0.1;
  double pockels_reaction_ns = 0.1;
  double info_delay_ns = 0.0;  // delay of the "delayed" hypothesis
  double duration_ns = 100.0;
  double psi = 0.0;

  /// Throws std::invalid_argument on a bad schedule or non-positive rates.
  void validate() const;
};

enum class Detector { DR, DT, DP };
std::string_view detector_name(Detector d) noexcept;

struct ClickEvent {
  double time_ns;
  Detector detector;
  std::string hypothesis;
};

struct ClickTimeline {
  std::string hypothesis;
  std::vector<ClickEvent> events;
};

inline constexpr std::string_view kInstantaneous = "instantaneous";
inline constexpr std::string_view kDelayed = "delayed";

/// Per-trip detector probabilities under one hypothesis about when a boundary
/// change takes effect (transition time + reaction + extra_delay_ns).
struct TripProbabilities {
  double p_dr;
  double p_dt;
  double p_dp;
};
std::vector<TripProbabilities> trip_probabilities(const SwitchScenario& sc, double R,
                                                  double extra_delay_ns);

/// Poisson photon arrivals; each photon's detector is drawn from the trip it
/// falls in. Returns the instantaneous timeline followed by the delayed one.
std::vector<ClickTimeline> run_switch_experiment(const SwitchScenario& sc, double R,
                                                 std::uint64_t seed);

/// Time of the first click on `detector` at or after `from_ns`.
std::optional<double> first_click(const ClickTimeline& t, Detector detector, double from_ns);

/// Two-sample Kolmogorov-Smirnov statistic sup |F1 - F2|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Critical value of the two-sample statistic at significance level `alpha`.
double ks_critical(std::size_t n1, std::size_t n2, double alpha);

}  // namespace ifm
