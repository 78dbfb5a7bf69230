#include "ifm/transient.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ifm/random.hpp"

namespace ifm {

namespace {

void check_reflectivity(double R) {
  if (!(R >= 0.0 && R < 1.0)) throw std::invalid_argument("reflectivity R must lie in [0, 1)");
}

bool blocked_at(const std::vector<SwitchTransition>& schedule, double t, double shift) {
  bool blocked = false;
  for (const auto& tr : schedule) {
    if (tr.time_ns + shift <= t)
      blocked = tr.blocked;
    else
      break;
  }
  return blocked;
}

}  // namespace

CavityState step_cavity(const CavityState& s, double R, double psi) {
  check_reflectivity(R);
  const double feed = std::sqrt(1.0 - R);
  CavityState next = s;
  next.intracavity = s.blocked ? Complex{feed, 0.0} : feed + R * std::polar(1.0, psi) * s.intracavity;
  ++next.trips_elapsed;
  return next;
}

Complex reflected_amplitude(const CavityState& s, double R, double psi) {
  check_reflectivity(R);
  const double root = std::sqrt(R);
  if (s.blocked) return -root;
  return -root + std::sqrt(1.0 - R) * root * std::polar(1.0, psi) * s.intracavity;
}

TripEnergy trip_energy(const CavityState& s, double R, double psi) {
  const double stored = std::norm(s.intracavity);
  const CavityState next = step_cavity(s, R, psi);
  return {std::norm(reflected_amplitude(s, R, psi)), (1.0 - R) * stored,
          s.blocked ? R * stored : 0.0, std::norm(next.intracavity) - stored};
}

int rounds_to_threshold(double R, double epsilon) {
  check_reflectivity(R);
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (epsilon >= R) return 0;
  const double log_r = std::log(R);
  const double log_eps = std::log(epsilon);
  int n = static_cast<int>(std::ceil((log_eps / log_r - 1.0) / 2.0));
  n = std::max(n, 0);
  auto above = [&](int k) { return (2.0 * k + 1) * log_r > log_eps; };
  while (above(n)) ++n;
  while (n > 0 && !above(n - 1)) --n;
  return n;
}

double implied_round_trip_time_ns(double R, double epsilon, double buildup_ns) {
  const int n = rounds_to_threshold(R, epsilon);
  if (n == 0) throw std::invalid_argument("threshold already met without build-up");
  return buildup_ns / n;
}

EtaCurve build_up_curve(double R, int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  EtaCurve curve{{}, {}, SourceSpec::cw(), R};
  CavityState s;
  for (int n = 0; n <= n_max; ++n) {
    curve.n_values.push_back(n);
    curve.eta_values.push_back(std::norm(reflected_amplitude(s, R, 0.0)));
    s = step_cavity(s, R, 0.0);
  }
  return curve;
}

void SwitchScenario::validate() const {
  if (!(round_trip_time_ns > 0.0)) throw std::invalid_argument("round-trip time must be positive");
  if (!(photon_rate_per_ns > 0.0)) throw std::invalid_argument("photon rate must be positive");
  if (!(duration_ns > 0.0)) throw std::invalid_argument("duration must be positive");
  if (!(pockels_reaction_ns >= 0.0)) throw std::invalid_argument("Pockels reaction time must be >= 0");
  if (!(info_delay_ns >= 0.0)) throw std::invalid_argument("info delay must be >= 0");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const double t = schedule[k].time_ns;
    if (!(t >= 0.0 && t <= duration_ns)) throw std::invalid_argument("schedule time outside [0, duration]");
    if (k > 0 && !(t > schedule[k - 1].time_ns))
      throw std::invalid_argument("schedule times must be strictly increasing");
  }
}

std::string_view detector_name(Detector d) noexcept {
  switch (d) {
    case Detector::DR: return "DR";
    case Detector::DT: return "DT";
    case Detector::DP: return "DP";
  }
  return "?";
}

std::vector<TripProbabilities> trip_probabilities(const SwitchScenario& sc, double R,
                                                  double extra_delay_ns) {
  sc.validate();
  check_reflectivity(R);
  const auto trips = static_cast<std::size_t>(std::ceil(sc.duration_ns / sc.round_trip_time_ns)) + 1;
  const double shift = sc.pockels_reaction_ns + extra_delay_ns;

  std::vector<TripProbabilities> table;
  table.reserve(trips);
  CavityState s;
  for (std::size_t k = 0; k < trips; ++k) {
    s.blocked = blocked_at(sc.schedule, k * sc.round_trip_time_ns, shift);
    if (s.blocked) {
      table.push_back({R, (1.0 - R) * (1.0 - R), R * (1.0 - R)});
    } else {
      const double p_dr = std::min(1.0, std::norm(reflected_amplitude(s, R, sc.psi)));
      table.push_back({p_dr, 1.0 - p_dr, 0.0});
    }
    s = step_cavity(s, R, sc.psi);
  }
  return table;
}

std::vector<ClickTimeline> run_switch_experiment(const SwitchScenario& sc, double R,
                                                 std::uint64_t seed) {
  const std::string_view tags[] = {kInstantaneous, kDelayed};
  const double delays[] = {0.0, sc.info_delay_ns};

  std::vector<ClickTimeline> out;
  for (std::size_t h = 0; h < 2; ++h) {
    const auto table = trip_probabilities(sc, R, delays[h]);
    ClickTimeline timeline{std::string(tags[h]), {}};
    CounterRng rng(seed, h);
    double t = rng.exponential(sc.photon_rate_per_ns);
    while (t <= sc.duration_ns) {
      const auto trip = std::min(table.size() - 1, static_cast<std::size_t>(t / sc.round_trip_time_ns));
      const auto& p = table[trip];
      const double u = rng.uniform();
      const Detector d = u < p.p_dr ? Detector::DR : (u < p.p_dr + p.p_dp ? Detector::DP : Detector::DT);
      timeline.events.push_back({t, d, timeline.hypothesis});
      t += rng.exponential(sc.photon_rate_per_ns);
    }
    out.push_back(std::move(timeline));
  }
  return out;
}

std::optional<double> first_click(const ClickTimeline& t, Detector detector, double from_ns) {
  for (const auto& e : t.events)
    if (e.time_ns >= from_ns && e.detector == detector) return e.time_ns;
  return std::nullopt;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    const double fa = static_cast<double>(i) / a.size();
    const double fb = static_cast<double>(j) / b.size();
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

double ks_critical(std::size_t n1, std::size_t n2, double alpha) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return c * std::sqrt(static_cast<double>(n1 + n2) / (static_cast<double>(n1) * n2));
}

}  // namespace ifm
