#include "ifm/photon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "ifm/random.hpp"
#include "ifm/resonator.hpp"

namespace ifm {

namespace {

void check_reflectivity(double R) {
  if (!(R >= 0.0 && R < 1.0)) throw std::invalid_argument("reflectivity R must lie in [0, 1)");
}

Outcome sample(const OutcomeDistribution& d, double u) {
  if (u < d.p_dr) return Outcome::DR;
  u -= d.p_dr;
  if (u < d.p_explode) return Outcome::EXPLODE;
  u -= d.p_explode;
  if (u < d.p_dt) return Outcome::DT;
  // Rounding in the cumulative sum can leave u just above p_dt when p_lost is 0.
  return d.p_lost > 0.0 ? Outcome::LOST : (d.p_dt > 0.0 ? Outcome::DT : Outcome::DR);
}

}  // namespace

std::string_view outcome_name(Outcome o) noexcept {
  switch (o) {
    case Outcome::DR: return "DR";
    case Outcome::DT: return "DT";
    case Outcome::EXPLODE: return "EXPLODE";
    case Outcome::LOST: return "LOST";
  }
  return "?";
}

double OutcomeDistribution::probability(Outcome o) const noexcept {
  switch (o) {
    case Outcome::DR: return p_dr;
    case Outcome::DT: return p_dt;
    case Outcome::EXPLODE: return p_explode;
    case Outcome::LOST: return p_lost;
  }
  return 0.0;
}

void OutcomeDistribution::validate() const {
  for (double p : {p_dr, p_dt, p_explode, p_lost})
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("outcome probability outside [0, 1]");
  if (std::abs(total() - 1.0) > 1e-12) throw std::domain_error("outcome probabilities do not sum to 1");
}

OutcomeDistribution exact_distribution(double R, bool bomb_present) {
  check_reflectivity(R);
  if (!bomb_present) return {0.0, 1.0, 0.0, 0.0};
  const double t = 1.0 - R;
  return {R, t * t, R * t, 0.0};
}

OutcomeDistribution exact_distribution_after(double R, int round_trips) {
  const double eta = eta_n(R, round_trips, SourceSpec::cw());
  return {eta, 1.0 - eta, 0.0, 0.0};
}

OutcomeDistribution thinned(const OutcomeDistribution& d, double efficiency) {
  if (!(efficiency >= 0.0 && efficiency <= 1.0)) throw std::invalid_argument("efficiency must lie in [0, 1]");
  const double missed = (1.0 - efficiency) * (d.p_dr + d.p_dt);
  return {d.p_dr * efficiency, d.p_dt * efficiency, d.p_explode, d.p_lost + missed};
}

TrialRun simulate_trials(double R, bool bomb_present, std::int64_t trials, double efficiency,
                         std::uint64_t seed, unsigned workers) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(efficiency >= 0.0 && efficiency <= 1.0)) throw std::invalid_argument("efficiency must lie in [0, 1]");
  const OutcomeDistribution exact = exact_distribution(R, bomb_present);

  TrialRun run;
  run.records.resize(static_cast<std::size_t>(trials));
  auto fill = [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t k = begin; k < end; ++k) {
      CounterRng rng(seed, static_cast<std::uint64_t>(k));
      TrialRecord& rec = run.records[static_cast<std::size_t>(k)];
      rec.trial_id = k;
      rec.outcome = sample(exact, rng.uniform());
      const double u_detect = rng.uniform();
      const bool counted = rec.outcome == Outcome::DR || rec.outcome == Outcome::DT;
      rec.detected = counted ? u_detect < efficiency : rec.outcome == Outcome::EXPLODE;
    }
  };

  workers = std::clamp(workers, 1u, 64u);
  if (workers == 1 || trials < 4096) {
    fill(0, trials);
  } else {
    std::vector<std::jthread> pool;
    const std::int64_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::int64_t begin = std::min<std::int64_t>(trials, w * chunk);
      const std::int64_t end = std::min<std::int64_t>(trials, begin + chunk);
      pool.emplace_back(fill, begin, end);
    }
  }

  std::int64_t dr = 0, dt = 0, explode = 0, lost = 0;
  for (const auto& rec : run.records) {
    if (rec.outcome == Outcome::EXPLODE)
      ++explode;
    else if (!rec.detected || rec.outcome == Outcome::LOST)
      ++lost;
    else if (rec.outcome == Outcome::DR)
      ++dr;
    else
      ++dt;
  }
  const double n = static_cast<double>(trials);
  run.empirical = {dr / n, dt / n, explode / n, lost / n};
  return run;
}

IfmMerit ifm_merit(double R) {
  check_reflectivity(R);
  return {R, 1.0 / (2.0 - R)};
}

}  // namespace ifm
