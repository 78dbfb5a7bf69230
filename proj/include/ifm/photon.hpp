#pragma once

// Single-photon reading of the classical energy ratios: probabilities of the
// four fates of a photon sent into the resonator, and a Monte Carlo check.

#include <cstdint>
#include <string_view>
#include <vector>

namespace ifm {

enum class Outcome { DR, DT, EXPLODE, LOST };

std::string_view outcome_name(Outcome o) noexcept;

struct OutcomeDistribution {
  double p_dr = 0.0;
  double p_dt = 0.0;
  double p_explode = 0.0;
  double p_lost = 0.0;

  double total() const noexcept { return p_dr + p_dt + p_explode + p_lost; }
  double probability(Outcome o) const noexcept;
  /// Throws std::domain_error unless every entry is in [0, 1] and the sum is 1 to 1e-12.
  void validate() const;
};

struct TrialRecord {
  std::int64_t trial_id = 0;
  Outcome outcome = Outcome::LOST;
  bool detected = false;
};

struct TrialRun {
  std::vector<TrialRecord> records;
  OutcomeDistribution empirical;  // counts / trials, inefficiency folded into p_lost
};

/// Object in the round-trip path: (R, R(1-R), (1-R)^2, 0) for (D_r, explode, D_t, lost).
/// Without the object and with resonance fully built up, every photon reaches D_t.
OutcomeDistribution exact_distribution(double R, bool bomb_present);

/// Object absent, cw drive, only n round trips of build-up: D_r fires with eta_n.
OutcomeDistribution exact_distribution_after(double R, int round_trips);

/// Detector efficiency applied to the D_r and D_t entries; the misses go to p_lost.
OutcomeDistribution thinned(const OutcomeDistribution& d, double efficiency);

/// Draws `trials` photons from exact_distribution(R, bomb_present). Trial k uses
/// stream k of `seed`, so output is independent of `workers`.
TrialRun simulate_trials(double R, bool bomb_present, std::int64_t trials, double efficiency,
                         std::uint64_t seed, unsigned workers = 1);

struct IfmMerit {
  double detection_probability;  // p_dr with the object present
  double safe_fraction;          // p_dr / (p_dr + p_explode) = 1 / (2 - R)
};

IfmMerit ifm_merit(double R);

}  // namespace ifm
