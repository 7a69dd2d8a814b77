#pragma once

// Randomized check that eta, kappa, zeta and zeta* do not increase on
// average under binary local measurements, sampled over the six
// ordering/measuring-party configurations:
//   i   A measures, x_A > x_B >= x_C      iv  B measures, x_A > x_B = x_C
//   ii  B measures, x_A > x_B > x_C       v   A measures, x_A = x_B > x_C
//   iii C measures, x_A >= x_B > x_C      vi  A measures, x_A = x_B = x_C

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include "wlocc/wclass.hpp"

namespace wlocc {

enum class MonotoneCase { I = 0, II, III, IV, V, VI };

inline constexpr std::array<MonotoneCase, 6> kMonotoneCases{MonotoneCase::I,  MonotoneCase::II, MonotoneCase::III,
                                                           MonotoneCase::IV, MonotoneCase::V,  MonotoneCase::VI};

std::string monotone_case_name(MonotoneCase c);
Party measuring_party(MonotoneCase c);

struct MonotoneSample {
  WState state;
  LocalMeasurement measurement;
};

/// Draws a state satisfying the case's ordering and a binary measurement
/// with |a_1 - c_1| <= 0.2; half the samples carry a complex off-diagonal.
MonotoneSample draw_sample(MonotoneCase c, std::mt19937_64& rng);

struct MonotoneDeltas {
  double eta = 0.0;
  double kappa = 0.0;
  double zeta = 0.0;
  double zeta_star = 0.0;  // star party A
  double conservation = 0.0;  // max |sum p y_j - x_j| over j != K
  double contraction = 0.0;   // sum p y_K - x_K
  // The quantified regime in which zeta must drop strictly.
  bool strict_regime = false;
};

/// Average change p_1 f(y_1) + p_2 f(y_2) - f(x) for each monotone.
MonotoneDeltas monotone_deltas(const WState& state, const LocalMeasurement& m);

struct CaseReport {
  MonotoneCase which = MonotoneCase::I;
  int samples = 0;
  double max_delta_eta = -1e300;
  double max_delta_kappa = -1e300;
  double max_delta_zeta = -1e300;
  double max_delta_zeta_star = -1e300;
  int strict_samples = 0;
  // Largest zeta change within the strict regime; must stay <= -1e-8.
  double max_strict_delta_zeta = -1e300;
  double max_conservation_error = 0.0;
  double max_contraction_excess = -1e300;
  int zeta_violations = 0;
  int strict_violations = 0;
  int conservation_violations = 0;
  int eta_violations = 0;
  int kappa_violations = 0;
  int zeta_star_violations = 0;
};

struct PropcheckReport {
  std::uint64_t seed = 0;
  std::array<CaseReport, 6> cases;
  /// zeta non-increase, strict decrease and conservation.
  bool passed() const;
  /// Non-increase of eta, kappa and zeta*.
  bool other_monotones_passed() const;
};

inline constexpr double kMonotoneTol = 1e-9;
inline constexpr double kStrictDecrease = 1e-8;
inline constexpr double kConservationTol = 1e-10;

PropcheckReport run_propcheck(std::uint64_t seed, int samples_per_case);

}  // namespace wlocc
