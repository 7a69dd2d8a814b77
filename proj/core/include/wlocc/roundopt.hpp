#pragma once

// Finite-round weak-measurement schedules and round-complexity bounds.
//
// Every schedule is produced by a descending first-order recursion. Gains
// are normalized: the expected concurrence contributed by a stage is its
// gain times a state-dependent prefactor.

#include <cmath>
#include <string_view>
#include <vector>

#include "wlocc/scalar.hpp"
#include "wlocc/wclass.hpp"

namespace wlocc {

enum class ScheduleKind { Star, Step2, Step3 };

std::string_view schedule_kind_name(ScheduleKind kind);

struct EpsilonSchedule {
  ScheduleKind kind = ScheduleKind::Star;
  std::vector<double> epsilons;
  // Normalized gain of the schedule (prefactor 1).
  double gain = 0.0;
  // Expected concurrence for the state the schedule was built for; equal to
  // gain when no state was supplied.
  double objective = 0.0;
};

// Star task: N - 1 weak rounds by the non-star parties plus a terminal hard
// measurement. Gain = sum_k 4 prod_{j<k}(1-e_j)^{3/2} e_k sqrt(1-e_k)
//                     + 2 prod_j (1-e_j)^{3/2}.
std::vector<double> star_epsilons(int rounds);
double star_gain(const std::vector<double>& epsilons);
/// x_n2 sqrt(x_star / x_n1) over the non-star parties.
double star_prefactor(const WState& state, Party star);
/// Concurrence of the pair (star, n1) created when n2 equalizes.
double star_equalize_term(const WState& state, Party star);
double star_objective(const WState& state, Party star, const std::vector<double>& epsilons);
EpsilonSchedule star_schedule(int rounds);
EpsilonSchedule star_schedule(int rounds, const WState& state, Party star);
/// Best single epsilon repeated over the N - 1 weak rounds.
EpsilonSchedule star_uniform_schedule(int rounds, const WState& state, Party star);

// Step 2: restricted rounds by B and C subject to prod (1 - e_k) = gamma.
// Gain = sum_k 4 prod_{j<k}(1-e_j)^{3/2} e_k sqrt(1-e_k).
std::vector<double> step2_epsilons(int rounds, double gamma);
double step2_gain(const std::vector<double>& epsilons);
/// x_C sqrt(x_A / x_B).
double step2_prefactor(const WState& state);
EpsilonSchedule step2_schedule(int rounds, double gamma);

// Step 3: N3 - 1 three-party rounds plus a terminal hard measurement.
// Gain = sum_k 6 prod_{j<k}(1-e_j)^2 e_k (1-e_k) + 2 prod_j (1-e_j)^2.
std::vector<double> step3_epsilons(int rounds);
double step3_gain(const std::vector<double>& epsilons);
/// x_B x_C / x_A.
double step3_prefactor(const WState& state);
EpsilonSchedule step3_schedule(int rounds);
EpsilonSchedule step3_uniform_schedule(int rounds);

/// 2 (1 - x_C / x_B) sqrt(x_A x_B): concurrence left by C equalizing.
double step1_term(const WState& state);

struct SplitResult {
  int n2 = 0;
  int n3 = 0;
  bool step1_round = false;
  double objective = 0.0;
  std::vector<double> step2;
  std::vector<double> step3;
};

/// Objective of a fixed (N2, N3) split on a sorted tripartite state. N3 = 1
/// is the terminal measurement alone.
double split_objective(const WState& state, int n2, int n3);

/// Best split of `rounds` BLOCC rounds between Step 2 and Step 3. The C
/// equalization costs one round when x_B != x_C. Ties go to the smaller N2.
SplitResult split_search(int rounds, const WState& state, double tol = kDefaultTol);

/// ceil(1/(1-P) - 2), clamped at 0.
int min_rounds_for_probability(double p_tot);
/// ceil(1/(3(1-P))).
int min_broadcasts(double p_tot);
/// 1 - 1/(3N).
Rational max_probability_for_blocks(int n_blocks);
double max_probability_for_blocks_double(int n_blocks);

/// Golden-section maximization of f on [lo, hi].
template <class F>
double golden_section_max(F&& f, double lo, double hi, double tol = 1e-12) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace wlocc
