#include "wlocc/roundopt.hpp"

#include <cmath>
#include <limits>

#include "wlocc/error.hpp"

namespace wlocc {

std::string_view schedule_kind_name(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::Star: return "star";
    case ScheduleKind::Step2: return "step2";
    case ScheduleKind::Step3: return "step3";
  }
  return "unknown";
}

namespace {

void require_rounds(int rounds, int min) {
  if (rounds < min) {
    throw Error(Errc::ParameterOutOfRange,
                "round count " + std::to_string(rounds) + " below minimum " + std::to_string(min));
  }
}

std::pair<Party, Party> non_star_sorted(const WState& state, Party star) {
  auto [p, q] = other_parties(star);
  if (state[q] > state[p]) std::swap(p, q);
  return {p, q};
}

void require_sorted_tripartite(const WState& state, double tol) {
  if (state.classify(tol) != StateClass::Tripartite) {
    throw Error(Errc::NotTripartite, "schedule requires a tripartite state");
  }
  if (state[Party::A] < state[Party::B] || state[Party::B] < state[Party::C]) {
    throw Error(Errc::OrderViolation, "expected x_A >= x_B >= x_C");
  }
}

// Product of u_k = 1 - e_k for the step-2 recursion seeded with u_N = t.
double step2_product(int rounds, double t, std::vector<double>* u_out = nullptr) {
  std::vector<double> u(static_cast<std::size_t>(rounds));
  u.back() = t;
  for (int k = rounds - 2; k >= 0; --k) u[k] = 1.0 / (3.0 - 2.0 * std::sqrt(u[k + 1]));
  double prod = 1.0;
  for (double v : u) prod *= v;
  if (u_out) *u_out = std::move(u);
  return prod;
}

}  // namespace

std::vector<double> star_epsilons(int rounds) {
  require_rounds(rounds, 2);
  std::vector<double> eps(static_cast<std::size_t>(rounds - 1));
  double tail = 2.0;
  for (int k = rounds - 2; k >= 0; --k) {
    const double e = (4.0 - 1.5 * tail) / (6.0 - 1.5 * tail);
    const double u = 1.0 - e;
    eps[k] = e;
    tail = 4.0 * e * std::sqrt(u) + u * std::sqrt(u) * tail;
  }
  eps.back() = 1.0 / 3.0;
  return eps;
}

double star_gain(const std::vector<double>& epsilons) {
  double gain = 0.0, weight = 1.0;
  for (double e : epsilons) {
    const double u = 1.0 - e;
    gain += 4.0 * weight * e * std::sqrt(u);
    weight *= u * std::sqrt(u);
  }
  return gain + 2.0 * weight;
}

double star_prefactor(const WState& state, Party star) {
  const auto [n1, n2] = non_star_sorted(state, star);
  if (state[n1] <= 0.0) throw Error(Errc::ProductState, "non-star parties have no support");
  return state[n2] * std::sqrt(state[star] / state[n1]);
}

double star_equalize_term(const WState& state, Party star) {
  const auto [n1, n2] = non_star_sorted(state, star);
  if (state[n1] <= 0.0) throw Error(Errc::ProductState, "non-star parties have no support");
  return 2.0 * (1.0 - state[n2] / state[n1]) * std::sqrt(state[star] * state[n1]);
}

double star_objective(const WState& state, Party star, const std::vector<double>& epsilons) {
  return star_equalize_term(state, star) + star_prefactor(state, star) * star_gain(epsilons);
}

EpsilonSchedule star_schedule(int rounds) {
  EpsilonSchedule s{ScheduleKind::Star, star_epsilons(rounds), 0.0, 0.0};
  s.gain = s.objective = star_gain(s.epsilons);
  return s;
}

EpsilonSchedule star_schedule(int rounds, const WState& state, Party star) {
  EpsilonSchedule s = star_schedule(rounds);
  s.objective = star_objective(state, star, s.epsilons);
  return s;
}

EpsilonSchedule star_uniform_schedule(int rounds, const WState& state, Party star) {
  require_rounds(rounds, 2);
  const auto n = static_cast<std::size_t>(rounds - 1);
  const double e = golden_section_max([&](double x) { return star_gain(std::vector<double>(n, x)); }, 0.0, 1.0);
  EpsilonSchedule s{ScheduleKind::Star, std::vector<double>(n, e), 0.0, 0.0};
  s.gain = star_gain(s.epsilons);
  s.objective = star_objective(state, star, s.epsilons);
  return s;
}

std::vector<double> step2_epsilons(int rounds, double gamma) {
  require_rounds(rounds, 1);
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw Error(Errc::InfeasibleConstraint, "product constraint gamma must lie in (0, 1]");
  }
  if (gamma == 1.0) return std::vector<double>(static_cast<std::size_t>(rounds), 0.0);

  // The product is continuous and increasing in t = u_N, from 0 at t = 0 to
  // 1 at t = 1.
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (step2_product(rounds, mid) < gamma) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  std::vector<double> u;
  const double prod = step2_product(rounds, 0.5 * (lo + hi), &u);
  if (std::abs(prod - gamma) > 1e-12) {
    throw Error(Errc::NumericalFailure, "bisection missed the product constraint by " + std::to_string(prod - gamma));
  }
  std::vector<double> eps(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) eps[k] = 1.0 - u[k];
  return eps;
}

double step2_gain(const std::vector<double>& epsilons) {
  double gain = 0.0, weight = 1.0;
  for (double e : epsilons) {
    const double u = 1.0 - e;
    gain += 4.0 * weight * e * std::sqrt(u);
    weight *= u * std::sqrt(u);
  }
  return gain;
}

double step2_prefactor(const WState& state) {
  return state[Party::C] * std::sqrt(state[Party::A] / state[Party::B]);
}

EpsilonSchedule step2_schedule(int rounds, double gamma) {
  EpsilonSchedule s{ScheduleKind::Step2, step2_epsilons(rounds, gamma), 0.0, 0.0};
  s.gain = s.objective = step2_gain(s.epsilons);
  return s;
}

std::vector<double> step3_epsilons(int rounds) {
  require_rounds(rounds, 2);
  std::vector<double> eps(static_cast<std::size_t>(rounds - 1));
  double tail = 2.0;
  for (int k = rounds - 2; k >= 0; --k) {
    const double e = 1.0 - 3.0 / (6.0 - tail);
    const double u = 1.0 - e;
    eps[k] = e;
    tail = 6.0 * e * u + u * u * tail;
  }
  eps.back() = 0.25;
  return eps;
}

double step3_gain(const std::vector<double>& epsilons) {
  double gain = 0.0, weight = 1.0;
  for (double e : epsilons) {
    const double u = 1.0 - e;
    gain += 6.0 * weight * e * u;
    weight *= u * u;
  }
  return gain + 2.0 * weight;
}

double step3_prefactor(const WState& state) {
  return state[Party::B] * state[Party::C] / state[Party::A];
}

EpsilonSchedule step3_schedule(int rounds) {
  EpsilonSchedule s{ScheduleKind::Step3, step3_epsilons(rounds), 0.0, 0.0};
  s.gain = s.objective = step3_gain(s.epsilons);
  return s;
}

EpsilonSchedule step3_uniform_schedule(int rounds) {
  require_rounds(rounds, 2);
  const auto n = static_cast<std::size_t>(rounds - 1);
  const double e = golden_section_max([&](double x) { return step3_gain(std::vector<double>(n, x)); }, 0.0, 1.0);
  EpsilonSchedule s{ScheduleKind::Step3, std::vector<double>(n, e), 0.0, 0.0};
  s.gain = s.objective = step3_gain(s.epsilons);
  return s;
}

double step1_term(const WState& state) {
  return 2.0 * (1.0 - state[Party::C] / state[Party::B]) * std::sqrt(state[Party::A] * state[Party::B]);
}

double split_objective(const WState& state, int n2, int n3) {
  require_sorted_tripartite(state, kDefaultTol);
  require_rounds(n3, 1);
  if (n2 < 0) throw Error(Errc::ParameterOutOfRange, "N2 must be non-negative");
  const double gamma = std::min(1.0, state[Party::B] / state[Party::A]);
  if (n2 == 0 && gamma < 1.0 - kDefaultTol) {
    throw Error(Errc::InfeasibleConstraint, "Step 2 needs at least one round when x_A != x_B");
  }
  const double g2 = n2 > 0 ? step2_gain(step2_epsilons(n2, gamma)) : 0.0;
  const double g3 = n3 == 1 ? 2.0 : step3_gain(step3_epsilons(n3));
  return step1_term(state) + step2_prefactor(state) * g2 + step3_prefactor(state) * g3;
}

SplitResult split_search(int rounds, const WState& state, double tol) {
  require_sorted_tripartite(state, tol);
  SplitResult best;
  best.step1_round = state[Party::B] - state[Party::C] > tol;
  const int avail = rounds - (best.step1_round ? 1 : 0);
  const double gamma = std::min(1.0, state[Party::B] / state[Party::A]);
  const bool need_step2 = gamma < 1.0 - tol;
  require_rounds(avail, need_step2 ? 2 : 1);

  best.objective = -std::numeric_limits<double>::infinity();
  for (int n2 = need_step2 ? 1 : 0; n2 <= (need_step2 ? avail - 1 : 0); ++n2) {
    const int n3 = avail - n2;
    const double value = split_objective(state, n2, n3);
    if (value > best.objective) {
      best.objective = value;
      best.n2 = n2;
      best.n3 = n3;
    }
  }
  if (best.n2 > 0) best.step2 = step2_epsilons(best.n2, gamma);
  if (best.n3 > 1) best.step3 = step3_epsilons(best.n3);
  return best;
}

int min_rounds_for_probability(double p_tot) {
  if (!(p_tot >= 0.0 && p_tot < 1.0)) throw Error(Errc::ParameterOutOfRange, "P_tot must lie in [0, 1)");
  return std::max(0, static_cast<int>(std::ceil(1.0 / (1.0 - p_tot) - 2.0 - 1e-9)));
}

int min_broadcasts(double p_tot) {
  if (!(p_tot >= 0.0 && p_tot < 1.0)) throw Error(Errc::ParameterOutOfRange, "P_tot must lie in [0, 1)");
  return std::max(0, static_cast<int>(std::ceil(1.0 / (3.0 * (1.0 - p_tot)) - 1e-9)));
}

Rational max_probability_for_blocks(int n_blocks) {
  require_rounds(n_blocks, 1);
  return Rational(1) - Rational(1, 3 * n_blocks);
}

double max_probability_for_blocks_double(int n_blocks) {
  require_rounds(n_blocks, 1);
  return 1.0 - 1.0 / (3.0 * n_blocks);
}

}  // namespace wlocc
