#include "wlocc/propcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wlocc {

std::string monotone_case_name(MonotoneCase c) {
  static constexpr const char* names[] = {"i", "ii", "iii", "iv", "v", "vi"};
  return names[static_cast<int>(c)];
}

Party measuring_party(MonotoneCase c) {
  switch (c) {
    case MonotoneCase::II:
    case MonotoneCase::IV: return Party::B;
    case MonotoneCase::III: return Party::C;
    default: return Party::A;
  }
}

MonotoneSample draw_sample(MonotoneCase c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  // Ratios x_B / x_A and x_C / x_B.
  double r2 = uniform(0.05, 0.95);
  double r3 = uniform(0.02, 0.95);
  switch (c) {
    case MonotoneCase::I:
      if (unit(rng) < 0.25) r3 = 1.0;
      break;
    case MonotoneCase::II:
      break;
    case MonotoneCase::III:
      if (unit(rng) < 0.25) r2 = 1.0;
      break;
    case MonotoneCase::IV:
      r3 = 1.0;
      break;
    case MonotoneCase::V:
      r2 = 1.0;
      break;
    case MonotoneCase::VI:
      r2 = r3 = 1.0;
      break;
  }
  const double total = uniform(0.2, 1.0);
  const double xa = total / (1.0 + r2 + r2 * r3);
  const WState state = make_state(xa, r2 * xa, r2 * r3 * xa);

  const double a1 = uniform(0.05, 0.95);
  const double c1 = std::clamp(a1 + uniform(-0.2, 0.2), 0.01, 0.99);
  const double a2 = 1.0 - a1;
  KrausElement e1{a1, c1, 0.0, 0.0};
  KrausElement e2{a2, 1.0 - c1, 0.0, 0.0};
  if (unit(rng) < 0.5) {
    // b_2 = -sqrt(a_1) b_1 / sqrt(a_2) cancels the off-diagonal completeness term.
    const double rho = std::sqrt(a2 * (1.0 - c1) / 2.0) * unit(rng);
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    e1.b_re = rho * std::cos(phi);
    e1.b_im = rho * std::sin(phi);
    const double s = -std::sqrt(a1 / a2);
    e2.b_re = s * e1.b_re;
    e2.b_im = s * e1.b_im;
    e2.c = std::max(0.0, 1.0 - c1 - e1.b_norm2() - e2.b_norm2());
  }
  return {state, LocalMeasurement{measuring_party(c), {e1, e2}}};
}

MonotoneDeltas monotone_deltas(const WState& state, const LocalMeasurement& m) {
  MonotoneDeltas d;
  const auto outcomes = apply_measurement(state, m);
  d.eta = -eta(state);
  d.kappa = -kappa(state);
  d.zeta = -zeta(state);
  d.zeta_star = -zeta_star(state, Party::A);
  std::array<double, 3> weighted{0.0, 0.0, 0.0};
  for (const auto& o : outcomes) {
    for (Party p : kParties) weighted[index_of(p)] += o.probability * o.state[p];
    if (o.state.support_size() < 2) continue;
    d.eta += o.probability * eta(o.state);
    d.kappa += o.probability * kappa(o.state);
    d.zeta += o.probability * zeta(o.state);
    d.zeta_star += o.probability * zeta_star(o.state, Party::A);
  }
  for (Party p : kParties) {
    const double diff = weighted[index_of(p)] - state[p];
    if (p == m.party) {
      d.contraction = diff;
    } else {
      d.conservation = std::max(d.conservation, std::abs(diff));
    }
  }

  const auto sorted = sort_components(state);
  const bool nontrivial = std::abs(m.elements[0].a - m.elements[0].c) >= 0.01;
  d.strict_regime = (m.party == sorted.n1() || m.party == sorted.n2()) && nontrivial && sorted.values[2] > 0.01;
  return d;
}

bool PropcheckReport::passed() const {
  return std::all_of(cases.begin(), cases.end(), [](const CaseReport& c) {
    return c.zeta_violations == 0 && c.strict_violations == 0 && c.conservation_violations == 0;
  });
}

bool PropcheckReport::other_monotones_passed() const {
  return std::all_of(cases.begin(), cases.end(), [](const CaseReport& c) {
    return c.eta_violations == 0 && c.kappa_violations == 0 && c.zeta_star_violations == 0;
  });
}

PropcheckReport run_propcheck(std::uint64_t seed, int samples_per_case) {
  PropcheckReport report;
  report.seed = seed;
  std::mt19937_64 rng(seed);
  for (MonotoneCase c : kMonotoneCases) {
    CaseReport& r = report.cases[static_cast<int>(c)];
    r.which = c;
    const bool strict_case = c != MonotoneCase::III;
    for (int s = 0; s < samples_per_case; ++s) {
      const auto sample = draw_sample(c, rng);
      const auto d = monotone_deltas(sample.state, sample.measurement);
      ++r.samples;
      r.max_delta_eta = std::max(r.max_delta_eta, d.eta);
      r.max_delta_kappa = std::max(r.max_delta_kappa, d.kappa);
      r.max_delta_zeta = std::max(r.max_delta_zeta, d.zeta);
      r.max_delta_zeta_star = std::max(r.max_delta_zeta_star, d.zeta_star);
      r.max_conservation_error = std::max(r.max_conservation_error, d.conservation);
      r.max_contraction_excess = std::max(r.max_contraction_excess, d.contraction);
      r.zeta_violations += d.zeta > kMonotoneTol;
      r.eta_violations += d.eta > kMonotoneTol;
      r.kappa_violations += d.kappa > kMonotoneTol;
      r.zeta_star_violations += d.zeta_star > kMonotoneTol;
      r.conservation_violations += d.conservation > kConservationTol || d.contraction > kConservationTol;
      if (strict_case && d.strict_regime) {
        ++r.strict_samples;
        r.max_strict_delta_zeta = std::max(r.max_strict_delta_zeta, d.zeta);
        r.strict_violations += d.zeta > -kStrictDecrease;
      }
    }
  }
  return report;
}

}  // namespace wlocc
