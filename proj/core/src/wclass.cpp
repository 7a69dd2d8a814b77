#include "wlocc/wclass.hpp"

#include <cmath>

namespace wlocc {

std::optional<Party> parse_party(std::string_view text) {
  if (text.size() != 1) return std::nullopt;
  switch (text[0]) {
    case 'A': case 'a': return Party::A;
    case 'B': case 'b': return Party::B;
    case 'C': case 'c': return Party::C;
    default: return std::nullopt;
  }
}

std::string_view state_class_name(StateClass cls) {
  switch (cls) {
    case StateClass::Tripartite: return "tripartite";
    case StateClass::Bipartite: return "bipartite";
    case StateClass::Product: return "product";
  }
  return "unknown";
}

namespace {

SortedComponents sorted_nonproduct(const WState& state, double tol) {
  auto s = sort_components(state);
  if (s.values[1] <= tol) {
    throw Error(Errc::ProductState, "monotone undefined on product states");
  }
  return s;
}

void require_zero_x0(const WState& state, double tol) {
  if (state.x0() > tol) {
    throw Error(Errc::NonzeroX0, "closed form requires x0 = 0, got " + std::to_string(state.x0()));
  }
}

}  // namespace

double concurrence(const WState& state, double tol) {
  switch (state.classify(tol)) {
    case StateClass::Product:
      return 0.0;
    case StateClass::Tripartite:
      throw Error(Errc::NotBipartite, "concurrence requires a bipartite state");
    case StateClass::Bipartite:
      break;
  }
  const auto [i, j] = *state.bipartite_pair(tol);
  return std::min(1.0, 2.0 * std::sqrt(state[i] * state[j]));
}

double e2(const WState& state, double tol) {
  const double c = concurrence(state, tol);
  return 1.0 - std::sqrt(std::max(0.0, 1.0 - c * c));
}

double eta(const WState& state, double tol) {
  const auto s = sorted_nonproduct(state, tol);
  const auto& x = s.values;
  return x[1] + x[2] - x[1] * x[2] / x[0];
}

double kappa(const WState& state, double tol) {
  const auto s = sorted_nonproduct(state, tol);
  const auto& x = s.values;
  return 2.0 * (x[1] + x[2]) - x[1] * x[2] / x[0];
}

double zeta(const WState& state, double tol) {
  const auto s = sorted_nonproduct(state, tol);
  const auto& x = s.values;
  return 2.0 * std::sqrt(x[0] * x[1]) + (2.0 / 3.0) * x[2] * std::sqrt(x[0] / x[1]) +
         (1.0 / 3.0) * x[1] * x[2] / x[0];
}

double zeta_star(const WState& state, Party star, double tol) {
  if (state.support_size(tol) < 2) {
    throw Error(Errc::ProductState, "star monotone undefined on product states");
  }
  const double xs = state[star];
  if (xs <= tol) return 0.0;
  auto [p, q] = other_parties(star);
  if (state[q] > state[p]) std::swap(p, q);
  const double x1 = state[p];
  const double x2 = state[q];
  return 2.0 * std::sqrt(xs * x1) + (2.0 / 3.0) * x2 * std::sqrt(xs / x1);
}

double e2_random_closed_form(const WState& state, double tol) {
  require_zero_x0(state, tol);
  return kappa(state, tol);
}

double e2_star_random_closed_form(const WState& state, Party star, double tol) {
  require_zero_x0(state, tol);
  const auto s = sorted_nonproduct(state, tol);
  if (state[star] >= s.values[0] - tol) return 2.0 * eta(state, tol);
  return 2.0 * state[star];
}

double coa_upper_bound(const WState& state, Party measuring, double tol) {
  if (state.classify(tol) != StateClass::Tripartite) {
    throw Error(Errc::NotTripartite, "concurrence-of-assistance bound requires a tripartite state");
  }
  const auto [i, j] = other_parties(measuring);
  return 2.0 * std::sqrt(state[i] * state[j]);
}

}  // namespace wlocc
