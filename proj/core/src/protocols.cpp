#include "wlocc/protocols.hpp"

#include <cmath>

namespace wlocc {

namespace {

void require_tripartite(const WState& state, double tol) {
  if (state.classify(tol) != StateClass::Tripartite) {
    throw Error(Errc::NotTripartite, "protocol requires a tripartite state");
  }
}

void require_sorted(const WState& state) {
  if (state[Party::A] < state[Party::B] || state[Party::B] < state[Party::C]) {
    throw Error(Errc::OrderViolation, "expected x_A >= x_B >= x_C");
  }
}

void require_count(int n, const char* what) {
  if (n < 1) throw Error(Errc::ParameterOutOfRange, std::string(what) + " must be at least 1");
}

void require_open_unit(double v, const char* what) {
  if (!(v > 0.0 && v < 1.0)) {
    throw Error(Errc::ParameterOutOfRange, std::string(what) + " must lie in (0, 1)");
  }
}

// Ratio in [0, 1], with rounding just above 1 clamped.
double ratio(double num, double den) { return std::min(1.0, num / den); }

// Star task labels: the non-star parties ordered by coordinate.
std::pair<Party, Party> non_star_sorted(const WState& state, Party star) {
  auto [p, q] = other_parties(star);
  if (state[q] > state[p]) std::swap(p, q);
  return {p, q};
}

ProtocolNode star_prefix(const WState& state, Party star, ProtocolNode rest, double tol) {
  if (state.support_size(tol) < 2) throw Error(Errc::ProductState, "star protocol on a product state");
  if (state[star] <= tol) throw Error(Errc::ProductState, "star party has no support");
  const auto [n1, n2] = non_star_sorted(state, star);
  if (state[n2] <= tol) throw Error(Errc::ProductState, "both non-star parties need support");
  if (std::abs(state[n1] - state[n2]) <= tol) return rest;
  std::vector<ProtocolNode> kids;
  kids.push_back(std::move(rest));
  return ProtocolNode::measure(binary_filter(n2, ratio(state[n2], state[n1])), std::move(kids));
}

}  // namespace

ProtocolNode equal_or_vanish(const WState& state, ProtocolNode continuation, double tol) {
  require_tripartite(state, tol);
  const auto s = sort_components(state);
  std::vector<LocalMeasurement> ms{binary_filter(s.n2(), ratio(s.values[1], s.values[0])),
                                   binary_filter(s.n3(), ratio(s.values[2], s.values[0]))};
  return simultaneous_round(ms, std::move(continuation));
}

ProtocolNode charlie_equalize(const WState& state, ProtocolNode continuation, double tol) {
  if (state[Party::C] <= tol) throw Error(Errc::ProductState, "x_C must be positive");
  if (state[Party::B] < state[Party::C]) throw Error(Errc::OrderViolation, "expected x_B >= x_C");
  std::vector<ProtocolNode> kids;
  kids.push_back(std::move(continuation));
  return ProtocolNode::measure(binary_filter(Party::C, ratio(state[Party::C], state[Party::B])), std::move(kids));
}

double lemma1_step2_epsilon(double gamma, int n) {
  require_count(n, "n");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw Error(Errc::ParameterOutOfRange, "gamma must lie in (0, 1]");
  return 1.0 - std::pow(gamma, 1.0 / n);
}

ProtocolNode lemma1_protocol(const WState& state, int n, int n_prime, double eps_prime, double tol) {
  require_tripartite(state, tol);
  require_sorted(state);
  require_count(n, "n");
  require_count(n_prime, "n'");
  require_open_unit(eps_prime, "eps'");

  ProtocolNode node = fl_protocol<double>({Party::A, Party::B, Party::C}, eps_prime, n_prime);
  const double gamma = ratio(state[Party::B], state[Party::A]);
  if (gamma < 1.0 - tol) {
    node = fl_protocol<double>({Party::B, Party::C}, lemma1_step2_epsilon(gamma, n), n, std::move(node));
  }
  if (state[Party::B] - state[Party::C] > tol) node = charlie_equalize(state, std::move(node), tol);
  return node;
}

ProtocolNode lemma2_protocol(const WState& state, Party star, int n, double tau, double tol) {
  require_count(n, "n");
  require_open_unit(tau, "tau");
  const auto [n1, n2] = non_star_sorted(state, star);
  const double eps = 1.0 - std::pow(tau, 1.0 / n);
  return star_prefix(state, star, fl_protocol<double>({n1, n2}, eps, n), tol);
}

ProtocolNode lemma2_protocol(const WState& state, Party star, const std::vector<double>& epsilons, double tol) {
  const auto [n1, n2] = non_star_sorted(state, star);
  ProtocolNode terminal = ProtocolNode::measure(fl_measurement(n2, 1.0));
  return star_prefix(state, star, fl_protocol<double>({n1, n2}, epsilons, std::move(terminal)), tol);
}

ProtocolNode total_schedule_protocol(const WState& state, const std::vector<double>& step2_epsilons,
                                     const std::vector<double>& step3_epsilons, double tol) {
  require_tripartite(state, tol);
  require_sorted(state);
  ProtocolNode node = ProtocolNode::measure(fl_measurement(Party::C, 1.0));
  node = fl_protocol<double>({Party::A, Party::B, Party::C}, step3_epsilons, std::move(node));
  node = fl_protocol<double>({Party::B, Party::C}, step2_epsilons, std::move(node));
  if (state[Party::B] - state[Party::C] > tol) node = charlie_equalize(state, std::move(node), tol);
  return node;
}

namespace {

struct KindName {
  ProtocolKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {ProtocolKind::FlTotal, "fl-total"},
    {ProtocolKind::FlRestricted, "fl-restricted"},
    {ProtocolKind::EqualOrVanish, "equal-or-vanish"},
    {ProtocolKind::CharlieEqualize, "charlie-equalize"},
    {ProtocolKind::Lemma1, "lemma1"},
    {ProtocolKind::Lemma2, "lemma2"},
    {ProtocolKind::Theorem1Optimal, "theorem1"},
};

}  // namespace

std::optional<ProtocolKind> parse_protocol_kind(std::string_view name) {
  for (const auto& k : kKindNames) {
    if (k.name == name) return k.kind;
  }
  return std::nullopt;
}

std::string_view protocol_kind_name(ProtocolKind kind) {
  for (const auto& k : kKindNames) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

void ProtocolSpec::validate() const {
  switch (kind) {
    case ProtocolKind::FlTotal:
    case ProtocolKind::FlRestricted:
      require_open_unit(eps, "eps");
      require_count(n, "n");
      break;
    case ProtocolKind::Lemma1:
      require_count(n, "n");
      require_count(n_prime, "n'");
      require_open_unit(eps_prime, "eps'");
      break;
    case ProtocolKind::Lemma2:
      require_count(n, "n");
      require_open_unit(tau, "tau");
      break;
    case ProtocolKind::Theorem1Optimal:
      require_count(blocks, "N");
      break;
    case ProtocolKind::EqualOrVanish:
    case ProtocolKind::CharlieEqualize:
      break;
  }
}

ProtocolNode build(const ProtocolSpec& spec, const WState& state) {
  spec.validate();
  switch (spec.kind) {
    case ProtocolKind::FlTotal:
      return fl_protocol<double>({Party::A, Party::B, Party::C}, spec.eps, spec.n);
    case ProtocolKind::FlRestricted:
      return fl_protocol<double>(spec.parties, spec.eps, spec.n);
    case ProtocolKind::EqualOrVanish:
      return equal_or_vanish(state);
    case ProtocolKind::CharlieEqualize:
      return charlie_equalize(state);
    case ProtocolKind::Lemma1:
      return lemma1_protocol(state, spec.n, spec.n_prime, spec.eps_prime);
    case ProtocolKind::Lemma2:
      return lemma2_protocol(state, spec.star, spec.n, spec.tau);
    case ProtocolKind::Theorem1Optimal:
      return theorem1_protocol<double>(spec.blocks);
  }
  throw Error(Errc::MalformedProtocol, "unknown protocol kind");
}

}  // namespace wlocc
