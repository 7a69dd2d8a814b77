#pragma once

// Constructors for the named distillation protocols.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wlocc/protocol_tree.hpp"

namespace wlocc {

/// Two-outcome diagonal filter: diag(sqrt(r), 1) and diag(sqrt(1 - r), 0).
template <class Real>
BasicLocalMeasurement<Real> binary_filter(Party party, const Real& r) {
  if (r < Real(0) || r > Real(1)) {
    throw Error(Errc::ParameterOutOfRange, "filter ratio " + std::to_string(to_double(r)) + " outside [0, 1]");
  }
  using K = BasicKrausElement<Real>;
  return {party, {K::diagonal(r, Real(1)), K::diagonal(Real(Real(1) - r), Real(0))}};
}

/// Weak measurement diag(sqrt(1 - eps), 1), diag(sqrt(eps), 0). eps = 1 is
/// the hard projection that zeroes the measuring party on outcome 1.
template <class Real>
BasicLocalMeasurement<Real> fl_measurement(Party party, const Real& eps) {
  if (!(eps >= Real(0) && eps <= Real(1))) {
    throw Error(Errc::ParameterOutOfRange, "epsilon " + std::to_string(to_double(eps)) + " outside [0, 1]");
  }
  return binary_filter(party, Real(Real(1) - eps));
}

/// All of `ms` measured in one broadcast epoch. The branch where every
/// party gets outcome 0 continues with `on_zero`; every other branch halts.
template <class Real>
BasicProtocolNode<Real> simultaneous_round(const std::vector<BasicLocalMeasurement<Real>>& ms,
                                           BasicProtocolNode<Real> on_zero, std::size_t first = 0) {
  using Node = BasicProtocolNode<Real>;
  if (first == ms.size()) return on_zero;
  const auto& m = ms[first];
  std::vector<Node> kids;
  kids.reserve(m.elements.size());
  kids.push_back(simultaneous_round(ms, std::move(on_zero), first + 1));
  for (std::size_t i = 1; i < m.elements.size(); ++i) {
    kids.push_back(simultaneous_round(ms, Node::leaf(), first + 1));
  }
  return Node::measure(m, std::move(kids), first > 0);
}

/// Iterated weak measurements by `parties` with per-iteration epsilons,
/// halting on any outcome 1. After the last iteration the all-zero branch
/// continues with `continuation`.
template <class Real>
BasicProtocolNode<Real> fl_protocol(const std::vector<Party>& parties, const std::vector<Real>& epsilons,
                                    BasicProtocolNode<Real> continuation = {}) {
  if (parties.size() < 2 || parties.size() > 3) {
    throw Error(Errc::ParameterOutOfRange, "F-L protocol needs two or three parties");
  }
  BasicProtocolNode<Real> node = std::move(continuation);
  for (std::size_t k = epsilons.size(); k-- > 0;) {
    std::vector<BasicLocalMeasurement<Real>> ms;
    for (Party p : parties) ms.push_back(fl_measurement(p, epsilons[k]));
    node = simultaneous_round(ms, std::move(node));
  }
  return node;
}

template <class Real>
BasicProtocolNode<Real> fl_protocol(const std::vector<Party>& parties, const Real& eps, int iterations,
                                    BasicProtocolNode<Real> continuation = {}) {
  if (iterations < 1) throw Error(Errc::ParameterOutOfRange, "iteration count must be at least 1");
  return fl_protocol(parties, std::vector<Real>(static_cast<std::size_t>(iterations), eps), std::move(continuation));
}

/// N-block schedule from W. Block k: A filters with a_k; outcome 1 gives an
/// EPR pair between B and C, outcome 0 is followed (unless a_k = 1) by B and
/// C filtering back to W within the same broadcast.
template <class Real>
BasicProtocolNode<Real> block_protocol(const std::vector<Real>& a) {
  using Node = BasicProtocolNode<Real>;
  if (a.empty()) throw Error(Errc::ParameterOutOfRange, "block schedule is empty");
  Node next = Node::leaf();
  for (std::size_t k = a.size(); k-- > 0;) {
    if (a[k] < Real(0) || a[k] > Real(1)) {
      throw Error(Errc::ParameterOutOfRange, "block parameter outside [0, 1]");
    }
    const Real keep = Real(1) - a[k];
    Node after_a = Node::leaf();
    if (a[k] != Real(1)) {
      std::vector<BasicLocalMeasurement<Real>> bc{binary_filter(Party::B, keep), binary_filter(Party::C, keep)};
      after_a = simultaneous_round(bc, std::move(next));
      after_a.joins_broadcast = true;
    }
    std::vector<Node> kids;
    kids.push_back(std::move(after_a));
    kids.push_back(Node::leaf());
    next = Node::measure(binary_filter(Party::A, keep), std::move(kids));
  }
  return next;
}

/// Optimal N-block protocol: a_k = 1 / (N - k + 1).
template <class Real>
BasicProtocolNode<Real> theorem1_protocol(int n_blocks) {
  if (n_blocks < 1) throw Error(Errc::ParameterOutOfRange, "block count must be at least 1");
  std::vector<Real> a;
  for (int k = 1; k <= n_blocks; ++k) a.push_back(Real(1) / Real(n_blocks - k + 1));
  return block_protocol(a);
}

/// Parties n2 and n3 filter with x_nk / x_n1; the all-zero outcome is W.
ProtocolNode equal_or_vanish(const WState& state, ProtocolNode continuation = {}, double tol = kDefaultTol);

/// C filters with x_C / x_B. Requires x_B >= x_C > 0.
ProtocolNode charlie_equalize(const WState& state, ProtocolNode continuation = {}, double tol = kDefaultTol);

/// Step-2 weak-measurement strength fixed by (1 - eps)^n = gamma.
double lemma1_step2_epsilon(double gamma, int n);

/// Three-step total-concurrence protocol for x_A >= x_B >= x_C > 0: C
/// equalizes, B and C run n restricted iterations, then all three run n'
/// iterations with eps'.
ProtocolNode lemma1_protocol(const WState& state, int n, int n_prime, double eps_prime,
                             double tol = kDefaultTol);

/// Star-concurrence protocol with n uniform iterations and (1 - eps)^n = tau.
/// The residual tripartite branch is left as a leaf.
ProtocolNode lemma2_protocol(const WState& state, Party star, int n, double tau = 1e-3, double tol = kDefaultTol);

/// Star-concurrence protocol driven by a schedule: one iteration per epsilon,
/// then a hard measurement by the smaller non-star party.
ProtocolNode lemma2_protocol(const WState& state, Party star, const std::vector<double>& epsilons,
                             double tol = kDefaultTol);

/// Total-concurrence protocol driven by schedules for the restricted and the
/// three-party stage, ending with a hard measurement by C.
ProtocolNode total_schedule_protocol(const WState& state, const std::vector<double>& step2_epsilons,
                                     const std::vector<double>& step3_epsilons, double tol = kDefaultTol);

enum class ProtocolKind { FlTotal, FlRestricted, EqualOrVanish, CharlieEqualize, Lemma1, Lemma2, Theorem1Optimal };

std::optional<ProtocolKind> parse_protocol_kind(std::string_view name);
std::string_view protocol_kind_name(ProtocolKind kind);

struct ProtocolSpec {
  ProtocolKind kind = ProtocolKind::FlTotal;
  double eps = 0.1;
  int n = 1;
  double eps_prime = 0.01;
  int n_prime = 1;
  Party star = Party::A;
  std::vector<Party> parties{Party::B, Party::C};
  double tau = 1e-3;
  int blocks = 1;

  void validate() const;
};

/// Builds the protocol for `spec` applied to `state`.
ProtocolNode build(const ProtocolSpec& spec, const WState& state);

}  // namespace wlocc
