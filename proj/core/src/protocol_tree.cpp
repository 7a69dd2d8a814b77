#include "wlocc/protocol_tree.hpp"

#include <cmath>

namespace wlocc {

std::string_view leaf_class_name(LeafClass cls) {
  switch (cls) {
    case LeafClass::Epr: return "EPR";
    case LeafClass::Bipartite: return "bipartite";
    case LeafClass::Product: return "product";
    case LeafClass::Tripartite: return "tripartite";
  }
  return "unknown";
}

ProtocolNode diagonalize(const ProtocolNode& protocol, double tol) {
  if (protocol.is_leaf()) return ProtocolNode::leaf();
  const auto& m = *protocol.measurement;
  LocalMeasurement out{m.party, {}};
  std::vector<ProtocolNode> kids;
  double dropped = 0.0;
  for (std::size_t i = 0; i < m.elements.size(); ++i) {
    const auto& e = m.elements[i];
    dropped += e.b_norm2();
    out.elements.push_back(KrausElement::diagonal(e.a, e.c));
    kids.push_back(diagonalize(protocol.children[i], tol));
  }
  if (dropped > tol) {
    out.elements.push_back(KrausElement::diagonal(0.0, dropped));
    kids.push_back(ProtocolNode::leaf());
  }
  return ProtocolNode::measure(std::move(out), std::move(kids), protocol.joins_broadcast);
}

bool is_block_state(const WState& state, Party next_measuring, double tol) {
  if (state.classify(tol) != StateClass::Tripartite) {
    throw Error(Errc::NotTripartite, "block states are tripartite");
  }
  const auto s = sort_components(state);
  return std::abs(s.values[0] - s.values[1]) <= tol && s.values[2] > tol &&
         state[next_measuring] >= s.values[0] - tol;
}

double expected_value(const std::vector<LeafRecord>& leaves, Measure measure, std::optional<Party> star) {
  double total = 0.0;
  for (const auto& leaf : leaves) {
    if (!leaf.pair) continue;
    if (star && leaf.pair->first != *star && leaf.pair->second != *star) continue;
    double value = 0.0;
    switch (measure) {
      case Measure::Concurrence:
        value = leaf.concurrence;
        break;
      case Measure::E2:
        value = 1.0 - std::sqrt(std::max(0.0, 1.0 - leaf.concurrence * leaf.concurrence));
        break;
      case Measure::EprProbability:
        value = leaf.cls == LeafClass::Epr
                    ? 1.0
                    : 1.0 - std::sqrt(std::max(0.0, 1.0 - leaf.concurrence * leaf.concurrence));
        break;
    }
    total += leaf.probability * value;
  }
  return total;
}

std::size_t node_count(const ProtocolNode& protocol) {
  std::size_t count = 0;
  std::vector<const ProtocolNode*> stack{&protocol};
  while (!stack.empty()) {
    const ProtocolNode* n = stack.back();
    stack.pop_back();
    if (n->is_leaf()) continue;
    ++count;
    for (const auto& c : n->children) stack.push_back(&c);
  }
  return count;
}

}  // namespace wlocc
