#include "wlocc/protocol_json.hpp"

#include <json.hpp>

namespace wlocc {

namespace {

using nlohmann::json;

json encode(const ProtocolNode& node) {
  if (node.is_leaf()) return json::object();
  const auto& m = *node.measurement;
  json elements = json::array();
  for (const auto& e : m.elements) {
    elements.push_back({{"a", e.a}, {"b_re", e.b_re}, {"b_im", e.b_im}, {"c", e.c}});
  }
  json children = json::array();
  for (const auto& child : node.children) children.push_back(encode(child));
  json out{{"party", std::string(1, party_name(m.party))}, {"elements", std::move(elements)},
           {"children", std::move(children)}};
  if (node.joins_broadcast) out["joins_broadcast"] = true;
  return out;
}

double number(const json& obj, const char* key, bool required) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) throw Error(Errc::MalformedProtocol, std::string("element is missing \"") + key + "\"");
    return 0.0;
  }
  if (!it->is_number()) throw Error(Errc::MalformedProtocol, std::string("\"") + key + "\" must be a number");
  return it->get<double>();
}

ProtocolNode decode(const json& j) {
  if (!j.is_object()) throw Error(Errc::MalformedProtocol, "node must be an object");
  if (j.empty()) return ProtocolNode::leaf();

  auto party_it = j.find("party");
  if (party_it == j.end() || !party_it->is_string()) {
    throw Error(Errc::MalformedProtocol, "measurement node needs a \"party\" string");
  }
  auto party = parse_party(party_it->get<std::string>());
  if (!party) throw Error(Errc::MalformedProtocol, "unknown party \"" + party_it->get<std::string>() + "\"");

  auto el_it = j.find("elements");
  if (el_it == j.end() || !el_it->is_array() || el_it->empty()) {
    throw Error(Errc::MalformedProtocol, "measurement node needs a non-empty \"elements\" array");
  }
  LocalMeasurement m{*party, {}};
  for (const auto& e : *el_it) {
    if (!e.is_object()) throw Error(Errc::MalformedProtocol, "element must be an object");
    m.elements.push_back({number(e, "a", true), number(e, "c", true), number(e, "b_re", false),
                          number(e, "b_im", false)});
  }
  m.validate();

  std::vector<ProtocolNode> kids;
  if (auto ch = j.find("children"); ch != j.end()) {
    if (!ch->is_array() || ch->size() != m.elements.size()) {
      throw Error(Errc::MalformedProtocol, "\"children\" must list one node per element");
    }
    for (const auto& c : *ch) kids.push_back(decode(c));
  }
  bool joins = false;
  if (auto jb = j.find("joins_broadcast"); jb != j.end()) {
    if (!jb->is_boolean()) throw Error(Errc::MalformedProtocol, "\"joins_broadcast\" must be a boolean");
    joins = jb->get<bool>();
  }
  return ProtocolNode::measure(std::move(m), std::move(kids), joins);
}

}  // namespace

std::string protocol_to_json(const ProtocolNode& protocol, int indent) {
  return encode(protocol).dump(indent);
}

ProtocolNode protocol_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::MalformedProtocol, e.what());
  }
  return decode(j);
}

}  // namespace wlocc
