#pragma once

// JSON form of a protocol tree:
//   {"party": "A", "elements": [{"a":..,"b_re":..,"b_im":..,"c":..}, ...],
//    "children": [...], "joins_broadcast": false}
// A leaf is {}. Missing "children" means every outcome halts.

#include <string>
#include <string_view>

#include "wlocc/protocol_tree.hpp"

namespace wlocc {

std::string protocol_to_json(const ProtocolNode& protocol, int indent = -1);

/// Throws MalformedProtocol on schema errors and IncompleteMeasurement when a
/// measurement fails completeness.
ProtocolNode protocol_from_json(std::string_view text);

}  // namespace wlocc
