#pragma once

// JSON views of every analysis result. Numbers are written with 17
// significant digits; non-finite values become null.

#include <string>

#include <json.hpp>

#include "wco/bloch.hpp"
#include "wco/duality.hpp"
#include "wco/vector_space.hpp"

namespace wco::report {

using Json = nlohmann::ordered_json;

Json to_json(Complex z);
Json to_json(const QReport& q, bool include_points);
Json to_json(const Classification& c, bool include_points);
Json to_json(const PairingResult& p);
Json to_json(const WeakNullReport& r);
Json to_json(const IdentityCheck& c);
Json to_json(const LowerBoundRow& row);
Json to_json(const NormTransferReport& r);

/// Deterministic serialization: keys in insertion order, %.17g numbers.
std::string dump(const Json& j, int indent = 2);

}  // namespace wco::report
