#pragma once

#include <json.hpp>

#include "vne/estimator.hpp"

namespace vne {

/// JSON object with a fixed key order: entropy, tau, confidence, samples,
/// degree, delta, gamma0, x0, trace, seed, capped, then a `method` block.
nlohmann::ordered_json to_json(const EntropyEstimate& estimate);

}  // namespace vne
