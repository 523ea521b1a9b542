#include "vne/report.hpp"

#include <string>

namespace vne {

nlohmann::ordered_json to_json(const EntropyEstimate& e) {
  nlohmann::ordered_json j;
  j["entropy"] = e.value;
  j["tau"] = e.tau;
  j["confidence"] = e.confidence;
  j["samples"] = e.samples_used;
  j["degree"] = e.degree;
  j["delta"] = e.delta;
  j["gamma0"] = e.scaling.gamma0;
  j["x0"] = e.scaling.x0;
  j["trace"] = e.trace;
  j["seed"] = e.seed;
  j["capped"] = e.capped;

  nlohmann::ordered_json method;
  method["mode"] = std::string(to_string(e.mode));
  method["scaling"] = std::string(to_string(e.scaling.provenance));
  method["normalized"] = e.normalized;
  method["zero_trace"] = e.zero_trace;
  method["dimension"] = e.dimension;
  method["max_samples"] = e.max_samples;
  method["xi_min"] = e.xi_min;
  method["xi_max"] = e.xi_max;
  method["log"] = "natural";
  j["method"] = std::move(method);
  return j;
}

}  // namespace vne
