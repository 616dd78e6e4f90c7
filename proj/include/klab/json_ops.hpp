#ifndef KLAB_JSON_OPS_HPP
#define KLAB_JSON_OPS_HPP

#include <json.hpp>

#include "klab/definability.hpp"
#include "klab/tower_lab.hpp"

namespace klab {

using ordered_json = nlohmann::ordered_json;

// Dispatches a request {"op": ..., ...} to the library and returns the
// response payload (always carrying "schema": 1). Throws klab::Error on
// invalid requests, desk-scale limits, and degenerate inputs.
ordered_json eval_request(const ordered_json& req);

// Error payload with the same schema, for transport across the C API.
ordered_json error_response(const Error& e);

// Named acceptance sweep; throws on unknown suite names.
ordered_json run_sweep(const std::string& suite, const ordered_json& params);

std::string klab_version_string();

} // namespace klab

#endif
