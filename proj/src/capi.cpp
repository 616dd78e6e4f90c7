#include "kummerlab.h"

#include <cstring>
#include <string>

#include "klab/json_ops.hpp"

struct klab_ctx {
    std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

extern "C" {

klab_ctx* klab_ctx_new(void) { return new (std::nothrow) klab_ctx{}; }

void klab_ctx_free(klab_ctx* ctx) { delete ctx; }

int klab_eval(klab_ctx* ctx, const char* request_json, char** response_json) {
    if (!ctx || !request_json || !response_json) return 2;
    *response_json = nullptr;
    ctx->last_error.clear();
    klab::Error err = klab::parse_error("unreachable");
    try {
        auto req = klab::ordered_json::parse(request_json);
        auto res = klab::eval_request(req);
        *response_json = dup_string(res.dump());
        return 0;
    } catch (const klab::Error& e) {
        err = e;
    } catch (const nlohmann::json::exception& e) {
        err = klab::parse_error(std::string("invalid JSON request: ") + e.what());
    } catch (const std::exception& e) {
        err = klab::Error(klab::ErrClass::Degenerate, "InternalError", e.what());
    }
    ctx->last_error = err.what();
    *response_json = dup_string(klab::error_response(err).dump());
    return static_cast<int>(err.cls());
}

const char* klab_last_error(const klab_ctx* ctx) {
    return ctx ? ctx->last_error.c_str() : "";
}

void klab_free(char* s) { std::free(s); }

const char* klab_version(void) {
    static const std::string v = klab::klab_version_string();
    return v.c_str();
}

} // extern "C"
