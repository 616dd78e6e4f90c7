#include <doctest.h>

#include <json.hpp>
#include <string>

#include "kummerlab.h"

using json = nlohmann::ordered_json;

namespace {

struct Ctx {
    klab_ctx* c = klab_ctx_new();
    ~Ctx() { klab_ctx_free(c); }
};

std::pair<int, std::string> eval(klab_ctx* c, const std::string& req) {
    char* out = nullptr;
    int rc = klab_eval(c, req.c_str(), &out);
    std::string body = out ? out : "";
    klab_free(out);
    return {rc, body};
}

} // namespace

TEST_CASE("C API round-trips a computed result") {
    Ctx ctx;
    auto [rc, body] = eval(ctx.c, R"({"op":"ord","field":"p=3,m=1","x":"t","place":"inf"})");
    CHECK(rc == 0);
    json res = json::parse(body);
    CHECK(res.at("schema") == 1);
    CHECK(res.at("ord") == -1);
    CHECK(std::string(klab_last_error(ctx.c)).empty());
}

TEST_CASE("byte-identical responses for identical requests") {
    Ctx ctx;
    std::string req = R"({"op":"norm-solve","field":"p=3,m=1","q":2,"a":"t","z":"t"})";
    auto [rc1, b1] = eval(ctx.c, req);
    auto [rc2, b2] = eval(ctx.c, req);
    CHECK(rc1 == 0);
    CHECK(b1 == b2);
    json res = json::parse(b1);
    CHECK(res.at("status") == "Unsolvable");
    CHECK(res.at("obstruction").at("base") == "t");
}

TEST_CASE("parse errors return 2 with an error payload") {
    Ctx ctx;
    for (const char* bad : {"not json", R"({"op":"nosuch"})", R"({"op":"ord","field":"p=3,m=1"})",
                            R"({"op":"ord","field":"p=3,m=1","x":"t^^","place":"inf"})"}) {
        auto [rc, body] = eval(ctx.c, bad);
        CHECK(rc == 2);
        json res = json::parse(body);
        CHECK(res.at("error").at("class") == 2);
        CHECK_FALSE(std::string(klab_last_error(ctx.c)).empty());
    }
}

TEST_CASE("degenerate inputs return 4") {
    Ctx ctx;
    // divisor of 0 has no meaning.
    auto [rc, body] = eval(ctx.c, R"({"op":"divisor","field":"p=3,m=1","x":"0"})");
    CHECK(rc == 4);
    CHECK(json::parse(body).at("error").at("class") == 4);
}

TEST_CASE("desk-scale limits return 3") {
    Ctx ctx;
    auto [rc, body] =
        eval(ctx.c, R"({"op":"inert-tower","p":3,"degrees":[4,4,4]})"); // product 64 > 16
    CHECK(rc == 3);
    CHECK(json::parse(body).at("error").at("class") == 3);
}

TEST_CASE("sweep dispatch and version") {
    Ctx ctx;
    auto [rc, body] = eval(ctx.c, R"({"op":"sweep","suite":"qbound-patterns"})");
    CHECK(rc == 0);
    json res = json::parse(body);
    CHECK(res.at("report").at("failures") == 0);
    CHECK(std::string(klab_version()).rfind("kummerlab", 0) == 0);

    auto [rc2, body2] = eval(ctx.c, R"({"op":"sweep","suite":"nosuch"})");
    CHECK(rc2 == 2);
}

TEST_CASE("tree and qbound operations through the API") {
    Ctx ctx;
    auto [rc, body] = eval(ctx.c, R"({"op":"qbound","field":"p=3,m=1","q":2,"base":"t",
        "levels":[{"kind":"uniformizer-root"},{"kind":"uniformizer-root"}]})");
    CHECK(rc == 0);
    json res = json::parse(body);
    CHECK(res.at("report").at("verdict") == "UnboundedEvidence");
    CHECK(res.at("report").at("evidence").at("growth") == json::array({1, 2}));
}
