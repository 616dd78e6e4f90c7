// Command-line front end: builds a JSON request per subcommand, evaluates it
// through the kummerlab C API, and renders text or raw JSON. Exit codes: 0
// computed result (predicate truth lives in the payload), 2 usage/parse
// error, 3 desk-scale limit exceeded, 4 degenerate input.
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kummerlab.h"

using json = nlohmann::ordered_json;

namespace {

struct Common {
    std::string field = "p=3,m=1";
    int q = 2;
    std::string format = "text";
};

void add_common(CLI::App* cmd, Common& c, bool wants_q = true) {
    cmd->add_option("--field", c.field, "Field spec, e.g. p=3,m=1 or p=2,m=2")
        ->capture_default_str();
    if (wants_q) cmd->add_option("--q", c.q, "Kummer exponent (prime)")->capture_default_str();
    cmd->add_option("--format", c.format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
}

std::string render_text(const json& res) {
    std::string op = res.value("op", "");
    std::ostringstream out;
    if (res.contains("error")) {
        const json& e = res.at("error");
        out << "error [" << e.value("kind", "?") << "]: " << e.value("message", "") << "\n";
        return out.str();
    }
    if (op == "ord") {
        out << "ord = " << res.at("ord").dump() << "\n";
    } else if (op == "divisor") {
        for (const auto& item : res.at("divisor"))
            out << item.value("place", "?") << ": " << item.at("ord").dump() << "\n";
        out << "degree sum = " << res.at("degree_sum").dump() << "\n";
    } else if (op == "factor") {
        out << "lead = " << res.value("lead", "?") << "\n";
        for (const auto& item : res.at("factors"))
            out << item.value("poly", "?") << " ^ " << item.at("mult").dump() << "\n";
    } else if (op == "norm-solve") {
        out << "status: " << res.value("status", "?") << "\n";
        if (!res.at("obstruction").is_null())
            out << "obstruction: " << res.at("obstruction").value("base", "?") << " (path "
                << res.at("obstruction").value("path", "-") << ")\n";
        if (res.value("used_ramified_branch", false)) out << "used ramified branch\n";
        if (res.contains("witness") && !res.at("witness").is_null()) {
            out << "witness:";
            for (const auto& c : res.at("witness")) out << " " << c.get<std::string>();
            out << "\n";
        }
    } else if (op == "split" || op == "places-above") {
        for (const auto& item : res.at("places")) {
            out << "path " << item.value("path", "-") << ": e=" << item.at("e").dump()
                << " f=" << item.at("f").dump();
            if (item.contains("step")) out << " step=" << item.value("step", "?");
            out << "\n";
        }
    } else if (op == "valring" || op == "sint" || op == "constants") {
        const json& r = res.at("result");
        out << "value: " << (r.value("value", false) ? "true" : "false") << "\n";
        out << "surrogate: " << r.value("surrogate", "?") << "\n";
        if (r.contains("confirmation_count"))
            out << "confirmations: " << r.at("confirmation_count").dump() << "\n";
        if (r.contains("blocking"))
            out << "blocking pair: a=" << r.at("blocking").value("a", "?")
                << " b=" << r.at("blocking").value("b", "?") << "\n";
        for (const auto& w : r.value("warnings", json::array()))
            out << "warning: " << w.get<std::string>() << "\n";
    } else if (op == "choose-ab") {
        out << "a = " << res.at("pair").value("a", "?") << "\n";
        out << "b = " << res.at("pair").value("b", "?") << "\n";
    } else if (op == "qbound") {
        const json& r = res.at("report");
        out << "verdict: " << r.value("verdict", "?");
        if (r.contains("bound")) out << "(" << r.at("bound").dump() << ")";
        out << "\n";
        for (const auto& p : r.at("paths"))
            out << "path " << p.value("path", "-") << ": max ord_q e=" << p.at("max_ord_e").dump()
                << " max ord_q f=" << p.at("max_ord_f").dump() << "\n";
        if (r.contains("evidence")) {
            out << "evidence path " << r.at("evidence").value("path", "?") << ", growth";
            for (const auto& g : r.at("evidence").at("growth")) out << " " << g.dump();
            out << "\n";
        }
    } else if (op == "sweep") {
        const json& r = res.at("report");
        out << "suite: " << r.value("suite", "?") << "\n";
        out << "cases: " << r.value("cases", 0) << "\n";
        out << "failures: " << r.value("failures", 0) << "\n";
        if (r.contains("first_failure") && !r.at("first_failure").is_null())
            out << "first failure: " << r.at("first_failure").dump() << "\n";
        if (r.contains("checks"))
            for (const auto& c : r.at("checks")) out << c.get<std::string>() << "\n";
    } else {
        // Structured payloads (tree, expand-norm, inert-tower) render as
        // pretty JSON in text mode too.
        out << res.dump(2) << "\n";
    }
    return out.str();
}

int run_request(const json& req, const std::string& format) {
    klab_ctx* ctx = klab_ctx_new();
    if (!ctx) {
        std::cerr << "out of memory\n";
        return 4;
    }
    char* response = nullptr;
    int rc = klab_eval(ctx, req.dump().c_str(), &response);
    std::string body = response ? response : "{}";
    klab_free(response);
    klab_ctx_free(ctx);
    json res = json::parse(body);
    if (format == "json") {
        std::cout << body << "\n";
    } else {
        (rc == 0 ? std::cout : std::cerr) << render_text(res);
    }
    return rc;
}

std::vector<json> parse_levels(const std::vector<std::string>& specs) {
    std::vector<json> levels;
    for (const std::string& s : specs) {
        if (s == "uroot" || s == "uniformizer-root") {
            levels.push_back({{"kind", "uniformizer-root"}});
        } else if (s.rfind("kummer:", 0) == 0) {
            levels.push_back({{"kind", "kummer"}, {"radicand", s.substr(7)}});
        } else {
            // Bare strings are Kummer radicands.
            levels.push_back({{"kind", "kummer"}, {"radicand", s}});
        }
    }
    return levels;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kummerlab: exact arithmetic in Kummer extensions of F_q(t) -- "
                 "prime splitting, Hasse norm oracle, definability predicates, "
                 "factor trees"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(klab_version()));

    struct {
        Common common;
        std::string poly, x, a, b, z, c, place, base, mode = "valring", suite;
        std::vector<std::string> tower, S, levels;
        std::vector<int> degrees;
        int p = 3, sample_size = 5, witness_bound = -1;
        std::uint64_t seed = 12345;
    } opt;

    auto* factor = app.add_subcommand("factor", "Factor a polynomial over F_q[t]");
    add_common(factor, opt.common, false);
    factor->add_option("--poly", opt.poly, "Polynomial in t")->required();

    auto* divisor = app.add_subcommand("divisor", "Divisor of a rational function");
    add_common(divisor, opt.common, false);
    divisor->add_option("--x", opt.x, "Element of F_q(t)")->required();

    auto* ord = app.add_subcommand("ord", "Order of an element at a place");
    add_common(ord, opt.common, false);
    ord->add_option("--x", opt.x, "Element of F_q(t)")->required();
    ord->add_option("--place", opt.place, "Monic irreducible polynomial or 'inf'")->required();

    auto* split = app.add_subcommand("split", "Classify the next Kummer step at a place");
    add_common(split, opt.common);
    split->add_option("--tower", opt.tower, "Tower radicands, in adjunction order");
    split->add_option("--c", opt.c, "Step radicand")->required();
    split->add_option("--place", opt.place, "Base place")->required();

    auto* above = app.add_subcommand("places-above", "Tower places above a base place");
    add_common(above, opt.common);
    above->add_option("--tower", opt.tower, "Tower radicands");
    above->add_option("--place", opt.place, "Base place")->required();

    auto* norm = app.add_subcommand("norm-solve", "Hasse-principle norm equation oracle");
    add_common(norm, opt.common);
    norm->add_option("--tower", opt.tower, "Tower radicands");
    norm->add_option("--a", opt.a, "Radicand of the top step")->required();
    norm->add_option("--z", opt.z, "Right-hand side")->required();
    norm->add_option("--witness-bound", opt.witness_bound,
                     "Also search for an explicit witness up to this degree bound");

    auto* expand = app.add_subcommand("expand-norm", "Expand N(y) = z into polynomial equations");
    add_common(expand, opt.common);
    expand->add_option("--tower", opt.tower, "Tower radicands");
    expand->add_option("--a", opt.a, "Radicand of the top step")->required();
    expand->add_option("--z", opt.z, "Right-hand side")->required();

    auto* valring = app.add_subcommand("valring", "Valuation-ring membership predicate");
    add_common(valring, opt.common);
    valring->add_option("--x", opt.x, "Element to test")->required();
    valring->add_option("--place", opt.place, "Place")->required();
    valring->add_option("--a", opt.a, "Auxiliary a (default: constructed)");
    valring->add_option("--b", opt.b, "Auxiliary b (default: constructed)");

    auto* sint = app.add_subcommand("sint", "S-integrality decision");
    add_common(sint, opt.common);
    sint->add_option("--S", opt.S, "S places (repeatable)")->required();
    sint->add_option("--x", opt.x, "Element to test")->required();
    sint->add_option("--sample-size", opt.sample_size, "Confirmations for true cases")
        ->capture_default_str();

    auto* constants = app.add_subcommand("constants", "Constant-field membership predicate");
    add_common(constants, opt.common);
    constants->add_option("--x", opt.x, "Element to test")->required();
    constants->add_option("--sample-size", opt.sample_size, "Confirmations for true cases")
        ->capture_default_str();

    auto* chooseab = app.add_subcommand("choose-ab", "Construct an auxiliary (a, b) pair");
    add_common(chooseab, opt.common);
    chooseab->add_option("--place", opt.place, "Anchor place (valring / uniform-bounded)");
    chooseab->add_option("--mode", opt.mode, "valring, s-integers, or uniform-bounded")
        ->capture_default_str();
    chooseab->add_option("--S", opt.S, "S places (s-integers mode)");

    auto* tree = app.add_subcommand("tree", "Factor tree of a place through tower levels");
    add_common(tree, opt.common);
    tree->add_option("--base", opt.base, "Base place")->required();
    tree->add_option("--level", opt.levels,
                     "Level: a Kummer radicand, 'kummer:<radicand>', or 'uroot'")
        ->required();

    auto* qbound = app.add_subcommand("qbound", "q-boundedness profile of a factor tree");
    add_common(qbound, opt.common);
    qbound->add_option("--base", opt.base, "Base place")->required();
    qbound->add_option("--level", opt.levels,
                       "Level: a Kummer radicand, 'kummer:<radicand>', or 'uroot'")
        ->required();

    auto* inert = app.add_subcommand("inert-tower", "Build a tower with (t) inert at every level");
    inert->add_option("--p", opt.p, "Prime base field characteristic")->capture_default_str();
    inert->add_option("--degrees", opt.degrees, "Step degrees (repeatable)")->required();
    inert->add_option("--format", opt.common.format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "Run a named acceptance sweep suite");
    sweep->add_option("--suite", opt.suite,
                      "split-vs-factor, norm-consistency, L2L1-equivalence, sint-corpus, "
                      "inert-tower, qbound-patterns")
        ->required();
    sweep->add_option("--seed", opt.seed, "Seed for randomized suites")->capture_default_str();
    sweep->add_option("--format", opt.common.format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    json req;
    req["field"] = opt.common.field;
    auto with_tower = [&](json& r) {
        if (!opt.tower.empty()) r["tower"] = opt.tower;
        r["q"] = opt.common.q;
    };

    if (factor->parsed()) {
        req["op"] = "factor";
        req["poly"] = opt.poly;
    } else if (divisor->parsed()) {
        req["op"] = "divisor";
        req["x"] = opt.x;
    } else if (ord->parsed()) {
        req["op"] = "ord";
        req["x"] = opt.x;
        req["place"] = opt.place;
    } else if (split->parsed()) {
        req["op"] = "split";
        with_tower(req);
        req["c"] = opt.c;
        req["place"] = opt.place;
    } else if (above->parsed()) {
        req["op"] = "places-above";
        with_tower(req);
        req["place"] = opt.place;
    } else if (norm->parsed()) {
        req["op"] = "norm-solve";
        with_tower(req);
        req["a"] = opt.a;
        req["z"] = opt.z;
        if (opt.witness_bound >= 0) req["witness_bound"] = opt.witness_bound;
    } else if (expand->parsed()) {
        req["op"] = "expand-norm";
        with_tower(req);
        req["a"] = opt.a;
        req["z"] = opt.z;
    } else if (valring->parsed()) {
        req["op"] = "valring";
        req["q"] = opt.common.q;
        req["x"] = opt.x;
        req["place"] = opt.place;
        if (!opt.a.empty()) req["a"] = opt.a;
        if (!opt.b.empty()) req["b"] = opt.b;
    } else if (sint->parsed()) {
        req["op"] = "sint";
        req["q"] = opt.common.q;
        req["x"] = opt.x;
        req["S"] = opt.S;
        req["sample_size"] = opt.sample_size;
    } else if (constants->parsed()) {
        req["op"] = "constants";
        req["q"] = opt.common.q;
        req["x"] = opt.x;
        req["sample_size"] = opt.sample_size;
    } else if (chooseab->parsed()) {
        req["op"] = "choose-ab";
        req["q"] = opt.common.q;
        req["mode"] = opt.mode;
        if (!opt.place.empty()) req["place"] = opt.place;
        if (!opt.S.empty()) req["S"] = opt.S;
    } else if (tree->parsed()) {
        req["op"] = "tree";
        req["q"] = opt.common.q;
        req["base"] = opt.base;
        req["levels"] = parse_levels(opt.levels);
    } else if (qbound->parsed()) {
        req["op"] = "qbound";
        req["q"] = opt.common.q;
        req["base"] = opt.base;
        req["levels"] = parse_levels(opt.levels);
    } else if (inert->parsed()) {
        req = json{{"op", "inert-tower"}, {"p", opt.p}, {"degrees", opt.degrees}};
    } else if (sweep->parsed()) {
        req = json{{"op", "sweep"}, {"suite", opt.suite}, {"seed", opt.seed}};
    }

    return run_request(req, opt.common.format);
}
