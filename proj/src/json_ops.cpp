#include "klab/json_ops.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

namespace klab {

namespace {

std::string require_string(const ordered_json& req, const std::string& key) {
    if (!req.contains(key) || !req.at(key).is_string())
        throw parse_error("missing or non-string field '" + key + "'");
    return req.at(key).get<std::string>();
}

int optional_int(const ordered_json& req, const std::string& key, int dflt) {
    if (!req.contains(key)) return dflt;
    if (!req.at(key).is_number_integer()) throw parse_error("field '" + key + "' must be an integer");
    return req.at(key).get<int>();
}

FieldPtr field_from(const ordered_json& req) {
    return parse_field_spec(require_string(req, "field"));
}

int q_from(const ordered_json& req) { return optional_int(req, "q", 2); }

RatFunc rf_from(const ordered_json& req, const std::string& key, const FieldPtr& F) {
    return parse_ratfunc(require_string(req, key), F);
}

Place place_from(const ordered_json& req, const std::string& key, const FieldPtr& F) {
    return parse_place(require_string(req, key), F);
}

Tower tower_from(const ordered_json& req, const FieldPtr& F, int q) {
    std::vector<RatFunc> rads;
    if (req.contains("tower")) {
        if (!req.at("tower").is_array()) throw parse_error("field 'tower' must be an array");
        for (const auto& item : req.at("tower"))
            rads.push_back(parse_ratfunc(item.get<std::string>(), F));
    }
    return tower_make(F, q, std::move(rads));
}

std::vector<Place> places_from(const ordered_json& req, const std::string& key, const FieldPtr& F) {
    std::vector<Place> out;
    if (!req.contains(key) || !req.at(key).is_array())
        throw parse_error("missing or non-array field '" + key + "'");
    for (const auto& item : req.at(key)) out.push_back(parse_place(item.get<std::string>(), F));
    return out;
}

ordered_json divisor_json(const Divisor& d) {
    ordered_json arr = ordered_json::array();
    for (const auto& [place, ord] : d)
        arr.push_back({{"place", place.to_string()}, {"ord", ord}});
    return arr;
}

ordered_json tower_place_json(const TowerPlace& tp) {
    return {{"base", tp.base.to_string()},
            {"path", tp.path_string()},
            {"e", tp.e},
            {"f", tp.f}};
}

ordered_json verdict_json(const NormVerdict& v) {
    ordered_json j;
    j["status"] = norm_status_name(v.status);
    j["method"] = v.method;
    if (v.obstruction)
        j["obstruction"] = tower_place_json(*v.obstruction);
    else
        j["obstruction"] = nullptr;
    j["used_ramified_branch"] = v.used_ramified_branch;
    if (v.witness) {
        ordered_json w = ordered_json::array();
        for (const auto& c : *v.witness) w.push_back(c.to_string());
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

ordered_json aux_pair_json(const AuxPair& p) {
    ordered_json j;
    j["mode"] = aux_mode_name(p.mode);
    j["q"] = p.q;
    j["a"] = p.a.to_string();
    j["b"] = p.b.to_string();
    if (p.mode == AuxMode::SIntegers) {
        ordered_json s = ordered_json::array();
        for (const auto& pl : p.S) s.push_back(pl.to_string());
        j["S"] = s;
    } else {
        j["place"] = p.place.to_string();
    }
    return j;
}

ordered_json trace_json(const FormulaTrace& t) {
    ordered_json rads = ordered_json::array();
    for (const auto& r : t.radicands) rads.push_back(r.to_string());
    return {{"radicands", rads},
            {"rhs", t.rhs.to_string()},
            {"verdict", verdict_json(t.verdict)},
            {"value", t.value}};
}

ordered_json predicate_json(const PredicateResult& r) {
    ordered_json j;
    j["value"] = r.value;
    j["surrogate"] = r.surrogate;
    if (r.trace) j["trace"] = trace_json(*r.trace);
    if (!r.confirmations.empty()) {
        ordered_json c = ordered_json::array();
        for (const auto& t : r.confirmations) c.push_back(trace_json(t));
        j["confirmations"] = c;
    }
    j["confirmation_count"] = static_cast<int>(r.confirmations.size());
    if (r.blocking) j["blocking"] = aux_pair_json(*r.blocking);
    j["warnings"] = r.warnings;
    return j;
}

ordered_json tree_json(const FactorTree& tree) {
    ordered_json nodes = ordered_json::array();
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        const TreeNode& nd = tree.nodes[i];
        ordered_json n;
        n["id"] = static_cast<int>(i);
        n["parent"] = nd.parent;
        n["level"] = nd.level;
        if (i > 0) {
            n["level_kind"] = level_kind_name(nd.level_kind);
            n["step"] = nd.trivial ? "trivial" : step_kind_name(nd.kind);
            n["branch"] = nd.branch;
        }
        n["e_rel"] = nd.e_rel;
        n["f_rel"] = nd.f_rel;
        n["e"] = nd.e;
        n["f"] = nd.f;
        if (!nd.cert.empty()) n["cert"] = nd.cert;
        n["path"] = tree.path_string(static_cast<int>(i));
        n["children"] = nd.children;
        nodes.push_back(std::move(n));
    }
    ordered_json j;
    j["base"] = tree.base.to_string();
    j["q"] = tree.q;
    j["nodes"] = nodes;
    j["leaves"] = tree.leaves();
    return j;
}

ordered_json qbound_json(const QBoundReport& rep) {
    ordered_json paths = ordered_json::array();
    for (const auto& p : rep.paths)
        paths.push_back({{"path", p.path},
                         {"ord_e", p.ord_e},
                         {"ord_f", p.ord_f},
                         {"max_ord_e", p.max_ord_e},
                         {"max_ord_f", p.max_ord_f}});
    ordered_json j;
    j["q"] = rep.q;
    j["paths"] = paths;
    if (rep.unbounded_evidence) {
        j["verdict"] = "UnboundedEvidence";
        j["evidence"] = {{"path", rep.paths.empty() ? "" : [&] {
                              for (const auto& p : rep.paths)
                                  if (p.leaf == rep.evidence_leaf) return p.path;
                              return std::string();
                          }()},
                         {"growth", rep.growth}};
    } else {
        j["verdict"] = "BoundedSoFar";
        j["bound"] = rep.bound;
    }
    return j;
}

std::vector<LevelSpec> levels_from(const ordered_json& req, const FieldPtr& F) {
    std::vector<LevelSpec> out;
    if (!req.contains("levels") || !req.at("levels").is_array())
        throw parse_error("missing or non-array field 'levels'");
    for (const auto& item : req.at("levels")) {
        std::string kind = item.at("kind").get<std::string>();
        if (kind == "kummer") {
            out.push_back(LevelSpec::kummer(parse_ratfunc(item.at("radicand").get<std::string>(), F)));
        } else if (kind == "uniformizer-root") {
            out.push_back(LevelSpec::uniformizer_root());
        } else {
            throw parse_error("level kind must be 'kummer' or 'uniformizer-root' "
                              "(defined levels come from the inert-tower op)");
        }
    }
    return out;
}

AuxMode mode_from(const ordered_json& req) {
    std::string m = req.contains("mode") ? req.at("mode").get<std::string>() : "valring";
    if (m == "valring") return AuxMode::ValRing;
    if (m == "s-integers") return AuxMode::SIntegers;
    if (m == "uniform-bounded") return AuxMode::UniformBounded;
    throw parse_error("mode must be one of valring, s-integers, uniform-bounded");
}

ordered_json inert_tower_json(const InertTowerReport& rep) {
    ordered_json levels = ordered_json::array();
    TowerAlgebra A(rep.F);
    for (const auto& lvl : rep.levels) {
        int m = A.levels();
        ordered_json coeffs = ordered_json::array();
        ordered_json coords = ordered_json::array();
        for (const auto& c : lvl.P.coeff) {
            coeffs.push_back(A.to_string(m, c));
            ordered_json vec = ordered_json::array();
            for (const auto& r : c) vec.push_back(r.to_string());
            coords.push_back(std::move(vec));
        }
        ordered_json j;
        j["degree"] = lvl.degree;
        j["p_reduced"] = lvl.p_reduced.to_string("X");
        j["q_avoid"] = lvl.q_avoid.to_string();
        j["ell"] = lvl.ell;
        j["P"] = coeffs;
        j["P_coords"] = coords;
        j["inert"] = {{"f", lvl.inert.f},
                      {"place", lvl.inert.place.to_string()},
                      {"kappa_rel_deg", lvl.inert.kappa_rel_deg},
                      {"reduced", lvl.inert.reduced.to_string("X")}};
        j["totram"] = {{"e", lvl.totram.e}, {"place", lvl.totram.place.to_string()}};
        j["d_next"] = lvl.d_next;
        j["disc_norm"] = lvl.disc_norm.to_string();
        levels.push_back(std::move(j));
        A.push_level(lvl.P);
    }
    ordered_json j;
    j["p"] = rep.F->p();
    j["levels"] = levels;
    j["d_final"] = rep.d_final;
    Place p0 = Place::finite(Poly::x(rep.F));
    j["tree"] = tree_json(factor_tree(p0, inert_tower_levels(rep), 2));
    return j;
}

ordered_json ord_json(long o) {
    if (o == ORD_INFINITY) return ordered_json("infinity");
    return ordered_json(o);
}

// --- sweep suites -----------------------------------------------------------

// Deterministic radicand pool: first `count` nonzero reduced elements with
// numerator degree <= 2 and monic denominator degree <= 1, in code order.
std::vector<RatFunc> radicand_pool(const FieldPtr& F, int count) {
    std::vector<RatFunc> pool;
    for (int dd = 0; dd <= 1 && static_cast<int>(pool.size()) < count; ++dd) {
        std::uint64_t dcount = monic_poly_count(*F, dd);
        for (std::uint64_t di = 0; di < dcount && static_cast<int>(pool.size()) < count; ++di) {
            Poly den = monic_poly_by_index(F, dd, di);
            std::uint64_t ncount = 1;
            for (int i = 0; i < 3; ++i) ncount *= F->size();
            for (std::uint64_t ni = 1; ni < ncount && static_cast<int>(pool.size()) < count; ++ni) {
                Poly num = poly_by_code(F, 2, ni);
                RatFunc x(num, den);
                if (x.num != num || x.den != den) continue; // not reduced: duplicate
                pool.push_back(std::move(x));
            }
        }
    }
    return pool;
}

ordered_json sweep_split_vs_factor() {
    ordered_json rep;
    rep["suite"] = "split-vs-factor";
    long cases = 0, failures = 0;
    ordered_json first_failure = nullptr;
    auto run_field = [&](const FieldPtr& F, int q) {
        std::vector<RatFunc> pool = radicand_pool(F, 30);
        for (int d = 1; d <= 3; ++d) {
            for (const Poly& pi : irreducibles_of_degree(F, d)) {
                Place place = Place::finite(pi);
                TowerPlace tp;
                tp.base = place;
                tp.ram_c = RatFunc::one(F);
                FieldPtr kappa = residue_field(place);
                for (const RatFunc& c : pool) {
                    ++cases;
                    StepKind got = classify_place_step(tp, c, q);
                    StepKind want;
                    long m = ord_at(c, place);
                    if (((m % q) + q) % q != 0) {
                        want = StepKind::Ramified;
                    } else {
                        // Oracle: count roots of X^q - cbar in the residue field.
                        ffe cbar = residue_at(strip_to_unit(c, tp, q), place);
                        int roots = 0;
                        for (std::uint64_t y = 0; y < kappa->size(); ++y)
                            if (kappa->pow(y, q) == cbar) ++roots;
                        if (roots != 0 && roots != q && (kappa->size() - 1) % static_cast<std::uint64_t>(q) == 0)
                            throw degenerate_error("InternalError", "root count must be 0 or q");
                        want = roots > 0 ? StepKind::Split : StepKind::Inert;
                    }
                    if (got != want) {
                        ++failures;
                        if (first_failure.is_null())
                            first_failure = {{"field", field_spec_string(*F)},
                                             {"q", q},
                                             {"place", place.to_string()},
                                             {"radicand", c.to_string()},
                                             {"got", step_kind_name(got)},
                                             {"want", step_kind_name(want)}};
                    }
                }
            }
        }
    };
    run_field(Field::prime(3), 2);
    run_field(Field::make(2, 2), 3);
    rep["cases"] = cases;
    rep["failures"] = failures;
    rep["first_failure"] = first_failure;
    return rep;
}

std::vector<RatFunc> all_elems_deg2(const FieldPtr& F) {
    std::vector<RatFunc> out;
    for (int dd = 0; dd <= 2; ++dd) {
        std::uint64_t dcount = monic_poly_count(*F, dd);
        for (std::uint64_t di = 0; di < dcount; ++di) {
            Poly den = monic_poly_by_index(F, dd, di);
            std::uint64_t ncount = 1;
            for (int i = 0; i < 3; ++i) ncount *= F->size();
            for (std::uint64_t ni = 1; ni < ncount; ++ni) {
                Poly num = poly_by_code(F, 2, ni);
                RatFunc x(num, den);
                if (x.num != num || x.den != den) continue;
                out.push_back(std::move(x));
            }
        }
    }
    return out;
}

ordered_json sweep_norm_consistency() {
    ordered_json rep;
    rep["suite"] = "norm-consistency";
    FieldPtr F = Field::prime(3);
    Tower L = tower_make(F, 2, {});
    std::vector<RatFunc> elems = all_elems_deg2(F);
    long cases = 0, solvable = 0, unsolvable = 0, trivially = 0, failures = 0;
    ordered_json first_failure = nullptr;
    auto fail = [&](const RatFunc& a, const RatFunc& z, const std::string& why) {
        ++failures;
        if (first_failure.is_null())
            first_failure = {{"a", a.to_string()}, {"z", z.to_string()}, {"why", why}};
    };
    for (const RatFunc& a : elems) {
        if (is_qth_power_in_K(a, 2)) continue;
        for (const RatFunc& z : elems) {
            ++cases;
            NormVerdict v = norm_solvable(L, a, z);
            auto w = brute_force_norm_witness(L, a, z, 4);
            if (v.status == NormStatus::Unsolvable) {
                ++unsolvable;
                if (w) fail(a, z, "oracle says Unsolvable but a witness exists within bound 4");
            } else {
                v.status == NormStatus::Solvable ? ++solvable : ++trivially;
                if (!w) {
                    fail(a, z, "oracle says solvable but no witness within bound 4");
                } else {
                    NormRing R(L, a);
                    auto [nz, in_K] = R.norm_to_K(*w);
                    if (!in_K || nz != z) fail(a, z, "witness does not verify");
                }
            }
        }
    }
    rep["cases"] = cases;
    rep["solvable"] = solvable;
    rep["trivially_solvable"] = trivially;
    rep["unsolvable"] = unsolvable;
    rep["failures"] = failures;
    rep["first_failure"] = first_failure;
    return rep;
}

ordered_json sweep_l2l1_equivalence() {
    ordered_json rep;
    rep["suite"] = "L2L1-equivalence";
    FieldPtr F = Field::prime(3);
    int q = 2;
    std::vector<Place> places{Place::finite(Poly::x(F)), Place::inf(F)};
    std::vector<RatFunc> elems = all_elems_deg2(F);
    // Criterion floor is 300 distinct x; extend the pool with monic degree-3
    // denominators.
    for (std::uint64_t di = 0; di < monic_poly_count(*F, 3); ++di) {
        Poly den = monic_poly_by_index(F, 3, di);
        for (std::uint64_t ni = 1; ni < 27; ++ni) {
            Poly num = poly_by_code(F, 2, ni);
            RatFunc x(num, den);
            if (x.num == num && x.den == den) elems.push_back(std::move(x));
        }
    }
    long cases = 0, pole_cases = 0, failures = 0;
    ordered_json first_failure = nullptr;
    for (const Place& place : places) {
        AuxPair pair = choose_ab(F, q, place, AuxMode::ValRing);
        for (const RatFunc& x : elems) {
            ++cases;
            long o = ord_at(x, place);
            PredicateResult r = val_ring_predicate(x, place, pair);
            if (r.value != (o >= 0)) {
                ++failures;
                if (first_failure.is_null())
                    first_failure = {{"x", x.to_string()},
                                     {"place", place.to_string()},
                                     {"ord", o},
                                     {"predicate", r.value},
                                     {"why", "valuation-ring predicate disagrees with ord"}};
                continue;
            }
            // Pole dichotomy: ord x >= 0 iff ord(b x^q + b^q) = 0 mod q.
            RatFunc rhs = pair.b * rf_pow(x, q) + rf_pow(pair.b, q);
            if (rhs.is_zero()) continue;
            ++pole_cases;
            long ro = ord_at(rhs, place);
            bool rhs_div = ((ro % q) + q) % q == 0;
            if (rhs_div != (o >= 0)) {
                ++failures;
                if (first_failure.is_null())
                    first_failure = {{"x", x.to_string()},
                                     {"place", place.to_string()},
                                     {"ord_rhs", ro},
                                     {"why", "pole dichotomy violated"}};
            }
        }
    }
    rep["distinct_x"] = static_cast<long>(elems.size());
    rep["cases"] = cases;
    rep["pole_dichotomy_cases"] = pole_cases;
    rep["failures"] = failures;
    rep["first_failure"] = first_failure;
    return rep;
}

RatFunc random_elem(const FieldPtr& F, std::mt19937_64& rng, int deg) {
    std::uint64_t ncount = 1;
    for (int i = 0; i <= deg; ++i) ncount *= F->size();
    Poly num = Poly::zero(F);
    while (num.is_zero()) num = poly_by_code(F, deg, rng() % ncount);
    int dd = static_cast<int>(rng() % static_cast<std::uint64_t>(deg + 1));
    Poly den = monic_poly_by_index(F, dd, rng() % monic_poly_count(*F, dd));
    return RatFunc(num, den);
}

ordered_json sweep_sint_corpus(std::uint64_t seed) {
    ordered_json rep;
    rep["suite"] = "sint-corpus";
    FieldPtr F = Field::prime(3);
    int q = 2;
    Place pt = Place::finite(Poly::x(F));
    Place pinf = Place::inf(F);
    std::vector<std::vector<Place>> sets{{pinf}, {pt}, {pt, pinf}};
    std::mt19937_64 rng(seed);
    long cases = 0, true_cases = 0, false_cases = 0, failures = 0, skipped = 0;
    ordered_json first_failure = nullptr;
    auto fail = [&](const RatFunc& x, size_t si, const std::string& why) {
        ++failures;
        if (first_failure.is_null())
            first_failure = {{"x", x.to_string()}, {"S_index", si}, {"why", why}};
    };
    RatFunc minus_one = RatFunc::constant(F, F->neg(1));
    for (int i = 0; i < 500; ++i) {
        RatFunc x = random_elem(F, rng, 2);
        // x = 0 and x = -1 are outside the formula's domain (1 + x^{-1}
        // undefined or zero); skip with a count, never misreport.
        while (x.is_zero() || x == minus_one) {
            ++skipped;
            x = random_elem(F, rng, 2);
        }
        size_t si = static_cast<size_t>(i) % sets.size();
        const std::vector<Place>& S = sets[si];
        ++cases;
        // Ground truth by divisor inspection.
        bool truth = true;
        for (const auto& [place, ord] : divisor_of(x)) {
            if (ord >= 0) continue;
            bool in_S = false;
            for (const Place& s : S) in_S = in_S || s == place;
            if (!in_S) { truth = false; break; }
        }
        PredicateResult r = s_integer_decide(x, S, q, 5);
        if (r.value != truth) { fail(x, si, "decision disagrees with divisor inspection"); continue; }
        if (!truth) {
            ++false_cases;
            if (!r.blocking) { fail(x, si, "false case without blocking pair"); continue; }
            FormulaTrace t = s_integer_formula(x, *r.blocking);
            if (t.value) fail(x, si, "blocking pair does not falsify the formula");
        } else {
            ++true_cases;
            long confirmed = 0;
            for (const auto& t : r.confirmations)
                if (t.value) ++confirmed;
            if (confirmed < 5) fail(x, si, "fewer than 5 sampled confirmations");
        }
    }
    rep["seed"] = seed;
    rep["cases"] = cases;
    rep["true_cases"] = true_cases;
    rep["false_cases"] = false_cases;
    rep["skipped_degenerate"] = skipped;
    rep["failures"] = failures;
    rep["first_failure"] = first_failure;
    return rep;
}

ordered_json sweep_inert_tower() {
    ordered_json rep;
    rep["suite"] = "inert-tower";
    auto t0 = std::chrono::steady_clock::now();
    InertTowerReport tower = build_inert_tower(3, 2, {2, 2});
    long failures = 0;
    std::vector<std::string> checks;
    auto check = [&](bool ok, const std::string& what) {
        checks.push_back((ok ? "pass: " : "FAIL: ") + what);
        if (!ok) ++failures;
    };
    check(tower.d_final == 4, "residue degree over (t) is 4");
    check(tower.levels.size() == 2, "two levels built");
    for (size_t m = 0; m < tower.levels.size(); ++m) {
        const auto& lvl = tower.levels[m];
        check(lvl.inert.f == 2, "level " + std::to_string(m) + " inert certificate f = 2");
        check(lvl.totram.e == 2, "level " + std::to_string(m) + " totram certificate e = 2");
        check(poly_is_irreducible(lvl.inert.reduced),
              "level " + std::to_string(m) + " reduction irreducible");
    }
    FieldPtr F = Field::prime(3);
    FactorTree tr = factor_tree(Place::finite(Poly::x(F)), inert_tower_levels(tower), 2);
    auto leaves = tr.leaves();
    check(leaves.size() == 1, "unique factor over (t) at every level");
    check(!leaves.empty() && tr.nodes[static_cast<size_t>(leaves[0])].f == 4,
          "cumulative residue degree 4 in the factor tree");
    auto t1 = std::chrono::steady_clock::now();
    rep["checks"] = checks;
    rep["cases"] = static_cast<long>(checks.size());
    rep["failures"] = failures;
    rep["seconds"] = std::chrono::duration<double>(t1 - t0).count();
    return rep;
}

ordered_json sweep_qbound_patterns() {
    ordered_json rep;
    rep["suite"] = "qbound-patterns";
    FieldPtr F = Field::prime(3);
    RatFunc t = RatFunc::t(F);
    Place pt = Place::finite(Poly::x(F));
    long failures = 0;
    std::vector<std::string> checks;
    auto check = [&](bool ok, const std::string& what) {
        checks.push_back((ok ? "pass: " : "FAIL: ") + what);
        if (!ok) ++failures;
    };
    // t^{1/2^i} pattern: ord_2(e) = depth, unbounded evidence at every depth.
    for (int depth = 1; depth <= 4; ++depth) {
        std::vector<LevelSpec> lvls(static_cast<size_t>(depth), LevelSpec::uniformizer_root());
        QBoundReport qr = path_q_profile(factor_tree(pt, lvls, 2), 2);
        check(qr.paths.size() == 1 && qr.paths[0].max_ord_e == depth,
              "uniformizer-root depth " + std::to_string(depth) + ": ord_2(e) = depth");
        check(qr.unbounded_evidence,
              "uniformizer-root depth " + std::to_string(depth) + ": unbounded evidence");
    }
    // Split-only tower: radicands with square residues at (t).
    {
        std::vector<LevelSpec> lvls{LevelSpec::kummer(t + RatFunc::one(F)),
                                    LevelSpec::kummer(RatFunc(Poly(F, {1, 0, 1}), Poly::constant(F, 1)))};
        QBoundReport qr = path_q_profile(factor_tree(pt, lvls, 2), 2);
        check(!qr.unbounded_evidence && qr.bound == 0, "split-only tower: BoundedSoFar(0)");
        check(qr.paths.size() == 4, "split-only tower: four leaves at depth 2");
    }
    // Galois trees: sibling paths carry identical (e, f).
    {
        std::vector<std::vector<RatFunc>> towers{
            {t, t + RatFunc::one(F), t + RatFunc::constant(F, 2)},
            {t + RatFunc::one(F), t + RatFunc::constant(F, 2)},
            {t, RatFunc(Poly(F, {1, 0, 1}), Poly::constant(F, 1)), t + RatFunc::one(F)}};
        for (size_t ti = 0; ti < towers.size(); ++ti) {
            std::vector<LevelSpec> lvls;
            for (const auto& c : towers[ti]) lvls.push_back(LevelSpec::kummer(c));
            for (const Place& base : {pt, Place::inf(F), Place::finite(Poly(F, {1, 1}))}) {
                FactorTree tr = factor_tree(base, lvls, 2);
                auto leaves = tr.leaves();
                bool equal = true;
                for (int l : leaves)
                    equal = equal && tr.nodes[static_cast<size_t>(l)].e ==
                                         tr.nodes[static_cast<size_t>(leaves[0])].e &&
                            tr.nodes[static_cast<size_t>(l)].f ==
                                tr.nodes[static_cast<size_t>(leaves[0])].f;
                check(equal, "Galois tower " + std::to_string(ti) + " at " + base.to_string() +
                                 ": sibling (e, f) equal");
            }
        }
    }
    rep["checks"] = checks;
    rep["cases"] = static_cast<long>(checks.size());
    rep["failures"] = failures;
    return rep;
}

} // namespace

ordered_json run_sweep(const std::string& suite, const ordered_json& params) {
    std::uint64_t seed = 12345;
    if (params.contains("seed")) seed = params.at("seed").get<std::uint64_t>();
    ordered_json rep;
    if (suite == "split-vs-factor") rep = sweep_split_vs_factor();
    else if (suite == "norm-consistency") rep = sweep_norm_consistency();
    else if (suite == "L2L1-equivalence") rep = sweep_l2l1_equivalence();
    else if (suite == "sint-corpus") rep = sweep_sint_corpus(seed);
    else if (suite == "inert-tower") rep = sweep_inert_tower();
    else if (suite == "qbound-patterns") rep = sweep_qbound_patterns();
    else throw parse_error("unknown sweep suite '" + suite + "'");
    return rep;
}

std::string klab_version_string() { return "kummerlab 1.0.0"; }

ordered_json error_response(const Error& e) {
    ordered_json j;
    j["schema"] = 1;
    j["error"] = {{"class", static_cast<int>(e.cls())},
                  {"kind", e.kind()},
                  {"message", std::string(e.what())}};
    return j;
}

ordered_json eval_request(const ordered_json& req) {
    if (!req.is_object()) throw parse_error("request must be a JSON object");
    std::string op = require_string(req, "op");
    ordered_json out;
    out["schema"] = 1;
    out["op"] = op;

    if (op == "version") {
        out["version"] = klab_version_string();
        return out;
    }
    if (op == "sweep") {
        out["report"] = run_sweep(require_string(req, "suite"), req);
        return out;
    }
    if (op == "inert-tower") {
        int p = optional_int(req, "p", 3);
        std::vector<int> degrees;
        if (!req.contains("degrees") || !req.at("degrees").is_array())
            throw parse_error("missing or non-array field 'degrees'");
        for (const auto& d : req.at("degrees")) degrees.push_back(d.get<int>());
        out["tower"] = inert_tower_json(build_inert_tower(p, static_cast<int>(degrees.size()), degrees));
        return out;
    }

    FieldPtr F = field_from(req);
    out["field"] = field_spec_string(*F);

    if (op == "factor") {
        Poly f = parse_poly(require_string(req, "poly"), F);
        if (f.is_zero()) throw degenerate_error("DivisionByZero", "cannot factor the zero polynomial");
        ordered_json factors = ordered_json::array();
        for (const auto& [p, m] : factor_poly(f))
            factors.push_back({{"poly", p.to_string()}, {"mult", m}});
        out["lead"] = F->to_string(f.lc());
        out["factors"] = factors;
        return out;
    }
    if (op == "divisor") {
        RatFunc x = rf_from(req, "x", F);
        if (x.is_zero()) throw degenerate_error("DivisionByZero", "the zero element has no divisor");
        Divisor d = divisor_of(x);
        out["divisor"] = divisor_json(d);
        out["degree_sum"] = divisor_degree(d);
        return out;
    }
    if (op == "ord") {
        RatFunc x = rf_from(req, "x", F);
        Place place = place_from(req, "place", F);
        out["ord"] = ord_json(ord_at(x, place));
        return out;
    }

    int q = q_from(req);

    if (op == "split") {
        Tower L = tower_from(req, F, q);
        RatFunc c = rf_from(req, "c", F);
        Place place = place_from(req, "place", F);
        ordered_json steps = ordered_json::array();
        for (const TowerPlace& tp : places_above(L, place)) {
            ordered_json j = tower_place_json(tp);
            j["step"] = step_kind_name(classify_place_step(tp, c, q));
            steps.push_back(std::move(j));
        }
        out["q"] = q;
        out["places"] = steps;
        return out;
    }
    if (op == "places-above") {
        Tower L = tower_from(req, F, q);
        Place place = place_from(req, "place", F);
        ordered_json places = ordered_json::array();
        for (const TowerPlace& tp : places_above(L, place)) places.push_back(tower_place_json(tp));
        out["q"] = q;
        out["places"] = places;
        return out;
    }
    if (op == "norm-solve") {
        Tower L = tower_from(req, F, q);
        RatFunc a = rf_from(req, "a", F);
        RatFunc z = rf_from(req, "z", F);
        NormVerdict v = norm_solvable(L, a, z);
        if (req.contains("witness_bound") && v.status != NormStatus::Unsolvable)
            v.witness = brute_force_norm_witness(L, a, z, optional_int(req, "witness_bound", 4));
        ordered_json j = verdict_json(v);
        out["q"] = q;
        for (auto& [k, val] : j.items()) out[k] = val;
        return out;
    }
    if (op == "expand-norm") {
        Tower L = tower_from(req, F, q);
        RatFunc a = rf_from(req, "a", F);
        RatFunc z = rf_from(req, "z", F);
        PolySystem sys = expand_norm_to_system(L, a, z);
        ordered_json eqs = ordered_json::array();
        for (size_t i = 0; i < sys.lhs.size(); ++i) {
            ordered_json terms = ordered_json::array();
            for (const auto& [expo, coeff] : sys.lhs[i])
                terms.push_back({{"exponents", expo}, {"coeff", coeff.to_string()}});
            eqs.push_back({{"lhs", sympoly_to_string(sys.lhs[i])},
                           {"terms", terms},
                           {"rhs", sys.rhs[i].to_string()}});
        }
        out["q"] = q;
        out["variables"] = sys.variables;
        out["equations"] = eqs;
        return out;
    }
    if (op == "valring") {
        RatFunc x = rf_from(req, "x", F);
        Place place = place_from(req, "place", F);
        AuxPair pair;
        if (req.contains("a") && req.contains("b")) {
            pair.mode = AuxMode::ValRing;
            pair.q = q;
            pair.a = rf_from(req, "a", F);
            pair.b = rf_from(req, "b", F);
            pair.place = place;
        } else {
            pair = choose_ab(F, q, place, AuxMode::ValRing);
        }
        out["q"] = q;
        out["pair"] = aux_pair_json(pair);
        out["result"] = predicate_json(val_ring_predicate(x, place, pair));
        return out;
    }
    if (op == "sint") {
        RatFunc x = rf_from(req, "x", F);
        std::vector<Place> S = places_from(req, "S", F);
        int samples = optional_int(req, "sample_size", 5);
        out["q"] = q;
        out["result"] = predicate_json(s_integer_decide(x, S, q, samples));
        return out;
    }
    if (op == "constants") {
        RatFunc x = rf_from(req, "x", F);
        int samples = optional_int(req, "sample_size", 5);
        out["q"] = q;
        out["result"] = predicate_json(constants_predicate(x, q, samples));
        return out;
    }
    if (op == "choose-ab") {
        AuxMode mode = mode_from(req);
        std::vector<Place> S;
        Place place;
        if (mode == AuxMode::SIntegers) {
            S = places_from(req, "S", F);
            place = S.empty() ? Place::inf(F) : S[0];
        } else {
            place = place_from(req, "place", F);
            if (req.contains("S")) S = places_from(req, "S", F);
        }
        out["q"] = q;
        out["pair"] = aux_pair_json(choose_ab(F, q, place, mode, S));
        return out;
    }
    if (op == "tree") {
        Place base = place_from(req, "base", F);
        out["q"] = q;
        out["tree"] = tree_json(factor_tree(base, levels_from(req, F), q));
        return out;
    }
    if (op == "qbound") {
        Place base = place_from(req, "base", F);
        FactorTree tr = factor_tree(base, levels_from(req, F), q);
        out["q"] = q;
        out["report"] = qbound_json(path_q_profile(tr, q));
        return out;
    }
    throw parse_error("unknown op '" + op + "'");
}

} // namespace klab
