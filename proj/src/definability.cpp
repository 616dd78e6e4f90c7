#include "klab/definability.hpp"

#include <algorithm>

namespace klab {

namespace {

// Poly in t representing a residue-field element (digits over the constant
// field become coefficients).
Poly residue_as_poly(const FieldPtr& R, const FieldPtr& F, ffe v) {
    if (R->same(*F)) return Poly::constant(F, v);
    std::vector<ffe> d = R->digits(v);
    return Poly(F, std::move(d));
}

std::vector<Place> div_b_places(const RatFunc& b) {
    std::vector<Place> r;
    if (b.is_constant()) return r;
    for (const auto& [pl, o] : divisor_of(b)) {
        (void)o;
        r.push_back(pl);
    }
    return r;
}

bool place_in(const Place& p, const std::vector<Place>& v) {
    for (const Place& s : v)
        if (p == s) return true;
    return false;
}

// Deterministic stream of small nonzero rational functions: numerators and
// (monic) denominators of degree <= 2, ascending.
std::vector<RatFunc> small_elements(const FieldPtr& F, size_t limit) {
    std::vector<RatFunc> out;
    for (int dd = 0; dd <= 2 && out.size() < limit; ++dd) {
        std::uint64_t dc = monic_poly_count(*F, dd);
        for (std::uint64_t di = 0; di < dc && out.size() < limit; ++di) {
            Poly den = monic_poly_by_index(F, dd, di);
            std::uint64_t ncodes = 1;
            for (int i = 0; i <= 2; ++i) ncodes *= F->size();
            for (std::uint64_t ni = 1; ni < ncodes && out.size() < limit; ++ni) {
                Poly num = poly_by_code(F, 2, ni);
                RatFunc x(num, den);
                if (!x.is_zero()) out.push_back(x);
            }
        }
    }
    return out;
}

} // namespace

std::string aux_mode_name(AuxMode m) {
    switch (m) {
        case AuxMode::ValRing: return "valring";
        case AuxMode::SIntegers: return "s-integers";
        case AuxMode::UniformBounded: return "uniform-bounded";
    }
    return "?";
}

AuxPair choose_ab(const FieldPtr& F, int q, const Place& place, AuxMode mode,
                  const std::vector<Place>& S) {
    AuxPair pair;
    pair.mode = mode;
    pair.q = q;
    pair.place = place;
    pair.S = S;
    if (mode == AuxMode::SIntegers) {
        if (S.empty()) throw parse_error("SIntegers mode needs a nonempty place set");
        std::vector<ApproxConstraint> bc, ac;
        for (const Place& s : S) {
            bc.push_back({s, 0, std::nullopt, 1});
            ac.push_back({s, 0, Poly::constant(F, 1), 1});
        }
        pair.b = weak_approx(bc, F);
        pair.a = weak_approx(ac, F);
        return pair;
    }
    // ValRing and UniformBounded share the same existence construction.
    FieldPtr R = residue_field(place);
    ffe nr = find_q_nonresidue(*R, q);
    pair.b = weak_approx({{place, -1, std::nullopt, 1}}, F);
    std::vector<ApproxConstraint> ac{{place, 0, residue_as_poly(R, F, nr), 1}};
    for (const Place& pl : div_b_places(pair.b))
        if (!(pl == place)) ac.push_back({pl, 0, Poly::constant(F, 1), 1});
    pair.a = weak_approx(ac, F);
    return pair;
}

std::vector<AuxPair> sample_aux_pairs(const FieldPtr& F, int q, const std::vector<Place>& S,
                                      int count) {
    std::vector<RatFunc> as, bs;
    RatFunc one = RatFunc::one(F);
    auto fresh = [](const std::vector<RatFunc>& seen, const RatFunc& x) {
        for (const RatFunc& y : seen)
            if (y == x) return false;
        return true;
    };
    for (const RatFunc& x : small_elements(F, 4000)) {
        if (static_cast<int>(as.size()) < count && fresh(as, x)) {
            bool ok = true;
            for (const Place& s : S) {
                RatFunc d = x - one;
                if (d.is_zero()) break; // a = 1 is admissible everywhere
                if (ord_at(d, s) <= 0) { ok = false; break; }
            }
            if (ok) as.push_back(x);
        }
        if (static_cast<int>(bs.size()) < count && fresh(bs, x)) {
            bool ok = true;
            for (const Place& s : S)
                if (ord_at(x, s) != 0) { ok = false; break; }
            if (ok) bs.push_back(x);
        }
        if (static_cast<int>(as.size()) >= count && static_cast<int>(bs.size()) >= count) break;
    }
    std::vector<AuxPair> out;
    for (size_t i = 0; i < as.size() && i < bs.size(); ++i) {
        AuxPair p;
        p.mode = AuxMode::SIntegers;
        p.q = q;
        p.S = S;
        p.a = as[i];
        p.b = bs[i];
        out.push_back(std::move(p));
    }
    return out;
}

namespace {

RatFunc formula_rhs(const RatFunc& x, const AuxPair& pair) {
    RatFunc rhs = pair.b * rf_pow(x, pair.q) + rf_pow(pair.b, pair.q);
    if (rhs.is_zero()) throw degenerate_error("DegenerateRHS", "b x^q + b^q vanishes");
    return rhs;
}

RatFunc nonzero_radicand(const RatFunc& r) {
    if (r.is_zero()) throw degenerate_error("DegenerateRadicand", "formula radicand vanishes");
    return r;
}

} // namespace

PredicateResult val_ring_predicate(const RatFunc& x, const Place& place, const AuxPair& pair) {
    if (pair.mode == AuxMode::SIntegers) throw parse_error("valuation-ring predicate needs a ValRing pair");
    if (!(pair.place == place)) throw parse_error("pair was constructed for a different place");
    PredicateResult res;
    const FieldPtr& F = x.F() ? x.F() : pair.a.F();
    if (x.is_zero()) {
        res.value = true;
        res.surrogate = "ground-truth";
        res.warnings.push_back("x = 0 is integral by convention; formula skipped");
        return res;
    }
    int q = pair.q;
    RatFunc rhs = formula_rhs(x, pair);
    RatFunc one = RatFunc::one(F);
    RatFunc r1 = nonzero_radicand(one + rhs.inverse());
    RatFunc r2 = nonzero_radicand(one + (pair.a + pair.a.inverse()) * pair.b.inverse());
    Tower L2 = tower_make(F, q, {r1, r2});
    FormulaTrace tr;
    tr.radicands = {r1, r2};
    tr.rhs = rhs;
    tr.verdict = norm_solvable(L2, pair.a, rhs);
    tr.value = tr.verdict.status != NormStatus::Unsolvable;
    res.value = tr.value;
    res.surrogate = "formula";
    res.trace = std::move(tr);
    return res;
}

FormulaTrace s_integer_formula(const RatFunc& x, const AuxPair& pair) {
    const FieldPtr& F = pair.a.F();
    if (x.is_zero()) throw degenerate_error("DegenerateRadicand", "1 + x^{-1} undefined at x = 0");
    RatFunc one = RatFunc::one(F);
    if ((x + one).is_zero()) throw degenerate_error("DegenerateRadicand", "1 + x^{-1} vanishes at x = -1");
    int q = pair.q;
    RatFunc rhs = formula_rhs(x, pair);
    RatFunc r1 = nonzero_radicand(one + rhs.inverse());
    RatFunc r3 = one + x.inverse();
    RatFunc r4 = nonzero_radicand(one + (pair.a + pair.a.inverse()) * x.inverse());
    Tower L4 = tower_make(F, q, {r1, r3, r4});
    FormulaTrace tr;
    tr.radicands = {r1, r3, r4};
    tr.rhs = rhs;
    tr.verdict = norm_solvable(L4, pair.a, rhs);
    tr.value = tr.verdict.status != NormStatus::Unsolvable;
    return tr;
}

AuxPair blocking_pair(const RatFunc& x, const Place& place, const std::vector<Place>& S, int q) {
    if (place_in(place, S)) throw parse_error("blocking place must lie outside S");
    if (x.is_zero() || ord_at(x, place) >= 0)
        throw degenerate_error("NotAPole", "blocking pair needs a pole of x at the place");
    const FieldPtr& F = x.F();
    AuxPair pair;
    pair.mode = AuxMode::SIntegers;
    pair.q = q;
    pair.place = place;
    pair.S = S;
    std::vector<ApproxConstraint> bc{{place, -1, std::nullopt, 1}};
    FieldPtr R = residue_field(place);
    std::vector<ApproxConstraint> ac{{place, 0, residue_as_poly(R, F, find_q_nonresidue(*R, q)), 1}};
    for (const Place& s : S) {
        bc.push_back({s, 0, std::nullopt, 1});
        ac.push_back({s, 0, Poly::constant(F, 1), 1});
    }
    pair.b = weak_approx(bc, F);
    pair.a = weak_approx(ac, F);
    return pair;
}

PredicateResult s_integer_decide(const RatFunc& x, const std::vector<Place>& S, int q,
                                 int sample_size) {
    if (S.empty()) throw parse_error("S must be nonempty");
    if (x.is_zero()) throw degenerate_error("DegenerateRadicand", "x = 0 is out of the formula's domain");
    PredicateResult res;
    std::optional<Place> bad_pole;
    if (!x.is_constant()) {
        for (const auto& [pl, o] : divisor_of(x)) {
            if (o < 0 && !place_in(pl, S)) {
                bad_pole = pl;
                break; // canonical order: first offending pole
            }
        }
    }
    res.value = !bad_pole.has_value();
    if (bad_pole) {
        res.surrogate = "blocking";
        AuxPair bp = blocking_pair(x, *bad_pole, S, q);
        FormulaTrace tr = s_integer_formula(x, bp);
        if (tr.value)
            throw degenerate_error("InternalError", "blocking pair failed to falsify the formula");
        res.blocking = std::move(bp);
        res.trace = std::move(tr);
        return res;
    }
    res.surrogate = "sampled";
    int confirmed = 0;
    for (const AuxPair& pair : sample_aux_pairs(x.F(), q, S, sample_size * 3)) {
        if (confirmed >= sample_size) break;
        try {
            FormulaTrace tr = s_integer_formula(x, pair);
            if (!tr.value)
                throw degenerate_error("InternalError",
                                       "formula false for an admissible pair on an S-integer");
            res.confirmations.push_back(std::move(tr));
            ++confirmed;
        } catch (const Error& e) {
            if (e.cls() != ErrClass::Degenerate || e.kind() == "InternalError") throw;
            res.warnings.push_back("skipped degenerate pair: " + std::string(e.what()));
        }
    }
    return res;
}

PredicateResult multiplicative_R_membership(const RatFunc& x, const Place& place,
                                            const AuxPair& pair, int power_bound) {
    if (pair.mode == AuxMode::SIntegers)
        throw parse_error("R-membership needs a ValRing/UniformBounded pair");
    if (power_bound < pair.q) throw parse_error("power_bound must be at least q");
    PredicateResult res;
    if (x.is_zero()) {
        res.value = true;
        res.surrogate = "ground-truth";
        res.warnings.push_back("x = 0 is in R by convention");
        return res;
    }
    auto in_N = [&](const RatFunc& u) -> std::optional<bool> {
        try {
            return val_ring_predicate(u, place, pair).value;
        } catch (const Error& e) {
            if (e.cls() != ErrClass::Degenerate) throw;
            res.warnings.push_back("skipped degenerate test element: " + std::string(e.what()));
            return std::nullopt;
        }
    };
    auto x_in = in_N(x);
    if (x_in && !*x_in) {
        res.value = false;
        res.surrogate = "bounded-evidence";
        return res;
    }
    // Test x*u for u in a deterministic sample of N plus the powers of x.
    std::vector<RatFunc> tests;
    RatFunc p = x;
    for (int k = 2; k <= power_bound; ++k) {
        p = p * x;
        tests.push_back(p); // x * x^{k-1}
    }
    int sampled = 0;
    for (const RatFunc& u : small_elements(x.F(), 400)) {
        if (sampled >= 8) break;
        auto uin = in_N(u);
        if (!uin || !*uin) continue;
        tests.push_back(x * u);
        ++sampled;
    }
    for (const RatFunc& prod : tests) {
        auto r = in_N(prod);
        if (r && !*r) {
            res.value = false;
            res.surrogate = "bounded-evidence";
            return res;
        }
    }
    res.value = true;
    res.surrogate = "bounded-evidence";
    return res;
}

PredicateResult constants_predicate(const RatFunc& x, int q, int sample_size) {
    if (x.is_zero()) {
        PredicateResult res;
        res.value = true;
        res.surrogate = "ground-truth";
        res.warnings.push_back("x = 0 is constant; formula skipped");
        return res;
    }
    PredicateResult res;
    res.value = x.is_constant();
    const FieldPtr& F = x.F();
    if (!res.value) {
        // A nonconstant always has a pole; block the sentence there.
        Place pole = Place::inf(F);
        for (const auto& [pl, o] : divisor_of(x))
            if (o < 0) { pole = pl; break; }
        res.surrogate = "blocking";
        try {
            AuxPair bp = blocking_pair(x, pole, {}, q);
            FormulaTrace tr = s_integer_formula(x, bp);
            if (tr.value)
                throw degenerate_error("InternalError", "blocking pair failed to falsify the sentence");
            res.blocking = std::move(bp);
            res.trace = std::move(tr);
        } catch (const Error& e) {
            if (e.cls() != ErrClass::Degenerate || e.kind() == "InternalError") throw;
            res.warnings.push_back("blocking-pair cross-check skipped: " + std::string(e.what()));
        }
        return res;
    }
    res.surrogate = "sampled";
    int confirmed = 0;
    for (const AuxPair& pair : sample_aux_pairs(F, q, {}, sample_size * 3)) {
        if (confirmed >= sample_size) break;
        try {
            FormulaTrace tr = s_integer_formula(x, pair);
            if (!tr.value)
                throw degenerate_error("InternalError",
                                       "constants sentence false for a constant x");
            res.confirmations.push_back(std::move(tr));
            ++confirmed;
        } catch (const Error& e) {
            if (e.cls() != ErrClass::Degenerate || e.kind() == "InternalError") throw;
            res.warnings.push_back("skipped degenerate pair: " + std::string(e.what()));
        }
    }
    return res;
}

} // namespace klab
