#include "klab/kummer.hpp"

#include <sstream>

namespace klab {

namespace {

bool small_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

long mod_inverse(long s, int q) {
    long r = ((s % q) + q) % q;
    for (long a = 1; a < q; ++a)
        if ((a * r) % q == 1) return a;
    throw degenerate_error("NotInvertible", "order not coprime to q");
}

} // namespace

Tower tower_make(const FieldPtr& F, int q, std::vector<RatFunc> radicands) {
    if (!small_prime(q)) throw parse_error("q must be a prime");
    if (radicands.size() > 6) throw limit_error("tower depth limited to 6");
    if ((F->size() - 1) % static_cast<std::uint64_t>(q) != 0)
        throw degenerate_error("MissingRootOfUnity", "q must divide |F| - 1 so that K contains the q-th roots of unity");
    Tower tw;
    tw.F = F;
    tw.q = q;
    for (auto& c : radicands) {
        if (c.is_zero()) throw degenerate_error("ZeroRadicand", "tower radicands must be nonzero");
        Tower prefix = tw;
        tw.nontrivial.push_back(!is_qth_power_in_tower(c, prefix));
        tw.radicands.push_back(std::move(c));
    }
    return tw;
}

bool is_qth_power_in_tower(const RatFunc& x, const Tower& tower) {
    if (x.is_zero()) throw degenerate_error("ZeroRadicand", "q-th power test on zero");
    size_t n = tower.radicands.size();
    if (n > 6) throw limit_error("tower depth limited to 6");
    std::uint64_t combos = 1;
    for (size_t i = 0; i < n; ++i) combos *= static_cast<std::uint64_t>(tower.q);
    for (std::uint64_t code = 0; code < combos; ++code) {
        RatFunc y = x;
        std::uint64_t rest = code;
        for (size_t i = 0; i < n; ++i) {
            int e = static_cast<int>(rest % static_cast<std::uint64_t>(tower.q));
            rest /= static_cast<std::uint64_t>(tower.q);
            if (e) y = y * rf_pow(tower.radicands[i], e);
        }
        if (is_qth_power_in_K(y, tower.q)) return true;
    }
    return false;
}

std::string TowerPlace::path_string() const {
    if (path.empty()) return "-";
    std::ostringstream out;
    bool first = true;
    for (const PathStep& s : path) {
        if (!first) out << ".";
        first = false;
        switch (s.kind) {
            case StepKind::Split: out << "S" << s.branch; break;
            case StepKind::Inert: out << "I"; break;
            case StepKind::Ramified: out << "R"; break;
        }
    }
    return out.str();
}

std::string step_kind_name(StepKind k) {
    switch (k) {
        case StepKind::Split: return "split";
        case StepKind::Inert: return "inert";
        case StepKind::Ramified: return "ramified";
    }
    return "?";
}

long tower_ord(const RatFunc& x, const TowerPlace& tp) {
    long o = ord_at(x, tp.base);
    if (o == ORD_INFINITY) return ORD_INFINITY;
    return tp.e * o;
}

RatFunc strip_to_unit(const RatFunc& c, const TowerPlace& tp, int q) {
    long m = ord_at(c, tp.base); // tower ord = e * m
    RatFunc u = c * rf_pow(uniformizer(tp.base), -m);
    if (tp.e == 1) {
        if (m % q != 0)
            throw degenerate_error("NotAQthPowerOrder", "order not divisible by q at an unramified place");
        return u; // already stripped to pi^0
    }
    // Past the ramified step: Pi^q = ram_c^alpha * pi^(q*beta) up to q-th
    // powers of units, so c * Pi^(-q m) = c * ram_c^(-alpha m) * pi^(-q beta m).
    return c * rf_pow(tp.ram_c, -tp.ram_alpha * m) * rf_pow(uniformizer(tp.base), -static_cast<long long>(q) * tp.ram_beta * m);
}

bool residue_qth_power_test(const RatFunc& x, const TowerPlace& tp, int q) {
    if (tower_ord(x, tp) != 0)
        throw degenerate_error("NotAUnit", "residue q-th power test requires a unit at the place");
    // tower_ord(x) = 0 forces ord at the base place to be 0 as well, so the
    // residue needs no uniformizer adjustment even on ramified paths.
    FieldPtr R = residue_field(tp.base);
    return is_qth_power_ext(*R, residue_at(x, tp.base), q, tp.f);
}

StepKind classify_place_step(const TowerPlace& tp, const RatFunc& c, int q) {
    if (c.is_zero()) throw degenerate_error("ZeroRadicand", "cannot classify a zero radicand");
    long m = tower_ord(c, tp);
    long r = ((m % q) + q) % q;
    if (r != 0) return StepKind::Ramified;
    RatFunc u = strip_to_unit(c, tp, q);
    FieldPtr R = residue_field(tp.base);
    return is_qth_power_ext(*R, residue_at(u, tp.base), q, tp.f) ? StepKind::Split : StepKind::Inert;
}

std::vector<TowerPlace> places_above(const Tower& tower, const Place& base, int degree_limit) {
    if (base.degree() > degree_limit)
        throw limit_error("base place degree limited to " + std::to_string(degree_limit));
    TowerPlace root;
    root.base = base;
    root.ram_c = RatFunc::one(tower.F);
    std::vector<TowerPlace> leaves{root};
    for (size_t i = 0; i < tower.radicands.size(); ++i) {
        if (!tower.nontrivial[i]) continue;
        const RatFunc& c = tower.radicands[i];
        std::vector<TowerPlace> next;
        for (const TowerPlace& tp : leaves) {
            StepKind k = classify_place_step(tp, c, tower.q);
            if (k == StepKind::Split) {
                for (int b = 0; b < tower.q; ++b) {
                    TowerPlace child = tp;
                    child.path.push_back({StepKind::Split, b});
                    next.push_back(std::move(child));
                }
            } else if (k == StepKind::Inert) {
                TowerPlace child = tp;
                child.path.push_back({StepKind::Inert, -1});
                child.f *= tower.q;
                next.push_back(std::move(child));
            } else {
                TowerPlace child = tp;
                child.path.push_back({StepKind::Ramified, -1});
                // Radicands live in K, so ramification can happen at most once
                // along a path: afterwards every tower order is divisible by q.
                long s = ord_at(c, tp.base);
                child.e *= tower.q;
                child.ram_c = c;
                child.ram_alpha = mod_inverse(s, tower.q);
                child.ram_beta = (1 - child.ram_alpha * s) / tower.q;
                next.push_back(std::move(child));
            }
        }
        leaves = std::move(next);
    }
    return leaves;
}

} // namespace klab
