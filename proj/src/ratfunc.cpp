#include "klab/ratfunc.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace klab {

namespace {

// Extended Euclid: inverse of a modulo m, gcd(a, m) = 1 required.
Poly poly_invmod(const Poly& a, const Poly& m) {
    Poly r0 = m, r1 = poly_mod(a, m);
    Poly s0 = Poly::zero(a.F), s1 = Poly::constant(a.F, 1);
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divmod(r0, r1);
        Poly s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0.deg() != 0) throw degenerate_error("DivisionByZero", "element not invertible modulo place power");
    return poly_mod(s0.scaled(a.F->inv(r0.lc())), m);
}

} // namespace

RatFunc::RatFunc(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw degenerate_error("DivisionByZero", "zero denominator");
    if (num.is_zero()) {
        den = Poly::constant(num.F, 1);
        return;
    }
    Poly g = poly_gcd(num, den);
    if (g.deg() > 0) {
        num = poly_divmod(num, g).first;
        den = poly_divmod(den, g).first;
    }
    if (den.lc() != 1) {
        ffe s = num.F->inv(den.lc());
        num = num.scaled(s);
        den = den.scaled(s);
    }
}

RatFunc RatFunc::from_poly(Poly p) {
    FieldPtr F = p.F;
    return RatFunc(std::move(p), Poly::constant(F, 1));
}

RatFunc RatFunc::operator+(const RatFunc& o) const { return RatFunc(num * o.den + o.num * den, den * o.den); }
RatFunc RatFunc::operator-(const RatFunc& o) const { return RatFunc(num * o.den - o.num * den, den * o.den); }
RatFunc RatFunc::operator-() const { RatFunc r = *this; r.num = -r.num; return r; }
RatFunc RatFunc::operator*(const RatFunc& o) const { return RatFunc(num * o.num, den * o.den); }

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw degenerate_error("DivisionByZero", "division by zero");
    return RatFunc(num * o.den, den * o.num);
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw degenerate_error("DivisionByZero", "inverse of zero");
    return RatFunc(den, num);
}

std::string RatFunc::to_string() const {
    std::string n = num.to_string();
    if (den.is_one()) return n;
    std::string d = den.to_string();
    if (n.find('+') != std::string::npos) n = "(" + n + ")";
    if (d.find('+') != std::string::npos || d.find('*') != std::string::npos) d = "(" + d + ")";
    return n + "/" + d;
}

RatFunc rf_pow(RatFunc a, long long n) {
    if (n < 0) { a = a.inverse(); n = -n; }
    RatFunc r = RatFunc::one(a.F());
    while (n > 0) {
        if (n & 1) r = r * a;
        a = a * a;
        n >>= 1;
    }
    return r;
}

Place Place::finite(Poly pi_) {
    if (pi_.deg() < 1 || !pi_.is_monic() || !poly_is_irreducible(pi_))
        throw parse_error("place must be 'inf' or a monic irreducible polynomial");
    Place p;
    p.F = pi_.F;
    p.pi = std::move(pi_);
    return p;
}

Place parse_place(const std::string& text, const FieldPtr& F) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s == "inf" || s == "infty" || s == "oo") return Place::inf(F);
    return Place::finite(parse_poly(text, F));
}

long ord_at(const RatFunc& x, const Place& place) {
    if (x.is_zero()) return ORD_INFINITY;
    if (place.infinite) return static_cast<long>(x.den.deg() - x.num.deg());
    // Reduced fraction: at most one of num, den is divisible by pi.
    int e = poly_multiplicity(x.num, place.pi);
    if (e > 0) return e;
    return -static_cast<long>(poly_multiplicity(x.den, place.pi));
}

Divisor divisor_of(const RatFunc& x) {
    if (x.is_zero()) throw degenerate_error("ZeroDivisor", "the zero element has no divisor");
    Divisor d;
    for (const auto& [pi, e] : factor_poly(x.num)) d[Place::finite(pi)] += e;
    for (const auto& [pi, e] : factor_poly(x.den)) d[Place::finite(pi)] -= e;
    long inf_ord = static_cast<long>(x.den.deg() - x.num.deg());
    if (inf_ord != 0) d[Place::inf(x.F())] = inf_ord;
    for (auto it = d.begin(); it != d.end();)
        it = (it->second == 0) ? d.erase(it) : std::next(it);
    return d;
}

long divisor_degree(const Divisor& d) {
    long s = 0;
    for (const auto& [pl, e] : d) s += e * pl.degree();
    return s;
}

FieldPtr residue_field(const Place& place) {
    if (place.infinite || place.pi.deg() == 1) return place.F;
    return Field::extension(place.F, place.pi.c, "w");
}

ffe residue_at(const RatFunc& x, const Place& place) {
    long o = ord_at(x, place);
    if (o == ORD_INFINITY || o > 0) return 0;
    if (o < 0) throw degenerate_error("PoleAtPlace", "residue requested at a pole");
    const Field& F = *x.F();
    if (place.infinite) return F.mul(x.num.lc(), F.inv(x.den.lc()));
    if (place.pi.deg() == 1) {
        ffe root = F.neg(place.pi.coeff(0));
        return F.mul(x.num.eval(root), F.inv(x.den.eval(root)));
    }
    FieldPtr R = residue_field(place);
    auto lift = [&](const Poly& f) {
        std::vector<ffe> digits = poly_mod(f, place.pi).c;
        digits.resize(static_cast<size_t>(place.pi.deg()), 0);
        return R->from_digits(digits);
    };
    return R->mul(lift(x.num), R->inv(lift(x.den)));
}

RatFunc uniformizer(const Place& place) {
    if (place.infinite) return RatFunc(Poly::constant(place.F, 1), Poly::x(place.F));
    return RatFunc::from_poly(place.pi);
}

namespace {

// Residue-class check for one constraint against a candidate satisfying the
// order part already.
bool residue_constraint_ok(const RatFunc& x, const ApproxConstraint& c) {
    if (!c.residue) return true;
    RatFunc y = x * rf_pow(uniformizer(c.place), -c.target_ord);
    if (c.place.infinite) return residue_at(y, c.place) == c.residue->coeff(0);
    Poly mod = poly_pow(c.place.pi, c.k);
    Poly val = poly_mod(y.num * poly_invmod(y.den, mod), mod);
    return val == poly_mod(*c.residue, mod);
}

} // namespace

RatFunc weak_approx(const std::vector<ApproxConstraint>& constraints, const FieldPtr& F) {
    for (size_t i = 0; i < constraints.size(); ++i) {
        const ApproxConstraint& c = constraints[i];
        for (size_t j = i + 1; j < constraints.size(); ++j)
            if (c.place == constraints[j].place)
                throw degenerate_error("ContradictoryConstraints", "duplicate place in weak_approx constraints");
        if (c.residue) {
            if (c.k < 1) throw parse_error("residue modulus exponent must be >= 1");
            if (c.place.infinite) {
                if (c.residue->deg() > 0 || c.residue->is_zero())
                    throw parse_error("residue at the infinite place must be a nonzero constant");
            } else if (poly_mod(*c.residue, c.place.pi).is_zero()) {
                throw parse_error("residue class must be a unit at the place");
            }
        }
    }

    const Place* inf_c = nullptr;
    Poly D = Poly::constant(F, 1);
    long inf_target = 0;
    for (const ApproxConstraint& c : constraints) {
        if (c.place.infinite) {
            inf_c = &c.place;
            inf_target = c.target_ord;
        } else if (c.target_ord < 0) {
            D = D * poly_pow(c.place.pi, -c.target_ord);
        }
    }

    auto verify = [&](const RatFunc& x) {
        if (x.is_zero()) return false;
        for (const ApproxConstraint& c : constraints) {
            if (ord_at(x, c.place) != c.target_ord) return false;
            if (!residue_constraint_ok(x, c)) return false;
        }
        return true;
    };

    constexpr int kMaxDeg = 16;
    for (int dg = 0; dg <= kMaxDeg; ++dg) {
        std::vector<Poly> dens;
        if (!inf_c) {
            dens.push_back(D);
        } else {
            // ord_inf(g / (D h)) = deg D + deg h - deg g.
            int dh = static_cast<int>(inf_target) + dg - D.deg();
            if (dh < 0 || dh > 8) continue;
            // Extra monic factor h keeps the infinite order exact; it must not
            // touch the constrained finite places.
            std::uint64_t count = monic_poly_count(*F, dh);
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                Poly h = monic_poly_by_index(F, dh, idx);
                bool clean = true;
                for (const ApproxConstraint& c : constraints)
                    if (!c.place.infinite && poly_mod(h, c.place.pi).is_zero()) { clean = false; break; }
                if (clean) dens.push_back(D * h);
                if (dens.size() > 4096) break; // plenty at desk scale
            }
        }
        std::uint64_t gcount = monic_poly_count(*F, dg); // |F|^dg choices below the leading term
        for (std::uint64_t lead = 1; lead < F->size(); ++lead) {
            for (std::uint64_t idx = 0; idx < gcount; ++idx) {
                std::vector<ffe> coeffs = monic_poly_by_index(F, dg, idx).c;
                coeffs.back() = static_cast<ffe>(lead);
                Poly cand(F, std::move(coeffs));
                for (const Poly& den : dens) {
                    RatFunc x(cand, den);
                    if (verify(x)) return x;
                }
            }
        }
    }
    throw limit_error("weak_approx search space exhausted");
}

std::optional<RatFunc> qth_root_in_K(const RatFunc& x, int q) {
    if (x.is_zero()) throw degenerate_error("ZeroRadicand", "q-th power test on zero");
    auto n = poly_qth_root(x.num, q);
    if (!n) return std::nullopt;
    auto d = poly_qth_root(x.den, q);
    if (!d) return std::nullopt;
    return RatFunc(*n, *d);
}

namespace {

// Recursive-descent parser over K: +, -, *, /, ^, parentheses, t, the
// coefficient-field generator, and integer literals (reduced mod p).
class RatParser {
public:
    RatParser(const std::string& text, FieldPtr F) : s_(text), F_(std::move(F)) {}

    RatFunc parse() {
        RatFunc v = expr();
        skip_ws();
        if (pos_ != s_.size()) throw parse_error("unexpected character '" + std::string(1, s_[pos_]) + "' in element");
        return v;
    }

private:
    RatFunc expr() {
        RatFunc v = term();
        for (;;) {
            skip_ws();
            if (peek() == '+') { ++pos_; v = v + term(); }
            else if (peek() == '-') { ++pos_; v = v - term(); }
            else return v;
        }
    }

    RatFunc term() {
        RatFunc v = factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*') { ++pos_; v = v * factor(); }
            else if (c == '/') { ++pos_; v = v / factor(); }
            else if (c == '(' || c == 't' || c == 'u' || c == 'w' || std::isdigit(static_cast<unsigned char>(c)))
                v = v * factor(); // implicit multiplication
            else return v;
        }
    }

    RatFunc factor() {
        skip_ws();
        bool neg = false;
        while (peek() == '-') { neg = !neg; ++pos_; skip_ws(); }
        RatFunc v = atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            bool eneg = false;
            if (peek() == '-') { eneg = true; ++pos_; }
            if (!std::isdigit(static_cast<unsigned char>(peek()))) throw parse_error("expected integer exponent after '^'");
            long long e = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                e = e * 10 + (s_[pos_++] - '0');
                if (e > 1000) throw limit_error("exponent too large");
            }
            v = rf_pow(v, eneg ? -e : e);
        }
        return neg ? -v : v;
    }

    RatFunc atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            RatFunc v = expr();
            skip_ws();
            if (peek() != ')') throw parse_error("expected ')'");
            ++pos_;
            return v;
        }
        if (c == 't') { ++pos_; return RatFunc::t(F_); }
        if (c == 'u' || c == 'w') {
            if (F_->is_prime_field()) throw parse_error("generator symbol used over a prime field");
            if (std::string(1, c) != F_->gen_name()) throw parse_error("unknown symbol '" + std::string(1, c) + "'");
            ++pos_;
            // Generator of the coefficient field: code of the degree-1 basis vector.
            return RatFunc::constant(F_, F_->from_digits({0, 1}));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long long n = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                n = n * 10 + (s_[pos_++] - '0');
                if (n > 1000000) throw limit_error("integer literal too large");
            }
            return RatFunc::constant(F_, F_->from_int(n));
        }
        if (c == '\0') throw parse_error("unexpected end of element expression");
        throw parse_error("unexpected character '" + std::string(1, c) + "' in element");
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::string s_;
    FieldPtr F_;
    size_t pos_ = 0;
};

} // namespace

RatFunc parse_ratfunc(const std::string& text, const FieldPtr& F) {
    return RatParser(text, F).parse();
}

} // namespace klab
