#include "klab/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace klab {

ffe Poly::eval(ffe v) const {
    ffe r = 0;
    for (size_t i = c.size(); i-- > 0;) r = F->add(F->mul(r, v), c[i]);
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<ffe> r(std::max(c.size(), o.c.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = F->add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
    return Poly(F, std::move(r));
}

Poly Poly::operator-() const {
    std::vector<ffe> r(c.size());
    for (size_t i = 0; i < c.size(); ++i) r[i] = F->neg(c[i]);
    return Poly(F, std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return zero(F);
    std::vector<ffe> r(c.size() + o.c.size() - 1, 0);
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        for (size_t j = 0; j < o.c.size(); ++j)
            r[i + j] = F->add(r[i + j], F->mul(c[i], o.c[j]));
    }
    return Poly(F, std::move(r));
}

Poly Poly::scaled(ffe v) const {
    std::vector<ffe> r(c.size());
    for (size_t i = 0; i < c.size(); ++i) r[i] = F->mul(c[i], v);
    return Poly(F, std::move(r));
}

Poly Poly::monic() const {
    if (is_zero() || lc() == 1) return *this;
    return scaled(F->inv(lc()));
}

Poly Poly::derivative() const {
    if (c.size() <= 1) return zero(F);
    std::vector<ffe> r(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) {
        ffe m = F->from_int(static_cast<long long>(i));
        r[i - 1] = F->mul(c[i], m);
    }
    return Poly(F, std::move(r));
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        if (!first) out << "+";
        first = false;
        std::string coef = F->to_string(c[i]);
        bool composite = coef.find('+') != std::string::npos;
        if (i == 0) {
            out << (composite ? "(" + coef + ")" : coef);
        } else {
            if (coef != "1") out << (composite ? "(" + coef + ")" : coef) << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw degenerate_error("DivisionByZero", "polynomial division by zero");
    const Field& F = *a.F;
    std::vector<ffe> rem = a.c;
    int db = b.deg();
    ffe invlc = F.inv(b.lc());
    std::vector<ffe> quo;
    if (static_cast<int>(rem.size()) - 1 >= db)
        quo.assign(rem.size() - static_cast<size_t>(db), 0);
    while (static_cast<int>(rem.size()) - 1 >= db) {
        ffe q = F.mul(rem.back(), invlc);
        size_t shift = rem.size() - 1 - static_cast<size_t>(db);
        quo[shift] = q;
        if (q != 0)
            for (int i = 0; i <= db; ++i)
                rem[shift + static_cast<size_t>(i)] =
                    F.sub(rem[shift + static_cast<size_t>(i)], F.mul(q, b.c[static_cast<size_t>(i)]));
        rem.pop_back();
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
    }
    return {Poly(a.F, std::move(quo)), Poly(a.F, std::move(rem))};
}

Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly poly_pow(Poly a, long long n) {
    Poly r = Poly::constant(a.F, 1);
    while (n > 0) {
        if (n & 1) r = r * a;
        a = a * a;
        n >>= 1;
    }
    return r;
}

int poly_cmp(const Poly& a, const Poly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg() ? -1 : 1;
    for (size_t i = a.c.size(); i-- > 0;) {
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i] ? -1 : 1;
    }
    return 0;
}

Poly monic_poly_by_index(const FieldPtr& F, int d, std::uint64_t idx) {
    std::vector<ffe> c(static_cast<size_t>(d) + 1, 0);
    for (int i = 0; i < d; ++i) {
        c[static_cast<size_t>(i)] = idx % F->size();
        idx /= F->size();
    }
    c[static_cast<size_t>(d)] = 1;
    return Poly(F, std::move(c));
}

std::uint64_t monic_poly_count(const Field& F, int d) {
    std::uint64_t n = 1;
    for (int i = 0; i < d; ++i) n *= F.size();
    return n;
}

Poly poly_by_code(const FieldPtr& F, int d, std::uint64_t idx) {
    std::vector<ffe> c(static_cast<size_t>(d) + 1, 0);
    for (int i = 0; i <= d; ++i) {
        c[static_cast<size_t>(i)] = idx % F->size();
        idx /= F->size();
    }
    return Poly(F, std::move(c));
}

bool poly_is_irreducible(const Poly& f) {
    int d = f.deg();
    if (d <= 0) return false;
    if (d == 1) return true;
    for (int e = 1; 2 * e <= d; ++e) {
        std::uint64_t count = monic_poly_count(*f.F, e);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Poly g = monic_poly_by_index(f.F, e, idx);
            if (poly_mod(f, g).is_zero()) return false;
        }
    }
    return true;
}

std::vector<Poly> irreducibles_of_degree(const FieldPtr& F, int d) {
    std::vector<Poly> out;
    std::uint64_t count = monic_poly_count(*F, d);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Poly g = monic_poly_by_index(F, d, idx);
        if (poly_is_irreducible(g)) out.push_back(std::move(g));
    }
    return out;
}

std::vector<std::pair<Poly, int>> factor_poly(const Poly& f) {
    if (f.is_zero()) throw degenerate_error("ZeroPolynomial", "cannot factor the zero polynomial");
    if (f.deg() > 24) throw limit_error("factorization limited to degree <= 24");
    std::vector<std::pair<Poly, int>> out;
    Poly rem = f.monic();
    // Ascending trial division; each divisor found is irreducible because all
    // smaller monic factors have already been removed.
    for (int d = 1; 2 * d <= rem.deg(); ++d) {
        std::uint64_t count = monic_poly_count(*f.F, d);
        for (std::uint64_t idx = 0; idx < count && 2 * d <= rem.deg(); ++idx) {
            Poly g = monic_poly_by_index(f.F, d, idx);
            int mult = 0;
            for (;;) {
                auto [q, r] = poly_divmod(rem, g);
                if (!r.is_zero()) break;
                rem = q;
                ++mult;
            }
            if (mult > 0) out.emplace_back(std::move(g), mult);
        }
    }
    if (rem.deg() >= 1) out.emplace_back(rem, 1);
    return out; // already sorted: generated in (degree, code) order
}

std::optional<Poly> poly_qth_root(const Poly& f, int q) {
    if (f.is_zero()) return Poly::zero(f.F);
    const Field& F = *f.F;
    if (q % F.p() == 0) throw degenerate_error("BadExponent", "q must differ from the characteristic");
    if (f.deg() % q != 0) return std::nullopt;
    // Canonical-smallest q-th root of the leading coefficient, by exhaustion.
    ffe lead = 0;
    bool found = false;
    for (ffe v = 1; v < F.size(); ++v) {
        if (F.pow(v, q) == f.lc()) { lead = v; found = true; break; }
    }
    if (!found) return std::nullopt;
    int dr = f.deg() / q;
    // Solve for the root's coefficients top-down: the x^(q*dr - k) coefficient
    // of r^q involves q * lead^(q-1) * r[dr-k] plus terms in higher-index
    // coefficients of r, so the system is triangular (q invertible).
    std::vector<ffe> r(static_cast<size_t>(dr) + 1, 0);
    r[static_cast<size_t>(dr)] = lead;
    Poly acc = poly_pow(Poly(f.F, r), q);
    ffe qinv = F.inv(F.from_int(q));
    ffe scale = F.mul(qinv, F.inv(F.pow(lead, q - 1)));
    for (int k = dr - 1; k >= 0; --k) {
        int target = f.deg() - (dr - k); // exponent determined so far
        ffe diff = F.sub(f.coeff(target), acc.coeff(target));
        ffe ck = F.mul(diff, scale);
        if (ck != 0) {
            r[static_cast<size_t>(k)] = ck;
            acc = poly_pow(Poly(f.F, r), q);
        }
    }
    Poly root(f.F, std::move(r));
    if (poly_pow(root, q) == f) return root;
    return std::nullopt;
}

int poly_multiplicity(const Poly& f, const Poly& pi) {
    Poly rem = f;
    int m = 0;
    for (;;) {
        auto [q, r] = poly_divmod(rem, pi);
        if (!r.is_zero()) return m;
        rem = q;
        ++m;
    }
}

namespace {

struct PolyParser {
    const std::string& s;
    size_t i = 0;
    FieldPtr F;
    std::string var;

    void skip() { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; }
    bool peek(char c) { skip(); return i < s.size() && s[i] == c; }
    bool take(char c) { if (peek(c)) { ++i; return true; } return false; }

    Poly expr() {
        Poly v = term();
        for (;;) {
            if (take('+')) v = v + term();
            else if (take('-')) v = v - term();
            else return v;
        }
    }
    Poly term() {
        Poly v = factor();
        for (;;) {
            skip();
            if (take('*')) { v = v * factor(); continue; }
            // implicit multiplication: "2t", "t(t+1)"
            if (i < s.size() && (s[i] == '(' || s[i] == 't' || s[i] == 'u' ||
                                 std::isdigit(static_cast<unsigned char>(s[i])))) {
                if (s[i] == var[0] || s[i] == '(' || s[i] == 'u') { v = v * factor(); continue; }
            }
            return v;
        }
    }
    Poly factor() {
        Poly v = atom();
        skip();
        if (take('^')) {
            skip();
            if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
                throw parse_error("expected exponent");
            long long e = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                e = e * 10 + (s[i++] - '0');
            v = poly_pow(v, e);
        }
        return v;
    }
    Poly atom() {
        skip();
        if (i >= s.size()) throw parse_error("unexpected end of polynomial");
        if (take('(')) {
            Poly v = expr();
            if (!take(')')) throw parse_error("missing )");
            return v;
        }
        if (take('-')) return -atom();
        if (s[i] == var[0] && (var.size() == 1 || s.compare(i, var.size(), var) == 0)) {
            i += var.size();
            return Poly::x(F);
        }
        if (s[i] == 'u' && !F->is_prime_field()) {
            ++i;
            // generator of the coefficient field
            return Poly::constant(F, F->from_digits({0, 1}));
        }
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            long long n = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                n = n * 10 + (s[i++] - '0');
            return Poly::constant(F, F->from_int(n));
        }
        throw parse_error(std::string("unexpected character '") + s[i] + "' in polynomial");
    }
};

} // namespace

Poly parse_poly(const std::string& text, const FieldPtr& F, const std::string& var) {
    PolyParser p{text, 0, F, var};
    Poly v = p.expr();
    p.skip();
    if (p.i != text.size()) throw parse_error("trailing characters in polynomial");
    return v;
}

} // namespace klab
