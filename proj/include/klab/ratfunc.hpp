#ifndef KLAB_RATFUNC_HPP
#define KLAB_RATFUNC_HPP

#include <climits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "klab/poly.hpp"

namespace klab {

// ord sentinel for the zero element, distinct from any attained order.
inline constexpr long ORD_INFINITY = LONG_MAX;

// Element of K = F_{p^m}(t): reduced fraction, monic denominator, 0 = 0/1.
struct RatFunc {
    Poly num, den;

    RatFunc() = default;
    RatFunc(Poly n, Poly d);
    static RatFunc zero(const FieldPtr& F) { return RatFunc(Poly::zero(F), Poly::constant(F, 1)); }
    static RatFunc one(const FieldPtr& F) { return RatFunc(Poly::constant(F, 1), Poly::constant(F, 1)); }
    static RatFunc from_poly(Poly p);
    static RatFunc constant(const FieldPtr& F, ffe v) { return RatFunc(Poly::constant(F, v), Poly::constant(F, 1)); }
    static RatFunc t(const FieldPtr& F) { return RatFunc(Poly::x(F), Poly::constant(F, 1)); }

    const FieldPtr& F() const { return num.F; }
    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return num.is_one() && den.is_one(); }
    bool is_constant() const { return num.deg() <= 0 && den.deg() == 0; }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc inverse() const;
    bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    std::string to_string() const;
};

RatFunc rf_pow(RatFunc a, long long n);

// A place of K: a monic irreducible polynomial, or the degree (infinite) place.
struct Place {
    FieldPtr F;
    bool infinite = false;
    Poly pi; // monic irreducible; unset for the infinite place

    static Place inf(FieldPtr F) { Place p; p.F = std::move(F); p.infinite = true; return p; }
    static Place finite(Poly pi_);
    int degree() const { return infinite ? 1 : pi.deg(); }
    std::string to_string() const { return infinite ? "inf" : pi.to_string(); }
    bool operator==(const Place& o) const {
        return infinite == o.infinite && (infinite || pi == o.pi);
    }
};

// Canonical place order: finite places by (degree, coefficients), then the
// infinite place last.
struct PlaceLess {
    bool operator()(const Place& a, const Place& b) const {
        if (a.infinite != b.infinite) return b.infinite;
        if (a.infinite) return false;
        return poly_cmp(a.pi, b.pi) < 0;
    }
};

using Divisor = std::map<Place, long, PlaceLess>;

Place parse_place(const std::string& text, const FieldPtr& F);

long ord_at(const RatFunc& x, const Place& place); // ORD_INFINITY for x = 0
Divisor divisor_of(const RatFunc& x);              // x != 0; includes the infinite place
long divisor_degree(const Divisor& d);             // sum of ord * deg(place)

// Residue field of a place: F itself for the infinite place and degree-1
// places, otherwise F[t]/(pi).
FieldPtr residue_field(const Place& place);
// Residue of x at the place (requires ord >= 0, else PoleAtPlace).
ffe residue_at(const RatFunc& x, const Place& place);
// Canonical uniformizer: pi itself, or 1/t at the infinite place.
RatFunc uniformizer(const Place& place);

struct ApproxConstraint {
    Place place;
    long target_ord = 0;
    // Residue class constraint on x * uniformizer^(-target_ord): the class of
    // `residue` modulo place^k (k = 1 at the infinite place, where `residue`
    // must be constant).
    std::optional<Poly> residue;
    int k = 1;
};

// Weak approximation: deterministic canonical element meeting all constraints.
RatFunc weak_approx(const std::vector<ApproxConstraint>& constraints, const FieldPtr& F);

// If x = y^q in K, returns y (deterministic choice), else nullopt. x != 0.
std::optional<RatFunc> qth_root_in_K(const RatFunc& x, int q);
inline bool is_qth_power_in_K(const RatFunc& x, int q) { return qth_root_in_K(x, q).has_value(); }

RatFunc parse_ratfunc(const std::string& text, const FieldPtr& F);

} // namespace klab

#endif
