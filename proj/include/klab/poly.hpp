#ifndef KLAB_POLY_HPP
#define KLAB_POLY_HPP

#include <optional>
#include <utility>
#include <vector>

#include "klab/finite_field.hpp"

namespace klab {

// Univariate polynomial over a Field; coefficients low-degree-first with no
// trailing zeros (zero polynomial = empty vector, degree -1).
struct Poly {
    FieldPtr F;
    std::vector<ffe> c;

    Poly() = default;
    Poly(FieldPtr field, std::vector<ffe> coeffs) : F(std::move(field)), c(std::move(coeffs)) { trim(); }
    static Poly zero(FieldPtr F) { return Poly(std::move(F), {}); }
    static Poly constant(FieldPtr F, ffe v) { return Poly(std::move(F), {v}); }
    static Poly x(FieldPtr F) { return Poly(std::move(F), {0, 1}); }

    void trim() { while (!c.empty() && c.back() == 0) c.pop_back(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }
    ffe lc() const { return c.empty() ? 0 : c.back(); }
    bool is_monic() const { return lc() == 1; }
    ffe coeff(int i) const { return (i >= 0 && i < static_cast<int>(c.size())) ? c[static_cast<size_t>(i)] : 0; }
    ffe eval(ffe v) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(ffe v) const;
    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator!=(const Poly& o) const { return c != o.c; }

    Poly monic() const; // divide by leading coefficient
    Poly derivative() const;
    std::string to_string(const std::string& var = "t") const;
};

// Quotient and remainder; divisor must be nonzero.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b); // monic (or zero)
Poly poly_pow(Poly a, long long n);

// Canonical order: by degree, then coefficient vectors compared from the
// highest-degree coefficient down (matches the integer value of the
// coordinate vector read low-degree-first).
int poly_cmp(const Poly& a, const Poly& b);

bool poly_is_irreducible(const Poly& f);

// Monic polynomial of degree d whose non-leading coefficient vector encodes
// idx (low-degree-first, radix |F|); idx < |F|^d.
Poly monic_poly_by_index(const FieldPtr& F, int d, std::uint64_t idx);
std::uint64_t monic_poly_count(const Field& F, int d); // |F|^d
// Any polynomial of degree <= d by code: idx < |F|^(d+1), digits are coefficients.
Poly poly_by_code(const FieldPtr& F, int d, std::uint64_t idx);

// Monic irreducibles of degree exactly d, canonical order.
std::vector<Poly> irreducibles_of_degree(const FieldPtr& F, int d);

// Deterministic trial-division factorization (desk scale, degree <= 24).
// Factors are monic irreducible, sorted by (degree, canonical order);
// the product of factors^mults times the leading coefficient equals f.
std::vector<std::pair<Poly, int>> factor_poly(const Poly& f);

// Exact q-th root of a polynomial if it is one (q != char). Returns the root
// with leading coefficient the canonical-smallest q-th root of lc(f).
std::optional<Poly> poly_qth_root(const Poly& f, int q);

// Multiplicity of monic irreducible pi in f (f nonzero).
int poly_multiplicity(const Poly& f, const Poly& pi);

Poly parse_poly(const std::string& text, const FieldPtr& F, const std::string& var = "t");

} // namespace klab

#endif
