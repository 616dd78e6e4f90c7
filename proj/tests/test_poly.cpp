#include <doctest.h>

#include "helpers.hpp"
#include "klab/poly.hpp"

using namespace klab;
using klab_test::pol;

TEST_CASE("divmod and gcd invariants") {
    FieldPtr F = Field::prime(3);
    Poly a = pol("t^5+2t^3+t+1", F);
    Poly b = pol("t^2+1", F);
    auto [q, r] = poly_divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.deg() < b.deg());
    Poly g = poly_gcd(a * b, b);
    CHECK(g == b); // b irreducible over F_3, monic
}

TEST_CASE("irreducibility and counts") {
    FieldPtr F3 = Field::prime(3);
    CHECK(irreducibles_of_degree(F3, 1).size() == 3);
    CHECK(irreducibles_of_degree(F3, 2).size() == 3);
    CHECK(irreducibles_of_degree(F3, 3).size() == 8);
    FieldPtr F4 = Field::make(2, 2);
    CHECK(irreducibles_of_degree(F4, 1).size() == 4);
    CHECK(irreducibles_of_degree(F4, 2).size() == 6);
    CHECK(poly_is_irreducible(pol("t^2+1", F3)));
    CHECK_FALSE(poly_is_irreducible(pol("t^2+2", F3))); // (t+1)(t+2)
    CHECK(poly_is_irreducible(pol("t^4+t+2", F3)));
}

TEST_CASE("factorization reassembles exactly") {
    FieldPtr F = Field::prime(3);
    Poly f = Poly::constant(F, 2) * poly_pow(pol("t^2+1", F), 2) * pol("t^2+t+2", F);
    auto factors = factor_poly(f);
    Poly prod = Poly::constant(F, f.lc());
    for (const auto& [p, m] : factors) {
        CHECK(poly_is_irreducible(p));
        CHECK(p.is_monic());
        prod = prod * poly_pow(p, m);
    }
    CHECK(prod == f);
    CHECK(factors.size() == 2);
}

TEST_CASE("q-th roots of polynomials") {
    FieldPtr F = Field::prime(3);
    Poly f = pol("t^2+2t+1", F);
    auto r = poly_qth_root(f, 2);
    REQUIRE(r.has_value());
    CHECK(*r * *r == f);
    CHECK_FALSE(poly_qth_root(pol("t^2+1", F), 2).has_value());
}

TEST_CASE("canonical poly enumeration order") {
    FieldPtr F = Field::prime(3);
    CHECK(monic_poly_by_index(F, 2, 0) == pol("t^2", F));
    CHECK(monic_poly_by_index(F, 2, 1) == pol("t^2+1", F));
    CHECK(monic_poly_by_index(F, 2, 3) == pol("t^2+t", F));
    CHECK(monic_poly_count(*F, 2) == 9);
    CHECK(poly_cmp(pol("t", F), pol("t+1", F)) < 0);
    CHECK(poly_cmp(pol("t+2", F), pol("t^2", F)) < 0);
}

TEST_CASE("parse/print round-trip") {
    FieldPtr F = Field::prime(3);
    for (const char* s : {"t^4+t+2", "2*t^2+t", "t", "1", "t^3+2*t^2+t+2"}) {
        Poly p = pol(s, F);
        CHECK(pol(p.to_string(), F) == p);
    }
    CHECK_THROWS_AS((void)pol("t^^2", F), Error);
}
