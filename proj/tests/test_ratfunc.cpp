#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "klab/ratfunc.hpp"

using namespace klab;
using klab_test::pl;
using klab_test::rf;

TEST_CASE("reduced representation invariants") {
    FieldPtr F = Field::prime(3);
    RatFunc x(klab_test::pol("2t^2+2t", F), klab_test::pol("2t+2", F));
    CHECK(x == rf("t", F)); // (2t(t+1)) / (2(t+1)) = t
    CHECK(x.den.is_monic());
    CHECK(rf("(t+1)/(t+1)", F).is_one());
}

TEST_CASE("ord at finite and infinite places") {
    FieldPtr F = Field::prime(3);
    CHECK(ord_at(rf("t", F), pl("inf", F)) == -1);
    CHECK(ord_at(rf("t", F), pl("t", F)) == 1);
    CHECK(ord_at(rf("1/t", F), pl("t", F)) == -1);
    CHECK(ord_at(rf("(t^2+1)/t", F), pl("t^2+1", F)) == 1);
    CHECK(ord_at(rf("t+1", F), pl("t", F)) == 0);
    CHECK(ord_at(RatFunc::zero(F), pl("t", F)) == ORD_INFINITY);
}

TEST_CASE("frozen divisor example") {
    FieldPtr F = Field::prime(3);
    Divisor d = divisor_of(rf("(2t+1)/(t+1)", F));
    REQUIRE(d.size() == 2); // ord 0 at infinity is not stored
    CHECK(d.at(pl("t+1", F)) == -1);
    CHECK(d.at(pl("t+2", F)) == 1);
    CHECK(divisor_degree(d) == 0);
}

TEST_CASE("principal divisors have degree zero (product formula)") {
    FieldPtr F = Field::prime(3);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> code(0, 80);
    int checked = 0;
    while (checked < 200) {
        Poly num = poly_by_code(F, 3, code(rng));
        Poly den = poly_by_code(F, 3, code(rng));
        if (num.is_zero() || den.is_zero()) continue;
        RatFunc x(num, den);
        if (x.is_zero()) continue;
        CHECK(divisor_degree(divisor_of(x)) == 0);
        ++checked;
    }
}

TEST_CASE("residue field and residues") {
    FieldPtr F = Field::prime(3);
    Place p2 = pl("t^2+1", F);
    FieldPtr R = residue_field(p2);
    CHECK(R->size() == 9);
    // t reduces to the generator class of F_9 = F_3[t]/(t^2+1).
    ffe r = residue_at(rf("t", F), p2);
    CHECK(R->mul(r, r) == R->neg(1));
    CHECK(residue_at(rf("t+1", F), pl("t", F)) == 1);
    CHECK(residue_at(rf("1/t", F), pl("inf", F)) == 0);
    CHECK_THROWS_AS((void)residue_at(rf("1/t", F), pl("t", F)), Error);
}

TEST_CASE("uniformizers") {
    FieldPtr F = Field::prime(3);
    CHECK(ord_at(uniformizer(pl("t", F)), pl("t", F)) == 1);
    CHECK(ord_at(uniformizer(pl("inf", F)), pl("inf", F)) == 1);
}

TEST_CASE("weak approximation hits every constraint") {
    FieldPtr F = Field::prime(3);
    // Simple pole at infinity: the canonical answer is t.
    RatFunc b = weak_approx({{pl("inf", F), -1, std::nullopt, 1}}, F);
    CHECK(b == rf("t", F));
    // Simple pole at (t): 1/t.
    CHECK(weak_approx({{pl("t", F), -1, std::nullopt, 1}}, F) == rf("1/t", F));
    // Two residue constraints at once.
    RatFunc a = weak_approx({{pl("t", F), 0, Poly::constant(F, 2), 1},
                             {pl("t+1", F), 0, Poly::constant(F, 1), 1}},
                            F);
    CHECK(ord_at(a, pl("t", F)) == 0);
    CHECK(residue_at(a, pl("t", F)) == 2);
    CHECK(residue_at(a, pl("t+1", F)) == 1);
}

TEST_CASE("q-th roots in K") {
    FieldPtr F = Field::prime(3);
    RatFunc x = rf("(t^2+2t+1)/t^2", F);
    auto y = qth_root_in_K(x, 2);
    REQUIRE(y.has_value());
    CHECK(*y * *y == x);
    CHECK_FALSE(qth_root_in_K(rf("t", F), 2).has_value());
    CHECK_FALSE(qth_root_in_K(rf("2", F), 2).has_value());
    FieldPtr F4 = Field::make(2, 2);
    CHECK(is_qth_power_in_K(rf("t^3", F4), 3));
    CHECK_FALSE(is_qth_power_in_K(rf("t", F4), 3));
    // q equal to the characteristic is rejected.
    CHECK_THROWS_AS((void)is_qth_power_in_K(rf("t^3", F), 3), Error);
}
