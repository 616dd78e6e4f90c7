#include <doctest.h>

#include "helpers.hpp"
#include "klab/definability.hpp"

using namespace klab;
using klab_test::pl;
using klab_test::rf;

TEST_CASE("choose_ab constructs admissible pairs (frozen at infinity)") {
    FieldPtr F = Field::prime(3);
    AuxPair p = choose_ab(F, 2, pl("inf", F), AuxMode::ValRing);
    CHECK(p.b == rf("t", F));
    CHECK(p.a == rf("(2t+1)/(t+1)", F));
    CHECK(ord_at(p.b, pl("inf", F)) == -1);
    CHECK(ord_at(p.a, pl("inf", F)) == 0);

    AuxPair pt = choose_ab(F, 2, pl("t", F), AuxMode::ValRing);
    CHECK(pt.b == rf("1/t", F));
    CHECK(ord_at(pt.a, pl("t", F)) == 0);
    // Residue of a at the anchor is the canonical nonresidue.
    CHECK(residue_at(pt.a, pl("t", F)) == 2);
}

TEST_CASE("valuation-ring predicate matches ord exactly (mini sweep)") {
    FieldPtr F = Field::prime(3);
    for (const Place& place : {pl("inf", F), pl("t", F)}) {
        AuxPair pair = choose_ab(F, 2, place, AuxMode::ValRing);
        int checked = 0;
        for (std::uint64_t nc = 1; nc < 27 && checked < 40; ++nc)
            for (std::uint64_t dc = 1; dc < 27 && checked < 40; ++dc) {
                RatFunc x(poly_by_code(F, 2, nc), poly_by_code(F, 2, dc));
                if (x.is_zero()) continue;
                try {
                    PredicateResult r = val_ring_predicate(x, place, pair);
                    CHECK(r.value == (ord_at(x, place) >= 0));
                    ++checked;
                } catch (const Error& e) {
                    if (e.cls() != ErrClass::Degenerate) throw;
                }
            }
        CHECK(checked >= 30);
    }
}

TEST_CASE("pole dichotomy: ord x >= 0 iff q | ord(b x^q + b^q)") {
    FieldPtr F = Field::prime(3);
    for (const Place& place : {pl("inf", F), pl("t", F)}) {
        AuxPair pair = choose_ab(F, 2, place, AuxMode::ValRing);
        for (std::uint64_t nc = 1; nc < 27; ++nc) {
            RatFunc x(poly_by_code(F, 2, nc), poly_by_code(F, 2, 9)); // den = t
            if (x.is_zero()) continue;
            RatFunc rhs = pair.b * x * x + pair.b * pair.b;
            if (rhs.is_zero()) continue;
            bool parity_even = ((ord_at(rhs, place) % 2) + 2) % 2 == 0;
            CHECK((ord_at(x, place) >= 0) == parity_even);
        }
    }
}

TEST_CASE("S-integers: frozen true and false cases") {
    FieldPtr F = Field::prime(3);
    Place pinf = pl("inf", F);
    Place pt = pl("t", F);

    // x = t with S = {inf}: the only pole is in S.
    PredicateResult r = s_integer_decide(rf("t", F), {pinf}, 2, 5);
    CHECK(r.value);
    CHECK(r.surrogate == "sampled");
    CHECK(r.confirmations.size() >= 5);

    // x = 1/t with S = {inf}: pole at (t) outside S, blocked.
    r = s_integer_decide(rf("1/t", F), {pinf}, 2, 5);
    CHECK_FALSE(r.value);
    REQUIRE(r.blocking.has_value());
    CHECK(r.blocking->place == pt);
    REQUIRE(r.trace.has_value());
    CHECK_FALSE(r.trace->value); // the blocking pair falsifies the sentence
    CHECK(r.trace->verdict.status == NormStatus::Unsolvable);

    // Same x with S = {(t)}: now integral.
    r = s_integer_decide(rf("1/t", F), {pt}, 2, 5);
    CHECK(r.value);

    CHECK_THROWS_AS((void)s_integer_decide(RatFunc::zero(F), {pinf}, 2, 5), Error);
}

TEST_CASE("blocking pair is admissible and anchored at the pole") {
    FieldPtr F = Field::prime(3);
    Place pt = pl("t", F);
    AuxPair bp = blocking_pair(rf("1/t", F), pt, {pl("inf", F)}, 2);
    CHECK(ord_at(bp.b, pt) == -1);
    CHECK(ord_at(bp.a, pt) == 0);
    CHECK(residue_at(bp.a, pt) == 2); // canonical nonresidue of F_3
    // b stays a unit on S.
    CHECK(ord_at(bp.b, pl("inf", F)) == 0);
}

TEST_CASE("constants predicate over F_9(t)") {
    FieldPtr F = Field::make(3, 2);
    for (ffe c = 0; c < 9; ++c) {
        PredicateResult r = constants_predicate(RatFunc::constant(F, c), 2, 3);
        CHECK(r.value);
    }
    PredicateResult r = constants_predicate(rf("t+1", F), 2, 3);
    CHECK_FALSE(r.value);
    CHECK(r.surrogate == "blocking");
    REQUIRE(r.blocking.has_value());
    REQUIRE(r.trace.has_value());
    CHECK_FALSE(r.trace->value);
    r = constants_predicate(rf("1/t", F), 2, 3);
    CHECK_FALSE(r.value);
}

TEST_CASE("multiplicative set R at a place") {
    FieldPtr F = Field::prime(3);
    Place pinf = pl("inf", F);
    AuxPair pair = choose_ab(F, 2, pinf, AuxMode::ValRing);
    // t has a pole at infinity: not even in N.
    PredicateResult r = multiplicative_R_membership(rf("t", F), pinf, pair, 4);
    CHECK_FALSE(r.value);
    // 1/t and constants stay integral under multiplication by N.
    CHECK(multiplicative_R_membership(rf("1/t", F), pinf, pair, 4).value);
    CHECK(multiplicative_R_membership(RatFunc::zero(F), pinf, pair, 4).value);
}

TEST_CASE("sampled pairs are pairwise distinct and admissible") {
    FieldPtr F = Field::prime(3);
    std::vector<Place> S{pl("t", F), pl("inf", F)};
    auto pairs = sample_aux_pairs(F, 2, S, 10);
    CHECK(pairs.size() == 10);
    for (size_t i = 0; i < pairs.size(); ++i) {
        for (const Place& s : S) {
            CHECK(ord_at(pairs[i].b, s) == 0);
            RatFunc d = pairs[i].a - RatFunc::one(F);
            if (!d.is_zero()) CHECK(ord_at(d, s) > 0);
        }
        for (size_t j = i + 1; j < pairs.size(); ++j) {
            CHECK((pairs[i].a != pairs[j].a || pairs[i].b != pairs[j].b));
        }
    }
}
