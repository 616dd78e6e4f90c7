#include <doctest.h>

#include "helpers.hpp"
#include "klab/norm_oracle.hpp"

using namespace klab;
using klab_test::pl;
using klab_test::rf;

namespace {

Tower empty_tower(const FieldPtr& F, int q) { return tower_make(F, q, {}); }

} // namespace

TEST_CASE("frozen verdicts over F_3, q = 2, empty tower") {
    FieldPtr F = Field::prime(3);
    Tower L = empty_tower(F, 2);

    // z = t is not a norm from K(sqrt(t)): obstruction at the ramified place (t).
    NormVerdict v = norm_solvable(L, rf("t", F), rf("t", F));
    CHECK(v.status == NormStatus::Unsolvable);
    REQUIRE(v.obstruction.has_value());
    CHECK(v.obstruction->base == pl("t", F));
    CHECK(v.used_ramified_branch);

    // z = t is a norm from K(sqrt(-t)): y = sqrt(-t), N(y) = t.
    v = norm_solvable(L, rf("2t", F), rf("t", F));
    CHECK(v.status == NormStatus::Solvable);

    // Square radicand: extension trivial, any nonzero z is a norm.
    v = norm_solvable(L, rf("t^2", F), rf("t+1", F));
    CHECK(v.status == NormStatus::TriviallySolvable);

    // z = t^2 - t = N(t + sqrt(t)).
    v = norm_solvable(L, rf("t", F), rf("t^2+2t", F));
    CHECK(v.status == NormStatus::Solvable);

    CHECK(norm_status_name(NormStatus::Unsolvable) == "Unsolvable");
    CHECK(norm_status_name(NormStatus::Solvable) == "Solvable");
    CHECK(norm_status_name(NormStatus::TriviallySolvable) == "TriviallySolvable");
}

TEST_CASE("witness search agrees with the oracle and verifies exactly") {
    FieldPtr F = Field::prime(3);
    Tower L = empty_tower(F, 2);

    auto w = brute_force_norm_witness(L, rf("2t", F), rf("t", F), 4);
    REQUIRE(w.has_value());
    NormRing R(L, rf("2t", F));
    auto [n, exact] = R.norm_to_K(*w);
    CHECK(exact);
    CHECK(n == rf("t", F));

    // Solvable case with a nontrivial witness.
    auto w2 = brute_force_norm_witness(L, rf("t", F), rf("t^2+2t", F), 4);
    REQUIRE(w2.has_value());
    NormRing R2(L, rf("t", F));
    auto [n2, exact2] = R2.norm_to_K(*w2);
    CHECK(exact2);
    CHECK(n2 == rf("t^2+2t", F));

    // Unsolvable case: no witness within the bound.
    CHECK_FALSE(brute_force_norm_witness(L, rf("t", F), rf("t", F), 3).has_value());
}

TEST_CASE("oracle consistency on a small (a, z) grid") {
    FieldPtr F = Field::prime(3);
    Tower L = empty_tower(F, 2);
    std::vector<RatFunc> as{rf("t", F), rf("2t", F), rf("t+1", F), rf("2", F)};
    std::vector<RatFunc> zs;
    for (std::uint64_t nc = 1; nc < 9; ++nc)
        for (std::uint64_t dc = 3; dc < 9; ++dc) {
            RatFunc z(poly_by_code(F, 1, nc), poly_by_code(F, 1, dc));
            if (!z.is_zero()) zs.push_back(z);
        }
    for (const RatFunc& a : as)
        for (const RatFunc& z : zs) {
            NormVerdict v = norm_solvable(L, a, z);
            bool witness = brute_force_norm_witness(L, a, z, 3).has_value();
            if (v.status == NormStatus::Unsolvable) CHECK_FALSE(witness);
            if (v.status != NormStatus::Unsolvable) CHECK(witness);
        }
}

TEST_CASE("norm over a one-step tower") {
    FieldPtr F = Field::prime(3);
    Tower L = tower_make(F, 2, {rf("t", F)});
    // a = t is a square in L: trivially solvable there.
    NormVerdict v = norm_solvable(L, rf("t", F), rf("t+1", F));
    CHECK(v.status == NormStatus::TriviallySolvable);
    // a = t+1 over L = K(sqrt t): local tests run at tower places.
    v = norm_solvable(L, rf("t+1", F), rf("t+1", F));
    CHECK(v.status != NormStatus::TriviallySolvable);
    if (v.status == NormStatus::Unsolvable) CHECK(v.obstruction.has_value());
}

TEST_CASE("expand-norm system evaluates back to the norm") {
    FieldPtr F = Field::prime(3);
    Tower L = empty_tower(F, 2);
    RatFunc a = rf("t", F);
    PolySystem sys = expand_norm_to_system(L, a, rf("t^2+2t", F));
    REQUIRE(sys.variables.size() == 2);
    REQUIRE(sys.lhs.size() == 1);
    // Plug in the known witness y = t + sqrt(t): coordinates (t, 1).
    std::vector<RatFunc> point{rf("t", F), rf("1", F)};
    CHECK(sympoly_eval(sys.lhs[0], point, F) == sys.rhs[0]);
    CHECK(sys.rhs[0] == rf("t^2+2t", F));
}

TEST_CASE("NormRing arithmetic sanity") {
    FieldPtr F = Field::prime(3);
    Tower L = tower_make(F, 2, {rf("t+1", F)});
    NormRing R(L, rf("t", F));
    CHECK(R.dim() == 4);
    NormRing::Elem x = R.zero();
    x[0] = rf("t", F);
    x[1] = rf("1", F);
    NormRing::Elem y = R.mul(x, R.one());
    CHECK(y == x);
    // N(y) multiplies the q conjugates of the top step; a scalar gives t^q.
    auto [n, exact] = R.norm_to_K(R.scalar(rf("t", F)));
    CHECK(exact);
    CHECK(n == rf("t^2", F));
}
