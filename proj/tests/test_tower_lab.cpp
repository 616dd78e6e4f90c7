#include <doctest.h>

#include "helpers.hpp"
#include "klab/tower_lab.hpp"

using namespace klab;
using klab_test::pl;
using klab_test::rf;

namespace {

// K(sqrt(t)) as a defined level: X^2 - t.
TowerAlgebra sqrt_t_algebra(const FieldPtr& F) {
    TowerAlgebra A(F);
    DefinedPoly P;
    P.coeff = {A.from_ratfunc(0, rf("2t", F)), A.zero(0), A.one(0)};
    A.push_level(P);
    return A;
}

} // namespace

TEST_CASE("tower algebra arithmetic in K(sqrt t)") {
    FieldPtr F = Field::prime(3);
    TowerAlgebra A = sqrt_t_algebra(F);
    CHECK(A.levels() == 1);
    CHECK(A.dim(1) == 2);

    TowerElem root = A.zero(1);
    root[1] = RatFunc::one(F); // alpha = sqrt(t)
    TowerElem sq = A.mul(1, root, root);
    CHECK(A.to_string(1, sq) == A.to_string(1, A.from_ratfunc(1, rf("t", F))));

    // Inverse: (sqrt t)^-1 = sqrt(t)/t.
    TowerElem inv = A.inv(1, root);
    CHECK(A.is_zero(A.sub(A.mul(1, root, inv), A.one(1))));

    // Norm of sqrt(t) is -t; norm of a scalar is its square.
    CHECK(A.norm(1, root) == rf("2t", F));
    CHECK(A.norm(1, A.from_ratfunc(1, rf("t+1", F))) == rf("t^2+2t+1", F));

    // Generic element (1 + sqrt t): norm = 1 - t.
    TowerElem g = A.add(A.one(1), root);
    CHECK(A.norm(1, g) == rf("1+2t", F));
}

TEST_CASE("discriminant of a quadratic matches b^2 - 4c") {
    FieldPtr F = Field::prime(3);
    TowerAlgebra A(F);
    for (const char* bs : {"0", "1", "t"})
        for (const char* cs : {"t", "t+1", "2"}) {
            RatFunc b = rf(bs, F), c = rf(cs, F);
            DefinedPoly P;
            P.coeff = {A.from_ratfunc(0, c), A.from_ratfunc(0, b), A.one(0)};
            TowerElem d = defined_poly_discriminant(A, 0, P);
            RatFunc expect = b * b - rf("4", F) * c;
            CHECK(d[0] == expect);
        }
}

TEST_CASE("inert step certificates at the base level") {
    FieldPtr F = Field::prime(3);
    TowerAlgebra A(F);
    Place pt = pl("t", F);
    FieldPtr kappa = residue_field(pt);

    DefinedPoly good; // X^2 + X + 2, irreducible mod (t)
    good.coeff = {A.from_ratfunc(0, rf("2", F)), A.one(0), A.one(0)};
    auto cert = verify_inert_step(A, 0, good, pt, kappa);
    REQUIRE(cert.has_value());
    CHECK(cert->f == 2);
    CHECK(cert->kappa_rel_deg == 1);
    CHECK(cert->reduced.to_string("X") == "X^2+X+2");

    DefinedPoly bad; // X^2 - 1 reducible
    bad.coeff = {A.from_ratfunc(0, rf("2", F)), A.zero(0), A.one(0)};
    CHECK_FALSE(verify_inert_step(A, 0, bad, pt, kappa).has_value());

    DefinedPoly pole; // X^2 + 1/t: coefficient has a pole at (t)
    pole.coeff = {A.from_ratfunc(0, rf("1/t", F)), A.zero(0), A.one(0)};
    CHECK_THROWS_AS((void)verify_inert_step(A, 0, pole, pt, kappa), Error);
}

TEST_CASE("total ramification certificates at the base level") {
    FieldPtr F = Field::prime(3);
    Place pt = pl("t", F);
    // X^2 + 1/t: Eisenstein-type at (t) after clearing, ord(A_0) = -1.
    auto cert = verify_totram_step({rf("1/t", F), rf("0", F), rf("1", F)}, pt);
    REQUIRE(cert.has_value());
    CHECK(cert->e == 2);
    // X^2 + t: A_0 has ord +1, not -1.
    CHECK_FALSE(verify_totram_step({rf("t", F), rf("0", F), rf("1", F)}, pt).has_value());
    // X^2 + 1/t^2: ord -2.
    CHECK_FALSE(verify_totram_step({rf("1/t^2", F), rf("0", F), rf("1", F)}, pt).has_value());
}

TEST_CASE("factor tree: frozen Kummer shapes") {
    FieldPtr F = Field::prime(3);
    FactorTree tr = factor_tree(pl("t", F), {LevelSpec::kummer(rf("t", F))}, 2);
    auto leaves = tr.leaves();
    REQUIRE(leaves.size() == 1);
    CHECK(tr.nodes[leaves[0]].e == 2);
    CHECK(tr.nodes[leaves[0]].f == 1);
    CHECK(tr.path_string(leaves[0]) == "R");

    tr = factor_tree(pl("t+2", F), {LevelSpec::kummer(rf("t", F))}, 2);
    CHECK(tr.leaves().size() == 2);

    // Trivial level: radicand already a square.
    tr = factor_tree(pl("t", F), {LevelSpec::kummer(rf("t^2", F))}, 2);
    REQUIRE(tr.leaves().size() == 1);
    CHECK(tr.nodes[tr.leaves()[0]].trivial);
    CHECK(tr.nodes[tr.leaves()[0]].e == 1);
}

TEST_CASE("factor tree: level-order restrictions") {
    FieldPtr F = Field::prime(3);
    // Kummer after a uniformizer root cannot be classified soundly.
    CHECK_THROWS_AS((void)factor_tree(pl("t", F),
                                      {LevelSpec::uniformizer_root(),
                                       LevelSpec::kummer(rf("t+1", F))},
                                      2),
                    Error);
}

TEST_CASE("q-boundedness: uniformizer-root growth and split-only towers") {
    FieldPtr F = Field::prime(3);
    for (int depth = 1; depth <= 4; ++depth) {
        std::vector<LevelSpec> levels(static_cast<size_t>(depth), LevelSpec::uniformizer_root());
        FactorTree tr = factor_tree(pl("t", F), levels, 2);
        QBoundReport rep = path_q_profile(tr, 2);
        REQUIRE(rep.paths.size() == 1);
        CHECK(rep.paths[0].max_ord_e == depth);
        CHECK(rep.unbounded_evidence);
        CHECK(static_cast<int>(rep.growth.size()) == depth);
        CHECK(rep.growth.back() == depth);
    }
    // Split-only tower: both radicands have square residue 1 at (t).
    FactorTree tr = factor_tree(pl("t", F),
                                {LevelSpec::kummer(rf("t+1", F)), LevelSpec::kummer(rf("t^2+1", F))},
                                2);
    QBoundReport rep = path_q_profile(tr, 2);
    CHECK(tr.leaves().size() == 4);
    CHECK_FALSE(rep.unbounded_evidence);
    CHECK(rep.bound == 0);
}

TEST_CASE("inert tower: one level over F_3, frozen values") {
    InertTowerReport rep = build_inert_tower(3, 1, {2});
    REQUIRE(rep.levels.size() == 1);
    const InertLevelReport& L0 = rep.levels[0];
    CHECK(L0.p_reduced.to_string("X") == "X^2+X+2"); // smallest primitive, not X^2+1
    CHECK(L0.q_avoid.to_string() == "t+1");
    CHECK(L0.ell == 0);
    CHECK(L0.inert.f == 2);
    CHECK(L0.totram.e == 2);
    CHECK(L0.d_next == 2);
    CHECK(L0.disc_norm == rf("(t+2)/(t+1)", Field::prime(3)));
    CHECK(rep.d_final == 2);
}

TEST_CASE("inert tower: two levels reach residue degree 4") {
    InertTowerReport rep = build_inert_tower(3, 2, {2, 2});
    REQUIRE(rep.levels.size() == 2);
    CHECK(rep.d_final == 4);
    CHECK(rep.levels[1].ell == 3);
    CHECK(rep.levels[1].q_avoid.to_string() == "t^4+t+2");
    CHECK(rep.levels[1].inert.f == 2);
    CHECK(rep.levels[1].inert.kappa_rel_deg == 2);
    CHECK(rep.levels[1].totram.e == 2);

    // The certified levels drive a factor tree with a single leaf of f = 4
    // over (t).
    FieldPtr F = rep.F;
    FactorTree tr = factor_tree(pl("t", F), inert_tower_levels(rep), 2);
    auto leaves = tr.leaves();
    REQUIRE(leaves.size() == 1);
    CHECK(tr.nodes[leaves[0]].f == 4);
    CHECK(tr.nodes[leaves[0]].e == 1);
    CHECK(tr.nodes[leaves[0]].cert == "inert2");
    CHECK(tr.path_string(leaves[0]) == "I.I");
}

TEST_CASE("inert tower input validation") {
    CHECK_THROWS_AS((void)build_inert_tower(4, 1, {2}), Error);  // 4 not prime
    CHECK_THROWS_AS((void)build_inert_tower(3, 1, {1}), Error);  // degree < 2
    CHECK_THROWS_AS((void)build_inert_tower(3, 2, {2}), Error);  // arity mismatch
    CHECK_THROWS_AS((void)build_inert_tower(3, 3, {4, 4, 4}), Error); // product > 16
}
