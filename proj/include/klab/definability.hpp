#ifndef KLAB_DEFINABILITY_HPP
#define KLAB_DEFINABILITY_HPP

#include "klab/norm_oracle.hpp"

namespace klab {

enum class AuxMode { ValRing, SIntegers, UniformBounded };

std::string aux_mode_name(AuxMode m);

// Auxiliary pair (a, b) driving the definability formulas.
// ValRing / UniformBounded: ord_place(b) = -1; a a unit at the place with
// non-q-th-power residue; a = 1 modulo every other place of supp(div b).
// SIntegers: a = 1 at every S-place (ord(a - 1) > 0 there), b a unit at S.
struct AuxPair {
    AuxMode mode = AuxMode::ValRing;
    int q = 0;
    RatFunc a, b;
    Place place;          // anchor place (ValRing / UniformBounded / blocking)
    std::vector<Place> S; // SIntegers
    bool strong = false;  // UniformBounded variant flag
};

// One evaluation of a norm-equation formula: the tower radicands in adjunction
// order, the right-hand side b x^q + b^q, and the oracle verdict.
struct FormulaTrace {
    std::vector<RatFunc> radicands;
    RatFunc rhs;
    NormVerdict verdict;
    bool value = false;
};

struct PredicateResult {
    bool value = false;
    // Which finite surrogate produced the answer: "formula" (single
    // evaluation), "ground-truth", "sampled", "blocking", "bounded-evidence".
    std::string surrogate;
    std::optional<FormulaTrace> trace;
    std::vector<FormulaTrace> confirmations;
    std::optional<AuxPair> blocking;
    std::vector<std::string> warnings;
};

AuxPair choose_ab(const FieldPtr& F, int q, const Place& place, AuxMode mode,
                  const std::vector<Place>& S = {});

// Deterministic admissible pairs for the sampled direction of the universal
// quantifiers. S empty means unrestricted a, b (the constants sentence).
std::vector<AuxPair> sample_aux_pairs(const FieldPtr& F, int q, const std::vector<Place>& S,
                                      int count);

// ord_place(x) >= 0, decided through L2 = L1(...) norm solvability;
// L1 = K((1+(bx^q+b^q)^{-1})^{1/q}), L2 = L1((1+(a+a^{-1})b^{-1})^{1/q}).
PredicateResult val_ring_predicate(const RatFunc& x, const Place& place, const AuxPair& pair);

// One instantiation of the S-integrality sentence body over
// L4 = K(r1^{1/q}, (1+x^{-1})^{1/q}, (1+(a+a^{-1})x^{-1})^{1/q}).
FormulaTrace s_integer_formula(const RatFunc& x, const AuxPair& pair);

// Certified (a, b) making the S-integrality formula fail at a pole of x
// outside S.
AuxPair blocking_pair(const RatFunc& x, const Place& place, const std::vector<Place>& S, int q);

// Ground truth by divisor inspection plus formula-level certificate:
// blocking pair when false, sampled confirmations when true.
PredicateResult s_integer_decide(const RatFunc& x, const std::vector<Place>& S, int q,
                                 int sample_size = 5);

// Finite realization of R = {x in N | forall u in N: x u in N}.
PredicateResult multiplicative_R_membership(const RatFunc& x, const Place& place,
                                            const AuxPair& pair, int power_bound);

// x algebraic over F_p, with formula-level cross-check.
PredicateResult constants_predicate(const RatFunc& x, int q, int sample_size = 5);

} // namespace klab

#endif
