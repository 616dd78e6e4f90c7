#ifndef KLAB_KUMMER_HPP
#define KLAB_KUMMER_HPP

#include <string>
#include <vector>

#include "klab/ratfunc.hpp"

namespace klab {

// Kummer tower L = K(c_1^{1/q}, ..., c_n^{1/q}) with all radicands in the
// base field K. Steps whose radicand is already a q-th power in the tower so
// far are trivial and contribute no extension degree.
struct Tower {
    FieldPtr F;
    int q = 0;
    std::vector<RatFunc> radicands;
    std::vector<bool> nontrivial;

    int nontrivial_steps() const {
        int n = 0;
        for (bool b : nontrivial) n += b;
        return n;
    }
};

Tower tower_make(const FieldPtr& F, int q, std::vector<RatFunc> radicands);

// x in K^x a q-th power in the tower field: exhaustive Kummer test,
// x * prod c_i^{e_i} in K^q for some exponent vector in {0..q-1}^n.
bool is_qth_power_in_tower(const RatFunc& x, const Tower& tower);

enum class StepKind { Split, Inert, Ramified };

struct PathStep {
    StepKind kind;
    int branch = -1; // split branch index, 0..q-1
};

// A place of the tower above a base place: one path through the factor tree.
// Since radicands live in K, at most one step along any path ramifies; the
// uniformizer after that step satisfies Pi^q = ram_c^alpha * pi^(q*beta) up to
// a local unit that is a q-th power, which lets all residue computations stay
// in kappa(base_place).
struct TowerPlace {
    Place base;
    std::vector<PathStep> path; // one entry per nontrivial tower step
    long e = 1;
    long f = 1;
    RatFunc ram_c;
    long ram_alpha = 0;
    long ram_beta = 0;

    std::string path_string() const; // "S0.I.R" style; "-" for the empty path
};

// ord of x in K at the tower place: e * ord at the base place.
long tower_ord(const RatFunc& x, const TowerPlace& tp);

// Classification of the next (nontrivial) step with radicand c at tp.
StepKind classify_place_step(const TowerPlace& tp, const RatFunc& c, int q);

// x with tower_ord 0: is its residue a q-th power in the residue field of tp
// (the degree-f extension of kappa(base place))?
bool residue_qth_power_test(const RatFunc& x, const TowerPlace& tp, int q);

// Strips uniformizer q-th powers off c (tower_ord(c, tp) must be divisible by
// q) and returns a base-field unit at tp with the same class modulo q-th
// powers of the completion.
RatFunc strip_to_unit(const RatFunc& c, const TowerPlace& tp, int q);

// All leaves of the factor tree of `base` through the tower, in canonical
// order (split branches 0..q-1 in order at each level). degree_limit guards
// user-facing queries; internal callers that must visit every support prime
// of a divisor raise it to the factorization bound.
std::vector<TowerPlace> places_above(const Tower& tower, const Place& base, int degree_limit = 6);

std::string step_kind_name(StepKind k);

} // namespace klab

#endif
