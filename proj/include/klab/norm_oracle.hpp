#ifndef KLAB_NORM_ORACLE_HPP
#define KLAB_NORM_ORACLE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "klab/kummer.hpp"

namespace klab {

// Arithmetic in the K-algebra K[U_1..U_r, V]/(U_i^q - c_i, V^q - a), where
// the c_i are the nontrivial tower radicands. When a is not a q-th power in
// the tower this algebra IS the field L(a^{1/q}); elements are coordinate
// vectors over the monomial basis, mixed-radix indexed with the V-exponent
// fastest.
class NormRing {
public:
    NormRing(const Tower& tower, RatFunc a);

    using Elem = std::vector<RatFunc>;

    int q() const { return q_; }
    size_t dim() const { return dim_; }
    size_t rank() const { return radicands_.size(); } // r (without V)
    const FieldPtr& F() const { return F_; }
    ffe zeta() const { return zeta_; }

    Elem zero() const { return Elem(dim_, RatFunc::zero(F_)); }
    Elem one() const;
    Elem scalar(const RatFunc& x) const;

    Elem add(const Elem& x, const Elem& y) const;
    Elem mul(const Elem& x, const Elem& y) const;
    // The tower automorphism a^{1/q} -> zeta^k a^{1/q} (fixes the c_i roots).
    Elem conj(const Elem& x, int k) const;
    // N_{L(a^{1/q})/L}(x) followed by the check that the result lies in K;
    // second member false when the norm is a proper element of L.
    std::pair<RatFunc, bool> norm_to_K(const Elem& x) const;

    std::vector<int> exponents(size_t idx) const; // [j, v_1..v_r]

private:
    FieldPtr F_;
    int q_;
    size_t dim_;
    RatFunc a_;
    std::vector<RatFunc> radicands_; // nontrivial ones only
    ffe zeta_;
};

enum class NormStatus { Solvable, Unsolvable, TriviallySolvable };

std::string norm_status_name(NormStatus s);

struct NormVerdict {
    NormStatus status = NormStatus::Solvable;
    std::string method = "local-global";
    std::optional<TowerPlace> obstruction;
    bool used_ramified_branch = false;
    std::optional<std::vector<RatFunc>> witness; // NormRing coordinates
};

// Local solvability of N(y) = z at one tower place, z and a in K.
// used_ramified is set when the tame ramified branch decided the answer.
bool local_norm_test(const RatFunc& z, const RatFunc& a, const TowerPlace& tp, int q,
                     bool* used_ramified = nullptr);

// Hasse-principle oracle for N_{L(a^{1/q})/L}(y) = z.
NormVerdict norm_solvable(const Tower& L, const RatFunc& a, const RatFunc& z);

// Independent witness search: exact N(y) = z with coordinate numerators and
// denominators of degree <= degree_bound. Exhaustive for q = 2 over the base
// field (complete within the bound); sampled with a fixed seed otherwise.
std::optional<std::vector<RatFunc>> brute_force_norm_witness(const Tower& L, const RatFunc& a,
                                                             const RatFunc& z, int degree_bound);

// Multivariate polynomial in the witness coordinates d0..d_{D-1}.
using SymPoly = std::map<std::vector<int>, RatFunc>;

struct PolySystem {
    std::vector<std::string> variables;
    std::vector<SymPoly> lhs; // one per K-basis coordinate of L
    std::vector<RatFunc> rhs; // rhs on the 1-coordinate, 0 elsewhere
};

// Expands N(sum d_i * basis_i) = rhs into tower-degree polynomial equations
// over K in q * tower-degree unknowns.
PolySystem expand_norm_to_system(const Tower& L, const RatFunc& a, const RatFunc& rhs);

// Evaluates one SymPoly at concrete coordinates (for round-trip checks).
RatFunc sympoly_eval(const SymPoly& p, const std::vector<RatFunc>& point, const FieldPtr& F);
std::string sympoly_to_string(const SymPoly& p);

} // namespace klab

#endif
