#ifndef KLAB_TOWER_LAB_HPP
#define KLAB_TOWER_LAB_HPP

#include <optional>

#include "klab/kummer.hpp"

namespace klab {

// Element of the tower field L_m = K(alpha_0, ..., alpha_{m-1}) written in the
// monomial basis alpha_0^{e_0} ... alpha_{m-1}^{e_{m-1}}, e_j < degree of
// level j, with coordinates in K. Mixed-radix index, e_0 fastest.
using TowerElem = std::vector<RatFunc>;

// Polynomial in X, low-degree-first, with TowerElem coefficients at a fixed
// tower level. Relation polynomials and emitted tower steps are monic in X.
struct DefinedPoly {
    std::vector<TowerElem> coeff;
    int deg() const { return static_cast<int>(coeff.size()) - 1; }
};

// Exact arithmetic in the chain K = L_0 < L_1 < ... where L_{j+1} = L_j(alpha_j)
// and alpha_j is a root of the monic level-j relation polynomial.
class TowerAlgebra {
public:
    explicit TowerAlgebra(FieldPtr F);

    const FieldPtr& F() const { return F_; }
    int levels() const { return static_cast<int>(rel_.size()); }
    int dim(int m) const { return dim_[static_cast<size_t>(m)]; }
    int degree_of(int level) const { return degs_[static_cast<size_t>(level)]; }
    const DefinedPoly& relation(int level) const { return rel_[static_cast<size_t>(level)]; }

    // relation: monic in X, degree >= 2, coefficients at the current top level.
    void push_level(DefinedPoly relation);

    TowerElem zero(int m) const;
    TowerElem one(int m) const;
    TowerElem from_ratfunc(int m, const RatFunc& x) const;
    TowerElem promote(int from, int to, const TowerElem& a) const;
    bool is_zero(const TowerElem& a) const;

    TowerElem add(const TowerElem& a, const TowerElem& b) const;
    TowerElem sub(const TowerElem& a, const TowerElem& b) const;
    TowerElem neg(const TowerElem& a) const;
    TowerElem mul(int m, const TowerElem& a, const TowerElem& b) const;
    TowerElem inv(int m, const TowerElem& a) const;

    // Field norm L_m -> K: determinant of the multiplication-by-a matrix.
    RatFunc norm(int m, const TowerElem& a) const;

    std::string to_string(int m, const TowerElem& a) const;

private:
    FieldPtr F_;
    std::vector<DefinedPoly> rel_;
    std::vector<int> degs_;
    std::vector<int> dim_; // dim_[m] = product of degs_[0..m-1], dim_[0] = 1
};

// Resultant of two polynomials with level-m coefficients (Sylvester
// determinant over L_m) and the discriminant of a monic DefinedPoly.
TowerElem algebra_resultant(const TowerAlgebra& A, int m, const std::vector<TowerElem>& f,
                            const std::vector<TowerElem>& g);
TowerElem defined_poly_discriminant(const TowerAlgebra& A, int m, const DefinedPoly& P);

// Inert step certificate: the reduction of the step polynomial along the
// residue chain at `place` is irreducible over kappa, so the unique place of
// the chain stays a single factor with relative degree f.
struct InertCertificate {
    long f = 0;
    Place place;
    Poly reduced;           // the reduction, a Poly over the chain field kappa
    long kappa_rel_deg = 1; // [kappa : kappa(place)], the chain degree so far
};

// Total ramification certificate: Eisenstein-type order conditions at `place`
// force a single factor with ramification index e = deg_X P (which also
// proves P irreducible).
struct TotramCertificate {
    long e = 0;
    Place place;
};

// Reduce P's coefficients at `place` into the residue chain field kappa
// (kappa = residue_field(place) extended by the reductions of the previous
// relation polynomials) and test irreducibility. Returns nullopt when the
// reduction is reducible (failure, not an error); a coefficient coordinate
// with a pole at the place is a PoleAtPlace error.
std::optional<InertCertificate> verify_inert_step(const TowerAlgebra& A, int m,
                                                  const DefinedPoly& P, const Place& place,
                                                  const FieldPtr& kappa);

// Order conditions at `place`: every coordinate of the coefficients of X^i,
// i >= 1, has ord >= 0, and ord(N(A_0)) = -dim(m) (equivalently ord = -1 at
// every factor of the place in L_m, given that the tower generators are
// integral there). P must be monic in X.
std::optional<TotramCertificate> verify_totram_step(const TowerAlgebra& A, int m,
                                                    const DefinedPoly& P, const Place& place);
// Base-field convenience overload: P = coeffs[0] + coeffs[1] X + ... monic.
std::optional<TotramCertificate> verify_totram_step(const std::vector<RatFunc>& coeffs,
                                                    const Place& place);

enum class LevelKind { Kummer, UniformizerRoot, Defined };

std::string level_kind_name(LevelKind k);

// One level of a tower for factor-tree purposes. Kummer adjoins a q-th root
// of a base-field radicand; UniformizerRoot adjoins a q-th root of a
// uniformizer of the current completion (always ramified); Defined adjoins a
// root of P and is tracked only through attached certificates.
struct LevelSpec {
    LevelKind kind = LevelKind::Kummer;
    RatFunc radicand;
    DefinedPoly P;
    std::optional<InertCertificate> inert;
    std::optional<TotramCertificate> totram;

    static LevelSpec kummer(RatFunc c);
    static LevelSpec uniformizer_root();
    static LevelSpec defined(DefinedPoly P);
};

struct TreeNode {
    int parent = -1;
    int level = 0;     // depth from the root; the step taken is levels[level-1]
    LevelKind level_kind = LevelKind::Kummer;
    StepKind kind = StepKind::Split;
    int branch = -1;
    bool trivial = false; // Kummer level whose radicand was already a q-th power
    long e_rel = 1, f_rel = 1;
    long e = 1, f = 1; // cumulative from the base place
    std::string cert;  // "", "inert2", "totram"
    std::vector<int> children;
};

struct FactorTree {
    FieldPtr F;
    int q = 0;
    Place base;
    std::vector<TreeNode> nodes; // nodes[0] = root
    std::vector<int> leaves() const;
    std::string path_string(int node) const; // "S0.I.R" style, "-" for the root
};

// Complete factor tree of `base` through the levels. Kummer levels use exact
// splitting classification; Defined levels require an applicable certificate
// at every current leaf, else CannotClassify.
FactorTree factor_tree(const Place& base, const std::vector<LevelSpec>& levels, int q);

struct PathProfile {
    int leaf = -1;
    std::string path;
    std::vector<long> ord_e, ord_f; // cumulative ord_q per level along the path
    long max_ord_e = 0, max_ord_f = 0;
};

// Truncation report: a finite tree can witness boundedness-so-far or exhibit
// strict growth evidence, never the infinite-level property itself.
struct QBoundReport {
    int q = 0;
    std::vector<PathProfile> paths;
    bool unbounded_evidence = false;
    long bound = 0;            // max over paths of max(ord_q e, ord_q f)
    int evidence_leaf = -1;    // leaf of the strictly growing path, if any
    std::vector<long> growth;  // per-level max(ord_q e, ord_q f) along it
};

QBoundReport path_q_profile(const FactorTree& tree, int q);

struct InertLevelReport {
    int degree = 0;
    Poly p_reduced;   // chosen polynomial over the chain field kappa_m
    Poly q_avoid;     // monic irreducible q_m(t) used for the A_0 pole
    long ell = 0;     // ramification-avoidance bound: deg q_avoid = ell + 1
    DefinedPoly P;    // emitted step polynomial, coefficients at level m
    InertCertificate inert;
    TotramCertificate totram;
    long d_next = 1;  // residue degree over the base place after this level
    RatFunc disc_norm; // N(disc_X P) feeding the next level's ell
};

struct InertTowerReport {
    FieldPtr F;
    std::vector<InertLevelReport> levels;
    long d_final = 1;
};

// Tower over F_p(t) in which the place (t) stays inert at every level: at
// level m pick the canonical smallest primitive polynomial of the requested
// degree over the residue chain field kappa_m, shift it by t, and move its
// constant term behind a high-degree pole q_m(t) so that the q_m place is
// totally ramified (hence no constant-field extension). Both certificates are
// verified, not assumed.
InertTowerReport build_inert_tower(int p, int num_levels, const std::vector<int>& step_degrees);

// The report's levels as certified LevelSpecs for factor_tree.
std::vector<LevelSpec> inert_tower_levels(const InertTowerReport& rep);

} // namespace klab

#endif
