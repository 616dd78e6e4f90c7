#include "klab/tower_lab.hpp"

#include <algorithm>
#include <sstream>

namespace klab {

namespace {

bool small_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

long mod_inverse(long s, int q) {
    long r = ((s % q) + q) % q;
    for (long a = 1; a < q; ++a)
        if ((a * r) % q == 1) return a;
    throw degenerate_error("NotInvertible", "order not coprime to q");
}

long ord_q_of(long v, int q) {
    if (v <= 0) throw degenerate_error("InternalError", "ord_q of a nonpositive value");
    long k = 0;
    while (v % q == 0) { v /= q; ++k; }
    return k;
}

TowerElem scale_elem(const TowerElem& a, const RatFunc& s) {
    TowerElem r = a;
    for (auto& c : r) c = c * s;
    return r;
}

} // namespace

TowerAlgebra::TowerAlgebra(FieldPtr F) : F_(std::move(F)) { dim_.push_back(1); }

void TowerAlgebra::push_level(DefinedPoly relation) {
    int n = relation.deg();
    if (n < 2) throw parse_error("tower relation must have degree at least 2");
    if (static_cast<size_t>(n) + 1 != relation.coeff.size())
        throw degenerate_error("InternalError", "malformed relation polynomial");
    int m = levels();
    for (const TowerElem& c : relation.coeff)
        if (static_cast<int>(c.size()) != dim(m))
            throw degenerate_error("InternalError", "relation coefficients must live at the current level");
    const TowerElem& top = relation.coeff.back();
    TowerElem one_m = one(m);
    if (top != one_m)
        throw degenerate_error("CannotClassify", "tower relation must be monic in X");
    if (dim(m) * n > 128) throw limit_error("tower algebra dimension limited to 128");
    rel_.push_back(std::move(relation));
    degs_.push_back(n);
    dim_.push_back(dim_[static_cast<size_t>(m)] * n);
}

TowerElem TowerAlgebra::zero(int m) const {
    return TowerElem(static_cast<size_t>(dim(m)), RatFunc::zero(F_));
}

TowerElem TowerAlgebra::one(int m) const {
    TowerElem r = zero(m);
    r[0] = RatFunc::one(F_);
    return r;
}

TowerElem TowerAlgebra::from_ratfunc(int m, const RatFunc& x) const {
    TowerElem r = zero(m);
    r[0] = x;
    return r;
}

TowerElem TowerAlgebra::promote(int from, int to, const TowerElem& a) const {
    if (from > to) throw degenerate_error("InternalError", "promote must raise the level");
    TowerElem r = zero(to);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    return r;
}

bool TowerAlgebra::is_zero(const TowerElem& a) const {
    for (const auto& c : a)
        if (!c.is_zero()) return false;
    return true;
}

TowerElem TowerAlgebra::add(const TowerElem& a, const TowerElem& b) const {
    TowerElem r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
    return r;
}

TowerElem TowerAlgebra::sub(const TowerElem& a, const TowerElem& b) const {
    TowerElem r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
    return r;
}

TowerElem TowerAlgebra::neg(const TowerElem& a) const {
    TowerElem r = a;
    for (auto& c : r) c = -c;
    return r;
}

TowerElem TowerAlgebra::mul(int m, const TowerElem& a, const TowerElem& b) const {
    if (m == 0) return {a[0] * b[0]};
    int n = degs_[static_cast<size_t>(m - 1)];
    int sub_dim = dim(m - 1);
    auto block = [&](const TowerElem& v, int i) {
        return TowerElem(v.begin() + i * sub_dim, v.begin() + (i + 1) * sub_dim);
    };
    // School product as polynomials in the top generator over L_{m-1}.
    std::vector<TowerElem> prod(static_cast<size_t>(2 * n - 1), zero(m - 1));
    for (int i = 0; i < n; ++i) {
        TowerElem ai = block(a, i);
        if (is_zero(ai)) continue;
        for (int j = 0; j < n; ++j) {
            TowerElem bj = block(b, j);
            if (is_zero(bj)) continue;
            prod[static_cast<size_t>(i + j)] =
                add(prod[static_cast<size_t>(i + j)], mul(m - 1, ai, bj));
        }
    }
    // Reduce by the monic relation: alpha^n = -sum coeff[i] alpha^i.
    const DefinedPoly& rel = rel_[static_cast<size_t>(m - 1)];
    for (int k = 2 * n - 2; k >= n; --k) {
        TowerElem c = prod[static_cast<size_t>(k)];
        if (is_zero(c)) continue;
        prod[static_cast<size_t>(k)] = zero(m - 1);
        for (int i = 0; i < n; ++i)
            prod[static_cast<size_t>(k - n + i)] =
                sub(prod[static_cast<size_t>(k - n + i)], mul(m - 1, c, rel.coeff[static_cast<size_t>(i)]));
    }
    TowerElem r = zero(m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < sub_dim; ++j)
            r[static_cast<size_t>(i * sub_dim + j)] = prod[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return r;
}

namespace {

// Multiplication-by-a matrix: column k = a * basis_k, coordinates in K.
std::vector<std::vector<RatFunc>> mult_matrix(const TowerAlgebra& A, int m, const TowerElem& a) {
    int D = A.dim(m);
    std::vector<std::vector<RatFunc>> M(static_cast<size_t>(D),
                                        std::vector<RatFunc>(static_cast<size_t>(D), RatFunc::zero(A.F())));
    for (int k = 0; k < D; ++k) {
        TowerElem basis = A.zero(m);
        basis[static_cast<size_t>(k)] = RatFunc::one(A.F());
        TowerElem col = A.mul(m, a, basis);
        for (int r = 0; r < D; ++r) M[static_cast<size_t>(r)][static_cast<size_t>(k)] = col[static_cast<size_t>(r)];
    }
    return M;
}

} // namespace

TowerElem TowerAlgebra::inv(int m, const TowerElem& a) const {
    if (is_zero(a)) throw degenerate_error("DivisionByZero", "tower element inverse of zero");
    int D = dim(m);
    auto M = mult_matrix(*this, m, a);
    std::vector<RatFunc> rhs(static_cast<size_t>(D), RatFunc::zero(F_));
    rhs[0] = RatFunc::one(F_);
    // Gauss-Jordan solve M x = e_0 over K.
    for (int col = 0; col < D; ++col) {
        int piv = -1;
        for (int r = col; r < D; ++r)
            if (!M[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) { piv = r; break; }
        if (piv < 0) throw degenerate_error("InternalError", "singular multiplication matrix for a nonzero element");
        std::swap(M[static_cast<size_t>(col)], M[static_cast<size_t>(piv)]);
        std::swap(rhs[static_cast<size_t>(col)], rhs[static_cast<size_t>(piv)]);
        RatFunc pinv = M[static_cast<size_t>(col)][static_cast<size_t>(col)].inverse();
        for (int c = col; c < D; ++c) M[static_cast<size_t>(col)][static_cast<size_t>(c)] =
            M[static_cast<size_t>(col)][static_cast<size_t>(c)] * pinv;
        rhs[static_cast<size_t>(col)] = rhs[static_cast<size_t>(col)] * pinv;
        for (int r = 0; r < D; ++r) {
            if (r == col) continue;
            RatFunc f = M[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (f.is_zero()) continue;
            for (int c = col; c < D; ++c)
                M[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                    M[static_cast<size_t>(r)][static_cast<size_t>(c)] - f * M[static_cast<size_t>(col)][static_cast<size_t>(c)];
            rhs[static_cast<size_t>(r)] = rhs[static_cast<size_t>(r)] - f * rhs[static_cast<size_t>(col)];
        }
    }
    return rhs;
}

RatFunc TowerAlgebra::norm(int m, const TowerElem& a) const {
    if (is_zero(a)) return RatFunc::zero(F_);
    int D = dim(m);
    auto M = mult_matrix(*this, m, a);
    RatFunc det = RatFunc::one(F_);
    for (int col = 0; col < D; ++col) {
        int piv = -1;
        for (int r = col; r < D; ++r)
            if (!M[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) { piv = r; break; }
        if (piv < 0) return RatFunc::zero(F_);
        if (piv != col) {
            std::swap(M[static_cast<size_t>(col)], M[static_cast<size_t>(piv)]);
            det = -det;
        }
        RatFunc p = M[static_cast<size_t>(col)][static_cast<size_t>(col)];
        det = det * p;
        RatFunc pinv = p.inverse();
        for (int r = col + 1; r < D; ++r) {
            RatFunc f = M[static_cast<size_t>(r)][static_cast<size_t>(col)] * pinv;
            if (f.is_zero()) continue;
            for (int c = col; c < D; ++c)
                M[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                    M[static_cast<size_t>(r)][static_cast<size_t>(c)] - f * M[static_cast<size_t>(col)][static_cast<size_t>(c)];
        }
    }
    return det;
}

std::string TowerAlgebra::to_string(int m, const TowerElem& a) const {
    std::ostringstream out;
    bool first = true;
    for (size_t idx = 0; idx < a.size(); ++idx) {
        if (a[idx].is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        out << "(" << a[idx].to_string() << ")";
        size_t rest = idx;
        for (int j = 0; j < m; ++j) {
            int e = static_cast<int>(rest % static_cast<size_t>(degs_[static_cast<size_t>(j)]));
            rest /= static_cast<size_t>(degs_[static_cast<size_t>(j)]);
            if (e == 0) continue;
            out << "*g" << j;
            if (e > 1) out << "^" << e;
        }
    }
    if (first) out << "0";
    return out.str();
}

TowerElem algebra_resultant(const TowerAlgebra& A, int m, const std::vector<TowerElem>& f,
                            const std::vector<TowerElem>& g) {
    int df = static_cast<int>(f.size()) - 1;
    int dg = static_cast<int>(g.size()) - 1;
    if (df < 1 || dg < 0) throw degenerate_error("InternalError", "resultant degrees out of range");
    int N = df + dg;
    if (N > 24) throw limit_error("resultant matrix size limited to 24");
    TowerElem z = A.zero(m);
    std::vector<std::vector<TowerElem>> S(static_cast<size_t>(N), std::vector<TowerElem>(static_cast<size_t>(N), z));
    // Sylvester layout, high-degree coefficients first.
    for (int r = 0; r < dg; ++r)
        for (int i = 0; i <= df; ++i)
            S[static_cast<size_t>(r)][static_cast<size_t>(r + i)] = f[static_cast<size_t>(df - i)];
    for (int r = 0; r < df; ++r)
        for (int i = 0; i <= dg; ++i)
            S[static_cast<size_t>(dg + r)][static_cast<size_t>(r + i)] = g[static_cast<size_t>(dg - i)];
    // Determinant over the field L_m by elimination.
    TowerElem det = A.one(m);
    bool negate = false;
    for (int col = 0; col < N; ++col) {
        int piv = -1;
        for (int r = col; r < N; ++r)
            if (!A.is_zero(S[static_cast<size_t>(r)][static_cast<size_t>(col)])) { piv = r; break; }
        if (piv < 0) return A.zero(m);
        if (piv != col) {
            std::swap(S[static_cast<size_t>(col)], S[static_cast<size_t>(piv)]);
            negate = !negate;
        }
        const TowerElem& p = S[static_cast<size_t>(col)][static_cast<size_t>(col)];
        det = A.mul(m, det, p);
        TowerElem pinv = A.inv(m, p);
        for (int r = col + 1; r < N; ++r) {
            if (A.is_zero(S[static_cast<size_t>(r)][static_cast<size_t>(col)])) continue;
            TowerElem fac = A.mul(m, S[static_cast<size_t>(r)][static_cast<size_t>(col)], pinv);
            for (int c = col; c < N; ++c)
                S[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                    A.sub(S[static_cast<size_t>(r)][static_cast<size_t>(c)],
                          A.mul(m, fac, S[static_cast<size_t>(col)][static_cast<size_t>(c)]));
        }
    }
    return negate ? A.neg(det) : det;
}

TowerElem defined_poly_discriminant(const TowerAlgebra& A, int m, const DefinedPoly& P) {
    int n = P.deg();
    if (n < 2) throw degenerate_error("InternalError", "discriminant needs degree at least 2");
    const FieldPtr& F = A.F();
    std::vector<TowerElem> deriv;
    for (int i = 1; i <= n; ++i)
        deriv.push_back(scale_elem(P.coeff[static_cast<size_t>(i)],
                                   RatFunc::constant(F, F->from_int(i))));
    while (deriv.size() > 1 && A.is_zero(deriv.back())) deriv.pop_back();
    if (deriv.size() == 1 && A.is_zero(deriv[0]))
        throw degenerate_error("Inseparable", "step polynomial has zero derivative");
    TowerElem res = algebra_resultant(A, m, P.coeff, deriv);
    // disc = (-1)^{n(n-1)/2} Res(P, P') for monic P.
    if ((static_cast<long>(n) * (n - 1) / 2) % 2 == 1) res = A.neg(res);
    return res;
}

namespace {

// Chain fields kappa_0 = residue_field(place) < kappa_1 < ... < kappa_m = kappa,
// bottom first. Element codes embed identically along the chain.
std::vector<FieldPtr> residue_chain(const TowerAlgebra& A, int m, const Place& place,
                                    const FieldPtr& kappa) {
    std::vector<FieldPtr> chain;
    FieldPtr cur = kappa;
    for (int j = m; j >= 1; --j) {
        if (!cur || cur->is_prime_field() || cur->deg() != A.degree_of(j - 1))
            throw degenerate_error("CannotClassify",
                                   "residue chain does not match the tower levels");
        chain.push_back(cur);
        cur = cur->base();
    }
    FieldPtr bottom = residue_field(place);
    if (!cur || !cur->same(*bottom))
        throw degenerate_error("CannotClassify",
                               "residue chain does not start at the residue field of the place");
    chain.push_back(cur);
    std::reverse(chain.begin(), chain.end());
    return chain;
}

ffe reduce_elem(const TowerAlgebra& A, int m, const TowerElem& a, const Place& place,
                const std::vector<FieldPtr>& chain) {
    const FieldPtr& kappa = chain.back();
    ffe acc = 0;
    for (size_t idx = 0; idx < a.size(); ++idx) {
        if (a[idx].is_zero()) continue;
        ffe term = residue_at(a[idx], place); // throws PoleAtPlace on ord < 0
        size_t rest = idx;
        for (int j = 0; j < m; ++j) {
            int e = static_cast<int>(rest % static_cast<size_t>(A.degree_of(j)));
            rest /= static_cast<size_t>(A.degree_of(j));
            if (e == 0) continue;
            // Generator of chain[j+1] over chain[j] has code |chain[j]| everywhere up.
            ffe theta = chain[static_cast<size_t>(j)]->size();
            term = kappa->mul(term, kappa->pow(theta, e));
        }
        acc = kappa->add(acc, term);
    }
    return acc;
}

} // namespace

std::optional<InertCertificate> verify_inert_step(const TowerAlgebra& A, int m,
                                                  const DefinedPoly& P, const Place& place,
                                                  const FieldPtr& kappa) {
    int n = P.deg();
    if (n < 1) throw degenerate_error("CannotClassify", "step polynomial must have positive degree");
    std::vector<FieldPtr> chain = residue_chain(A, m, place, kappa);
    std::vector<ffe> red;
    for (const TowerElem& c : P.coeff)
        red.push_back(reduce_elem(A, m, c, place, chain));
    Poly rp(kappa, red);
    if (rp.deg() != n || !rp.is_monic())
        throw degenerate_error("CannotClassify", "step polynomial must stay monic under reduction");
    if (!poly_is_irreducible(rp)) return std::nullopt;
    InertCertificate cert;
    cert.f = n;
    cert.place = place;
    cert.reduced = rp;
    cert.kappa_rel_deg = kappa->deg_over_prime() / residue_field(place)->deg_over_prime();
    return cert;
}

std::optional<TotramCertificate> verify_totram_step(const TowerAlgebra& A, int m,
                                                    const DefinedPoly& P, const Place& place) {
    int n = P.deg();
    if (n < 1) throw degenerate_error("CannotClassify", "step polynomial must have positive degree");
    if (P.coeff.back() != A.one(m))
        throw degenerate_error("CannotClassify", "step polynomial must be monic in X");
    for (int i = 1; i <= n; ++i)
        for (const RatFunc& c : P.coeff[static_cast<size_t>(i)])
            if (!c.is_zero() && ord_at(c, place) < 0) return std::nullopt;
    const TowerElem& a0 = P.coeff[0];
    if (A.is_zero(a0)) return std::nullopt;
    RatFunc N = A.norm(m, a0);
    if (N.is_zero() || ord_at(N, place) != -static_cast<long>(A.dim(m))) return std::nullopt;
    TotramCertificate cert;
    cert.e = n;
    cert.place = place;
    return cert;
}

std::optional<TotramCertificate> verify_totram_step(const std::vector<RatFunc>& coeffs,
                                                    const Place& place) {
    if (coeffs.empty()) throw degenerate_error("CannotClassify", "empty step polynomial");
    TowerAlgebra A(coeffs[0].F());
    DefinedPoly P;
    for (const RatFunc& c : coeffs) P.coeff.push_back(TowerElem{c});
    return verify_totram_step(A, 0, P, place);
}

std::string level_kind_name(LevelKind k) {
    switch (k) {
        case LevelKind::Kummer: return "kummer";
        case LevelKind::UniformizerRoot: return "uniformizer-root";
        case LevelKind::Defined: return "defined";
    }
    return "?";
}

LevelSpec LevelSpec::kummer(RatFunc c) {
    LevelSpec s;
    s.kind = LevelKind::Kummer;
    s.radicand = std::move(c);
    return s;
}

LevelSpec LevelSpec::uniformizer_root() {
    LevelSpec s;
    s.kind = LevelKind::UniformizerRoot;
    return s;
}

LevelSpec LevelSpec::defined(DefinedPoly P) {
    LevelSpec s;
    s.kind = LevelKind::Defined;
    s.P = std::move(P);
    return s;
}

std::vector<int> FactorTree::leaves() const {
    std::vector<int> out;
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].children.empty()) out.push_back(static_cast<int>(i));
    return out;
}

std::string FactorTree::path_string(int node) const {
    std::vector<std::string> parts;
    for (int cur = node; cur > 0; cur = nodes[static_cast<size_t>(cur)].parent) {
        const TreeNode& nd = nodes[static_cast<size_t>(cur)];
        if (nd.trivial) {
            parts.push_back("T");
        } else if (nd.kind == StepKind::Split) {
            parts.push_back("S" + std::to_string(nd.branch));
        } else if (nd.kind == StepKind::Inert) {
            parts.push_back("I");
        } else {
            parts.push_back("R");
        }
    }
    if (parts.empty()) return "-";
    std::reverse(parts.begin(), parts.end());
    std::ostringstream out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out << ".";
        out << parts[i];
    }
    return out.str();
}

namespace {

struct NodeState {
    TowerPlace tp;
    int uroot = 0;
    bool had_defined = false;
    bool after_totram = false;
};

} // namespace

FactorTree factor_tree(const Place& base, const std::vector<LevelSpec>& levels, int q) {
    if (!small_prime(q)) throw parse_error("q must be a prime");
    if (levels.size() > 12) throw limit_error("factor tree depth limited to 12");
    if (base.degree() > 6) throw limit_error("base place degree limited to 6");
    FieldPtr F = base.F;

    FactorTree tree;
    tree.F = F;
    tree.q = q;
    tree.base = base;
    TreeNode root;
    tree.nodes.push_back(root);

    NodeState rs;
    rs.tp.base = base;
    rs.tp.ram_c = RatFunc::one(F);
    std::vector<int> frontier{0};
    std::vector<NodeState> states{rs};

    std::vector<RatFunc> kummer_radicands;

    for (size_t li = 0; li < levels.size(); ++li) {
        const LevelSpec& lv = levels[li];
        std::vector<int> next_frontier;
        std::vector<NodeState> next_states;

        bool trivial_level = false;
        if (lv.kind == LevelKind::Kummer) {
            if (lv.radicand.is_zero())
                throw degenerate_error("ZeroRadicand", "Kummer level radicand must be nonzero");
            if ((F->size() - 1) % static_cast<std::uint64_t>(q) != 0)
                throw degenerate_error("MissingRootOfUnity",
                                       "q must divide |F| - 1 so that K contains the q-th roots of unity");
            Tower prefix = tower_make(F, q, kummer_radicands);
            trivial_level = is_qth_power_in_tower(lv.radicand, prefix);
            kummer_radicands.push_back(lv.radicand);
        }

        for (size_t fi = 0; fi < frontier.size(); ++fi) {
            int parent = frontier[fi];
            NodeState st = states[fi];
            auto emit = [&](StepKind kind, int branch, bool trivial, long e_rel, long f_rel,
                            std::string cert, NodeState child_state) {
                TreeNode nd;
                nd.parent = parent;
                nd.level = static_cast<int>(li) + 1;
                nd.level_kind = lv.kind;
                nd.kind = kind;
                nd.branch = branch;
                nd.trivial = trivial;
                nd.e_rel = e_rel;
                nd.f_rel = f_rel;
                nd.e = child_state.tp.e;
                nd.f = child_state.tp.f;
                nd.cert = std::move(cert);
                int id = static_cast<int>(tree.nodes.size());
                tree.nodes.push_back(nd);
                tree.nodes[static_cast<size_t>(parent)].children.push_back(id);
                next_frontier.push_back(id);
                next_states.push_back(std::move(child_state));
            };

            if (st.after_totram)
                throw degenerate_error("CannotClassify",
                                       "no further levels are tracked past a totally ramified certificate step");

            if (lv.kind == LevelKind::UniformizerRoot) {
                NodeState cs = st;
                cs.uroot += 1;
                cs.tp.e *= q;
                cs.tp.path.push_back({StepKind::Ramified, -1});
                emit(StepKind::Ramified, -1, false, q, 1, "", std::move(cs));
                continue;
            }

            if (lv.kind == LevelKind::Kummer) {
                if (st.uroot > 0 || st.had_defined)
                    throw degenerate_error("CannotClassify",
                                           "Kummer levels must precede uniformizer-root and defined levels");
                if (trivial_level) {
                    NodeState cs = st;
                    emit(StepKind::Split, -1, true, 1, 1, "", std::move(cs));
                    continue;
                }
                StepKind k = classify_place_step(st.tp, lv.radicand, q);
                if (k == StepKind::Split) {
                    for (int b = 0; b < q; ++b) {
                        NodeState cs = st;
                        cs.tp.path.push_back({StepKind::Split, b});
                        emit(StepKind::Split, b, false, 1, 1, "", std::move(cs));
                    }
                } else if (k == StepKind::Inert) {
                    NodeState cs = st;
                    cs.tp.path.push_back({StepKind::Inert, -1});
                    cs.tp.f *= q;
                    emit(StepKind::Inert, -1, false, 1, q, "", std::move(cs));
                } else {
                    NodeState cs = st;
                    cs.tp.path.push_back({StepKind::Ramified, -1});
                    long s = ord_at(lv.radicand, st.tp.base);
                    cs.tp.e *= q;
                    cs.tp.ram_c = lv.radicand;
                    cs.tp.ram_alpha = mod_inverse(s, q);
                    cs.tp.ram_beta = (1 - cs.tp.ram_alpha * s) / q;
                    emit(StepKind::Ramified, -1, false, q, 1, "", std::move(cs));
                }
                continue;
            }

            // Defined level: certificate passthrough only.
            if (lv.inert && lv.inert->place == st.tp.base && st.uroot == 0 &&
                st.tp.f == lv.inert->kappa_rel_deg) {
                NodeState cs = st;
                cs.had_defined = true;
                cs.tp.path.push_back({StepKind::Inert, -1});
                cs.tp.f *= lv.inert->f;
                emit(StepKind::Inert, -1, false, 1, lv.inert->f, "inert2", std::move(cs));
            } else if (lv.totram && lv.totram->place == st.tp.base && st.uroot == 0 &&
                       st.tp.e == 1) {
                NodeState cs = st;
                cs.had_defined = true;
                cs.after_totram = true;
                cs.tp.path.push_back({StepKind::Ramified, -1});
                cs.tp.e *= lv.totram->e;
                emit(StepKind::Ramified, -1, false, lv.totram->e, 1, "totram", std::move(cs));
            } else {
                throw degenerate_error("CannotClassify",
                                       "defined level has no applicable certificate at " +
                                           st.tp.base.to_string());
            }
        }

        frontier = std::move(next_frontier);
        states = std::move(next_states);
    }
    return tree;
}

QBoundReport path_q_profile(const FactorTree& tree, int q) {
    if (q < 2) throw parse_error("q must be at least 2");
    QBoundReport rep;
    rep.q = q;
    for (int leaf : tree.leaves()) {
        PathProfile prof;
        prof.leaf = leaf;
        prof.path = tree.path_string(leaf);
        std::vector<int> chain;
        for (int cur = leaf; cur > 0; cur = tree.nodes[static_cast<size_t>(cur)].parent)
            chain.push_back(cur);
        std::reverse(chain.begin(), chain.end());
        for (int id : chain) {
            const TreeNode& nd = tree.nodes[static_cast<size_t>(id)];
            prof.ord_e.push_back(ord_q_of(nd.e, q));
            prof.ord_f.push_back(ord_q_of(nd.f, q));
        }
        for (size_t i = 0; i < prof.ord_e.size(); ++i) {
            prof.max_ord_e = std::max(prof.max_ord_e, prof.ord_e[i]);
            prof.max_ord_f = std::max(prof.max_ord_f, prof.ord_f[i]);
        }
        rep.bound = std::max(rep.bound, std::max(prof.max_ord_e, prof.max_ord_f));

        // Strict growth of max(ord_q e, ord_q f) at every level is evidence
        // (never proof) that the infinite tower violates the path condition.
        // One level of growth only counts when every step is a uniformizer
        // root, which ramifies unconditionally, so the growth is structural.
        bool all_uroot = !chain.empty();
        for (int id : chain)
            all_uroot = all_uroot &&
                        tree.nodes[static_cast<size_t>(id)].level_kind == LevelKind::UniformizerRoot;
        if ((prof.ord_e.size() >= 2 || all_uroot) && !rep.unbounded_evidence) {
            bool strict = true;
            long prev = 0;
            std::vector<long> growth;
            for (size_t i = 0; i < prof.ord_e.size(); ++i) {
                long g = std::max(prof.ord_e[i], prof.ord_f[i]);
                if (g <= prev) { strict = false; break; }
                growth.push_back(g);
                prev = g;
            }
            if (strict) {
                rep.unbounded_evidence = true;
                rep.evidence_leaf = leaf;
                rep.growth = std::move(growth);
            }
        }
        rep.paths.push_back(std::move(prof));
    }
    return rep;
}

namespace {

// Smallest (canonical code order) monic polynomial of degree n over kappa that
// is irreducible and primitive (a root generates the multiplicative group of
// the degree-n extension).
Poly smallest_primitive_poly(const FieldPtr& kappa, int n) {
    std::uint64_t count = monic_poly_count(*kappa, n);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Poly cand = monic_poly_by_index(kappa, n, idx);
        if (!poly_is_irreducible(cand)) continue;
        FieldPtr ext = Field::extension(kappa, cand.c);
        std::uint64_t M = ext->size() - 1;
        ffe g = static_cast<ffe>(kappa->size()); // code of the new generator
        bool primitive = true;
        std::uint64_t rest = M;
        for (std::uint64_t r = 2; r * r <= rest; ++r) {
            if (rest % r) continue;
            while (rest % r == 0) rest /= r;
            if (ext->pow(g, static_cast<long long>(M / r)) == 1) { primitive = false; break; }
        }
        if (primitive && rest > 1 && ext->pow(g, static_cast<long long>(M / rest)) == 1)
            primitive = false;
        if (primitive) return cand;
    }
    throw degenerate_error("InternalError", "no primitive polynomial found");
}

Poly smallest_irreducible_avoiding_t(const FieldPtr& F, int d) {
    if (d > 24) throw limit_error("ramification-avoidance degree exceeds desk scale (24)");
    Poly t = Poly::x(F);
    std::uint64_t count = monic_poly_count(*F, d);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Poly cand = monic_poly_by_index(F, d, idx);
        if (cand == t) continue;
        if (poly_is_irreducible(cand)) return cand;
    }
    throw degenerate_error("InternalError", "no irreducible polynomial of the requested degree");
}

// Lift a residue chain element into the tower: chain digits become F_p
// constants on the matching generator monomials.
TowerElem lift_chain_element(const TowerAlgebra& A, int m, const std::vector<FieldPtr>& chain,
                             ffe code) {
    if (m == 0) return {RatFunc::constant(A.F(), code)};
    const FieldPtr& Km = chain[static_cast<size_t>(m)];
    std::vector<ffe> digits = Km->digits(code);
    int sub_dim = A.dim(m - 1);
    TowerElem out = A.zero(m);
    for (size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] == 0) continue;
        TowerElem part = lift_chain_element(A, m - 1, chain, digits[i]);
        for (int j = 0; j < sub_dim; ++j)
            out[i * static_cast<size_t>(sub_dim) + static_cast<size_t>(j)] = part[static_cast<size_t>(j)];
    }
    return out;
}

} // namespace

InertTowerReport build_inert_tower(int p, int num_levels, const std::vector<int>& step_degrees) {
    if (!small_prime(p)) throw parse_error("p must be a prime");
    if (num_levels < 0 || static_cast<size_t>(std::max(num_levels, 0)) != step_degrees.size())
        throw parse_error("step_degrees must list one degree per level");
    if (num_levels > 4) throw limit_error("inert tower limited to 4 levels");
    long long product = 1;
    for (int d : step_degrees) {
        if (d < 2) throw parse_error("step degrees must be at least 2");
        product *= d;
        if (product > 16) throw limit_error("inert tower residue degree limited to 16");
    }

    FieldPtr F = Field::prime(p);
    Place place0 = Place::finite(Poly::x(F));
    InertTowerReport rep;
    rep.F = F;

    TowerAlgebra A(F);
    std::vector<FieldPtr> chain{residue_field(place0)};
    long ell_sum = 0;

    for (int m = 0; m < num_levels; ++m) {
        int n = step_degrees[static_cast<size_t>(m)];
        const FieldPtr& kappa = chain.back();

        InertLevelReport lvl;
        lvl.degree = n;
        lvl.p_reduced = smallest_primitive_poly(kappa, n);
        lvl.ell = ell_sum;
        lvl.q_avoid = smallest_irreducible_avoiding_t(F, static_cast<int>(ell_sum) + 1);

        // Lifts of the residue coefficients into L_m.
        std::vector<TowerElem> a;
        for (int i = 0; i <= n; ++i)
            a.push_back(lift_chain_element(A, m, chain, lvl.p_reduced.coeff(i)));

        // P_m(t, X) = a_0 q_m(0)/q_m(t) + sum_{i>=1} a_i (t + X)^i.
        RatFunc t = RatFunc::t(F);
        RatFunc q_at_0 = RatFunc::constant(F, lvl.q_avoid.eval(0));
        RatFunc q_of_t = RatFunc::from_poly(lvl.q_avoid);
        DefinedPoly P;
        P.coeff.assign(static_cast<size_t>(n) + 1, A.zero(m));
        P.coeff[0] = scale_elem(a[0], q_at_0 / q_of_t);
        // Binomial expansion of (t + X)^i, coefficients mod p.
        std::vector<std::vector<long long>> binom(static_cast<size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
            binom[static_cast<size_t>(i)].assign(static_cast<size_t>(i) + 1, 1);
            for (int j = 1; j < i; ++j)
                binom[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    binom[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] +
                    binom[static_cast<size_t>(i - 1)][static_cast<size_t>(j)];
        }
        for (int i = 1; i <= n; ++i) {
            for (int j = 0; j <= i; ++j) {
                RatFunc mult = RatFunc::constant(F, F->from_int(binom[static_cast<size_t>(i)][static_cast<size_t>(j)])) *
                               rf_pow(t, i - j);
                P.coeff[static_cast<size_t>(j)] =
                    A.add(P.coeff[static_cast<size_t>(j)], scale_elem(a[static_cast<size_t>(i)], mult));
            }
        }
        lvl.P = P;

        auto inert = verify_inert_step(A, m, P, place0, kappa);
        if (!inert || inert->reduced != lvl.p_reduced)
            throw degenerate_error("InternalError", "inert certificate failed on a constructed level");
        lvl.inert = *inert;

        auto totram = verify_totram_step(A, m, P, Place::finite(lvl.q_avoid));
        if (!totram)
            throw degenerate_error("InternalError", "total ramification certificate failed on a constructed level");
        lvl.totram = *totram;

        TowerElem disc = defined_poly_discriminant(A, m, P);
        lvl.disc_norm = A.norm(m, disc);
        if (lvl.disc_norm.is_zero())
            throw degenerate_error("InternalError", "vanishing discriminant on a constructed level");
        ell_sum += lvl.disc_norm.num.deg() + lvl.disc_norm.den.deg() + lvl.q_avoid.deg();

        A.push_level(P);
        chain.push_back(Field::extension(kappa, lvl.p_reduced.c));
        lvl.d_next = chain.back()->deg_over_prime();
        rep.levels.push_back(std::move(lvl));
    }

    rep.d_final = chain.back()->deg_over_prime();
    return rep;
}

std::vector<LevelSpec> inert_tower_levels(const InertTowerReport& rep) {
    std::vector<LevelSpec> out;
    for (const InertLevelReport& lvl : rep.levels) {
        LevelSpec s = LevelSpec::defined(lvl.P);
        s.inert = lvl.inert;
        s.totram = lvl.totram;
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace klab
