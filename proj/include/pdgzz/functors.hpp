// Bimodule functors on p-DG modules over the zigzag algebra: the cup/cap
// pair through cell replacements, the Temperley-Lieb endofunctor built from
// them, the two twist bimodules (cocone of the unit, cone of the counit),
// and certified reductions witnessing invertibility and the braid relation.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <tuple>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdgzz/resolve.hpp"

namespace pdgzz {

// ---------------------------------------------------------------------------
// Outer tensor product over the ground field of a left module and a right
// module; the result is a bimodule with the two actions on the two factors.

inline Mod tensor_outer(const Mod& Ml, const Mod& Nr) {
    if (!Ml.has_left || Ml.has_right || !Nr.has_right || Nr.has_left)
        throw std::invalid_argument("tensor_outer: need a left module and a right module");
    const ZigzagAlgebra& A = *Ml.A;
    int p = Ml.p, dm = Ml.dim(), dn = Nr.dim(), dim = dm * dn;
    Mod R;
    R.A = &A;
    R.p = p;
    R.lambda = Ml.lambda;
    R.has_left = R.has_right = true;
    R.deg.resize(dim);
    R.lv.resize(dim);
    R.rv.resize(dim);
    R.pos.resize(dim);
    auto idx = [&](int x, int y) { return x * dn + y; };
    for (int x = 0; x < dm; ++x)
        for (int y = 0; y < dn; ++y) {
            R.deg[idx(x, y)] = Ml.deg[x] + Nr.deg[y];
            R.lv[idx(x, y)] = Ml.lv[x];
            R.rv[idx(x, y)] = Nr.rv[y];
            R.pos[idx(x, y)] = Ml.pos[x] + Nr.pos[y];
        }
    auto kron_l = [&](const FpMat& m) {
        FpMat r(dim, dim, p);
        for (int x = 0; x < dm; ++x)
            for (int x2 = 0; x2 < dm; ++x2) {
                if (!m(x2, x)) continue;
                for (int y = 0; y < dn; ++y) r.set(idx(x2, y), idx(x, y), m(x2, x));
            }
        return r;
    };
    auto kron_r = [&](const FpMat& m) {
        FpMat r(dim, dim, p);
        for (int y = 0; y < dn; ++y)
            for (int y2 = 0; y2 < dn; ++y2) {
                if (!m(y2, y)) continue;
                for (int x = 0; x < dm; ++x) r.set(idx(x, y2), idx(x, y), m(y2, y));
            }
        return r;
    };
    R.d = kron_l(Ml.d) + kron_r(Nr.d);
    for (int u = 1; u < A.n; ++u)
        for (auto [a, b] : {std::pair{u, u + 1}, std::pair{u + 1, u}}) {
            R.lar[{a, b}] = kron_l(Ml.arrow_l(a, b));
            R.rar[{a, b}] = kron_r(Nr.arrow_r(a, b));
        }
    if (auto err = validate_mod(R)) throw std::logic_error("tensor_outer: " + *err);
    return R;
}

// ---------------------------------------------------------------------------
// Jordan-block helpers for p-complexes: explicit generators and functionals
// of stable summands, and the span of the free (length-p) blocks.

inline std::pair<ChainBasis, int> find_block(const PComplex& c, int j, int b) {
    ChainBasis cb = decompose_basis(c);
    int col = -1;
    for (auto& blk : cb.blocks)
        if (blk[0] == j && blk[1] == b) {
            if (col >= 0) throw std::invalid_argument("find_block: block is not unique");
            col = blk[2];
        }
    if (col < 0) throw std::invalid_argument("find_block: block not present");
    return {cb, col};
}

// Column vector generating the unique V(j, b) summand.
inline FpMat jordan_generator(const PComplex& c, int j, int b) {
    auto [cb, col] = find_block(c, j, b);
    FpMat v(c.dim(), 1, c.p);
    for (int i = 0; i < c.dim(); ++i) v(i, 0) = cb.g(i, col);
    return v;
}

// Row functional dual to the generator of the unique V(j, b) summand; it
// kills d-images, so it is a chain map to the matching one-block complex.
inline FpMat jordan_functional(const PComplex& c, int j, int b) {
    auto [cb, col] = find_block(c, j, b);
    auto sol = cb.g.transpose().solve(FpMat::identity(c.dim(), c.p));
    if (!sol) throw std::logic_error("jordan_functional: chain basis not invertible");
    FpMat f(1, c.dim(), c.p);
    for (int i = 0; i < c.dim(); ++i) f(0, i) = (*sol)(i, col);
    return f;
}

// Columns spanning the contractible part: every chain vector of every
// length-p block.
inline FpMat contractible_columns(const PComplex& c) {
    ChainBasis cb = decompose_basis(c);
    std::vector<int> cols;
    for (auto& blk : cb.blocks)
        if (blk[0] == c.p - 1)
            for (int k = 0; k <= blk[0]; ++k) cols.push_back(blk[2] + k);
    FpMat m(c.dim(), int(cols.size()), c.p);
    for (size_t t = 0; t < cols.size(); ++t)
        for (int i = 0; i < c.dim(); ++i) m(i, int(t)) = cb.g(i, cols[t]);
    return m;
}

// ---------------------------------------------------------------------------
// Cup, cap and the Temperley-Lieb endofunctor.  cup(i, V) pairs the simple
// at vertex i with a coefficient complex; cap(i, M) contracts the right cell
// replacement of the vertex-i simple against M; the TL functor is cup after
// cap with the balancing shift.

inline Mod cup(const ZigzagAlgebra& A, int lambda, int i, const PComplex& V) {
    return tensor_vcomplex(simple(A, lambda, i, false), V);
}

inline PComplex cap(const ZigzagAlgebra& A, int lambda, int i, const Mod& M) {
    NYResolution r = ny_resolution(A, lambda, i, true);
    return tensor_over_A(r.mod, M).mod.underlying();
}

inline PComplex tl_pfactor(const ZigzagAlgebra& A, int lambda, int i, const Mod& M) {
    return shift(cap(A, lambda, i, M), -1, -1);
}

inline Mod tl_functor(const ZigzagAlgebra& A, int lambda, int i, const Mod& M) {
    return cup(A, lambda, i, tl_pfactor(A, lambda, i, M));
}

// ---------------------------------------------------------------------------
// Certificates: a flat list of named pass/fail legs.

struct CheckLeg {
    std::string what;
    bool ok = true;
    std::string detail;
};

struct Certificate {
    std::string title;
    std::vector<CheckLeg> legs;

    bool ok() const {
        for (auto& l : legs)
            if (!l.ok) return false;
        return true;
    }
    void leg(const std::string& w, bool o, const std::string& d = "") { legs.push_back({w, o, d}); }
    std::string first_failure() const {
        for (auto& l : legs)
            if (!l.ok) return l.what + (l.detail.empty() ? "" : " [" + l.detail + "]");
        return "";
    }
};

// ---------------------------------------------------------------------------
// Degree-zero bimodule chain maps subject to extra linear conditions.

// One inhomogeneous linear condition on the entries of a module map:
// sum of coeff * entry(row, col) equals rhs.
struct MapCondition {
    std::vector<std::pair<std::pair<int, int>, int>> terms;
    int rhs = 0;
};

// Solve for an internal-degree-zero bimodule chain map src -> tgt subject to
// extra linear conditions.  Entries are restricted to weight- and
// degree-compatible pairs; the constraints are commutation with the
// differential and with both actions.
inline FpMat solve_bimodule_map(const Mod& src, const Mod& tgt,
                                const std::vector<MapCondition>& conditions) {
    int p = src.p, ds = src.dim(), dt = tgt.dim();
    std::map<std::pair<int, int>, int> ux;  // (tgt row, src col) -> unknown
    for (int x = 0; x < dt; ++x)
        for (int b = 0; b < ds; ++b)
            if (tgt.deg[x] == src.deg[b] && tgt.lv[x] == src.lv[b] && tgt.rv[x] == src.rv[b])
                ux[{x, b}] = int(ux.size());
    int nu = int(ux.size());
    std::vector<std::pair<std::vector<uint8_t>, int>> eqs;
    auto add_commute = [&](const FpMat& os, const FpMat& ot) {
        for (int x = 0; x < dt; ++x)
            for (int b = 0; b < ds; ++b) {
                std::vector<uint8_t> row(size_t(nu), 0);
                bool nz = false;
                for (int y = 0; y < dt; ++y)
                    if (ot(x, y))
                        if (auto it = ux.find({y, b}); it != ux.end()) {
                            row[it->second] = uint8_t((row[it->second] + ot(x, y)) % p);
                            nz = true;
                        }
                for (int a = 0; a < ds; ++a)
                    if (os(a, b))
                        if (auto it = ux.find({x, a}); it != ux.end()) {
                            row[it->second] =
                                uint8_t((row[it->second] + (p - 1) * os(a, b)) % p);
                            nz = true;
                        }
                if (nz) eqs.push_back({std::move(row), 0});
            }
    };
    add_commute(src.d, tgt.d);
    for (auto& [k, m] : src.lar) add_commute(m, tgt.lar.at(k));
    for (auto& [k, m] : src.rar) add_commute(m, tgt.rar.at(k));
    for (auto& cond : conditions) {
        std::vector<uint8_t> row(size_t(nu), 0);
        for (auto& [at, coef] : cond.terms)
            if (auto it = ux.find(at); it != ux.end())
                row[it->second] = uint8_t(((row[it->second] + coef) % p + p) % p);
        eqs.push_back({std::move(row), ((cond.rhs % p) + p) % p});
    }
    FpMat M(int(eqs.size()), nu, p), rhs(int(eqs.size()), 1, p);
    for (size_t r = 0; r < eqs.size(); ++r) {
        for (int c = 0; c < nu; ++c) M(int(r), c) = eqs[r].first[size_t(c)];
        rhs(int(r), 0) = uint8_t(eqs[r].second);
    }
    auto sol = M.solve(rhs);
    if (!sol) throw std::logic_error("solve_bimodule_map: no solution");
    FpMat out(dt, ds, p);
    for (auto& [at, k] : ux) out.set(at.first, at.second, (*sol)(k, 0));
    return out;
}

// ---------------------------------------------------------------------------
// Vertex coinvariants and the two composition rules for twist bimodules.
// Applying the positive twist at vertex i to a module Y whose left structure
// is built from cell modules is the cocone of the coinvariant projection
// Y -> L_i (x) (_iL (x)_A Y); applying the inverse twist is the cone of the
// socle insertion in the other direction.  Both constructions stay inside
// strict finite-dimensional models, and every glue map is re-checked to be a
// chain bimodule map at runtime.

// L_i (x) (_iL (x)_A Y): the quotient of Y by (1 - e_i) Y + (c rad) Y, where
// the left action descends to run through the vertex-i simple.  Returns the
// quotient together with the projection matrix Y -> corner.
inline std::pair<Mod, FpMat> vertex_coinvariants(const ZigzagAlgebra& A, int i, const Mod& Y) {
    std::vector<FpMat> acts;
    for (int b = 0; b < A.dim(); ++b)
        if (A.deg(b) > 0 && A.src(b) == i) acts.push_back(Y.act_left(b));
    int ncols = 0;
    for (int x = 0; x < Y.dim(); ++x)
        if (Y.lv[x] != i) ++ncols;
    FpMat span(Y.dim(), ncols + int(acts.size()) * Y.dim(), Y.p);
    int c = 0;
    for (int x = 0; x < Y.dim(); ++x)
        if (Y.lv[x] != i) span.set(x, c++, 1);
    for (auto& m : acts)
        for (int j = 0; j < Y.dim(); ++j, ++c)
            for (int r = 0; r < Y.dim(); ++r)
                if (m(r, j)) span.set(r, c, m(r, j));
    return quotient_mod(Y, span);
}

// T_i (x)_A Y: the cocone of the coinvariant projection.  Y must be built
// from cell modules on the left for the corner to compute the derived
// coinvariants.
inline Mod twist_cocone(const ZigzagAlgebra& A, int i, const Mod& Y) {
    auto [corner, proj] = vertex_coinvariants(A, i, Y);
    ModMap g{&Y, &corner, proj, 0};
    if (!g.is_chain_map()) throw std::logic_error("twist_cocone: projection is not a chain map");
    return cocone_mod(g);
}

// ---------------------------------------------------------------------------
// Stored models of the twist bimodules.  The positive twist T_i is kept as
// the small cocone of the projection A -> L_i (x) _iL; the inverse twist
// T'_i is kept as the cone of the evaluation p(L_i) (x) HOM(p(L_i), A) -> A,
// which is a two-sided complex of cells and can therefore be tensored
// against arbitrary modules.  There is no small two-term model of T'_i: the
// would-be gluing map c_i . (-) out of the coinvariant corner is not left
// linear whenever a vertex above i exists, because the loop at i does not
// annihilate the arrows pointing away from vertex 1.

struct ResolvedBimodule {
    std::string tag;
    int i = 0;          // twist vertex (0 for the identity and for composites)
    int kind = 0;       // +1 positive twist, -1 inverse twist, 0 other
    bool left_cell = false;   // left structure built from cell modules
    bool right_proj = false;  // right structure projective (usable as a tensor factor)
    Mod mod;
};

// The evaluation model of the inverse twist, with its piece and counit.
struct TwistCellParts {
    NYResolution pl;  // left cell replacement of the vertex-i simple
    Mod D;            // dual right cell module HOM(p(L_i), A)
    Mod piece;        // p(L_i) (x) D
    FpMat counit;     // evaluation piece -> A
    Mod cell;         // cone of the evaluation
};

inline TwistCellParts twist_prime_cell(const ZigzagAlgebra& A, int lambda, int i) {
    TwistCellParts t;
    t.pl = ny_resolution(A, lambda, i, false);
    CellDiagram dg = dual_diagram(t.pl.diagram);
    t.D = compile(A, lambda, dg, true);
    t.piece = tensor_outer(t.pl.mod, t.D);
    // Counit: the evaluation pairing of p(L_i) against its dual, node by node.
    FpMat eps(A.dim(), t.piece.dim(), A.p);
    auto loff = detail::node_offsets(A, t.pl.diagram, false);
    auto roff = detail::node_offsets(A, dg, true);
    for (size_t nd = 0; nd < t.pl.diagram.nodes.size(); ++nd) {
        int P = t.pl.diagram.nodes[nd].P;
        auto lb = detail::node_basis(A, P, false);
        auto rbas = detail::node_basis(A, P, true);
        for (size_t x = 0; x < lb.size(); ++x)
            for (size_t z = 0; z < rbas.size(); ++z)
                if (auto prod = A.mult_basis(lb[x], rbas[z])) {
                    int col = (loff[nd] + int(x)) * t.D.dim() + roff[nd] + int(z);
                    eps.set(*prod, col, eps(*prod, col) + 1);
                }
    }
    t.counit = eps;
    Mod areg = regular_bimodule(A, lambda);
    ModMap c{&t.piece, &areg, eps, 0};
    if (!c.is_chain_map()) throw std::logic_error("twist_prime_cell: counit is not a chain map");
    t.cell = cone_mod(c);
    return t;
}

inline ResolvedBimodule build_T(const ZigzagAlgebra& A, int lambda, int i) {
    Mod areg = regular_bimodule(A, lambda);
    return {"T" + std::to_string(i), i, +1, false, false, twist_cocone(A, i, areg)};
}

inline ResolvedBimodule build_T_prime(const ZigzagAlgebra& A, int lambda, int i) {
    return {"T'" + std::to_string(i), i, -1, true, true,
            twist_prime_cell(A, lambda, i).cell};
}

inline ResolvedBimodule identity_bimodule(const ZigzagAlgebra& A, int lambda) {
    return {"identity", 0, 0, true, true, regular_bimodule(A, lambda)};
}

// Apply a stored bimodule to a module.  Cell-by-cell bimodules tensor
// against anything; the small positive twist composes through the
// coinvariant cocone, which requires the argument to be built from cell
// modules on the left.
inline Mod apply_bimodule(const ResolvedBimodule& B, const Mod& M) {
    if (B.right_proj) return tensor_over_A(B.mod, M).mod;
    if (B.kind > 0) return twist_cocone(*M.A, B.i, M);
    throw std::invalid_argument("apply_bimodule: no applicable composition rule");
}

inline ResolvedBimodule compose_bimodules(const ResolvedBimodule& a, const ResolvedBimodule& b) {
    ResolvedBimodule r;
    r.tag = a.tag + " " + b.tag;
    if (a.right_proj) {
        r.mod = tensor_over_A(a.mod, b.mod).mod;
        r.left_cell = a.left_cell;
        r.right_proj = b.right_proj;
    } else if (b.left_cell && a.kind != 0) {
        r.mod = apply_bimodule(a, b.mod);
    } else {
        throw std::invalid_argument("compose_bimodules: no applicable composition rule");
    }
    return r;
}

// ---------------------------------------------------------------------------
// Reduction of a module to a smaller quasi-isomorphic one.  Two moves, each
// a strict quasi-isomorphism by the short exact sequence of p-complexes:
// quotient by an action-closed acyclic subspace, and passage to an
// action-closed subspace with acyclic quotient (run on functionals with the
// transposed actions).  Candidate subspaces are grown greedily from
// homogeneous seeds and accepted when the closure stays acyclic, which for a
// finite-dimensional p-complex is the exact condition
// rank(d^(p-1)) = dim / p.

struct StripLeg {
    bool dual = false;  // false: quotient by acyclic sub; true: sub with acyclic quotient
    int from = 0, to = 0;
};

struct StripResult {
    Mod mod;
    std::vector<StripLeg> legs;
};

namespace detail {

inline std::vector<SparseOp> strip_ops(const Mod& M, bool dual) {
    std::vector<SparseOp> ops;
    auto add = [&](const FpMat& m) { ops.emplace_back(dual ? m.transpose() : m); };
    add(M.d);
    for (auto& [k, m] : M.lar) add(m);
    for (auto& [k, m] : M.rar) add(m);
    return ops;
}

// Split a vector into its (degree, weight, weight) homogeneous components.
inline void homog_split(const Mod& M, const std::vector<uint8_t>& v,
                        std::vector<std::vector<uint8_t>>& out) {
    std::map<std::tuple<int, int, int>, size_t> slot;
    for (int x = 0; x < M.dim(); ++x) {
        if (!v[x]) continue;
        auto key = std::make_tuple(M.deg[x], M.lv[x], M.rv[x]);
        auto it = slot.find(key);
        if (it == slot.end()) {
            it = slot.emplace(key, out.size()).first;
            out.emplace_back(size_t(M.dim()), 0);
        }
        out[it->second][x] = v[x];
    }
}

// d^(p-1) assembled by repeated sparse application.
inline FpMat dpow_mat(const FpMat& d, int p) {
    SparseOp sd(d);
    FpMat out = d;
    for (int k = 2; k <= p - 1; ++k) {
        FpMat nxt(d.rows, d.cols, d.p);
        std::vector<uint8_t> col(size_t(d.rows));
        for (int j = 0; j < d.cols; ++j) {
            for (int r = 0; r < d.rows; ++r) col[size_t(r)] = out(r, j);
            auto w = sd.apply(col);
            for (int r = 0; r < d.rows; ++r) nxt(r, j) = w[size_t(r)];
        }
        out = std::move(nxt);
    }
    return out;
}

// An action-closed subspace kept acyclic: span dimension is always p times
// the rank of d^(p-1) restricted to it.
struct AcyclicSpan {
    RowSpan span, im;
    AcyclicSpan(int dim, int p) : span(dim, p), im(dim, p) {}
};

// Grow the subspace by the action closure of a seed; accept only if the
// grown closure is still acyclic and proper.  Seeds and all operator images
// are split into homogeneous components before insertion so the closure
// stays graded.
inline bool grow_acyclic(const Mod& M, const std::vector<SparseOp>& ops, const SparseOp& dp,
                         AcyclicSpan& st, const std::vector<uint8_t>& seed) {
    if (st.span.contains(seed)) return false;
    AcyclicSpan trial = st;
    std::vector<std::vector<uint8_t>> work, parts;
    homog_split(M, seed, parts);
    auto push = [&](std::vector<uint8_t> v) {
        if (trial.span.insert(std::vector<uint8_t>(v))) {
            trial.im.insert(dp.apply(v));
            work.push_back(std::move(v));
        }
    };
    for (auto& c : parts) push(std::move(c));
    while (!work.empty()) {
        auto v = std::move(work.back());
        work.pop_back();
        for (auto& op : ops) push(op.apply(v));
    }
    int sd = trial.span.dim();
    if (sd == M.dim() || sd % M.p || sd != M.p * trial.im.dim()) return false;
    st = std::move(trial);
    return true;
}

// Quotient by an action-closed homogeneous subspace given as an echelon row
// span.  Same construction as quotient_mod, with the linear algebra batched
// (the span is action-closed by construction, checked column by column).
inline std::pair<Mod, FpMat> quotient_by_span(const Mod& M, const RowSpan& rs) {
    int p = M.p, dim = M.dim();
    std::vector<bool> is_piv(size_t(dim), false);
    for (int pc : rs.pivot) is_piv[size_t(pc)] = true;
    std::vector<int> free;
    for (int x = 0; x < dim; ++x)
        if (!is_piv[size_t(x)]) free.push_back(x);
    int qd = int(free.size());
    FpMat proj(qd, dim, p);
    std::vector<uint8_t> v(size_t(dim), 0);
    for (int j = 0; j < dim; ++j) {
        std::fill(v.begin(), v.end(), 0);
        v[size_t(j)] = 1;
        rs.reduce(v);
        for (int t = 0; t < qd; ++t) proj(t, j) = v[size_t(free[t])];
    }
    Mod Q;
    Q.A = M.A;
    Q.p = p;
    Q.lambda = M.lambda;
    Q.has_left = M.has_left;
    Q.has_right = M.has_right;
    for (int t = 0; t < qd; ++t) {
        Q.deg.push_back(M.deg[free[t]]);
        Q.lv.push_back(M.lv[free[t]]);
        Q.rv.push_back(M.rv[free[t]]);
        Q.pos.push_back(M.pos[free[t]]);
    }
    FpMat Rt = rs.basis().transpose();
    auto descend = [&](const FpMat& op) {
        FpMat opf(dim, qd, p);
        for (int t = 0; t < qd; ++t)
            for (int r = 0; r < dim; ++r) opf(r, t) = op(r, free[t]);
        FpMat opq = proj * opf;
        FpMat ort = op * Rt;
        for (int c = 0; c < ort.cols; ++c) {
            for (int r = 0; r < dim; ++r) v[size_t(r)] = ort(r, c);
            if (rs.reduce(v) >= 0)
                throw std::invalid_argument("quotient_by_span: span not stable");
        }
        return opq;
    };
    Q.d = descend(M.d);
    for (auto& [ij, a] : M.lar) Q.lar[ij] = descend(a);
    for (auto& [ij, a] : M.rar) Q.rar[ij] = descend(a);
    if (auto err = validate_mod(Q)) throw std::logic_error("quotient_by_span: " + *err);
    return {std::move(Q), std::move(proj)};
}

}  // namespace detail

// Reduce a module by alternating the two strip moves until neither makes
// progress.  Every leg of the reduction is a strict quasi-isomorphism, so
// the result is canonically quasi-isomorphic to the input.
inline StripResult strip_min(Mod M, int random_tries = 64, uint32_t seed_base = 0x5eed) {
    StripResult out;
    std::mt19937 rng(seed_base);
    for (;;) {
        bool moved = false;
        for (int phase = 0; phase < 2 && !moved; ++phase) {
            bool dual = phase == 1;
            int dim = M.dim(), p = M.p;
            if (!dim) break;
            FpMat dp = detail::dpow_mat(M.d, p);
            if (dual) dp = dp.transpose();
            SparseOp sdp(dp);
            auto ops = detail::strip_ops(M, dual);
            detail::AcyclicSpan st(dim, p);
            std::vector<uint8_t> seed(size_t(dim), 0);
            for (int j = 0; j < dim; ++j) {
                if (sdp.col[size_t(j)].empty()) continue;
                std::fill(seed.begin(), seed.end(), 0);
                seed[size_t(j)] = 1;
                detail::grow_acyclic(M, ops, sdp, st, seed);
            }
            // Random homogeneous combinations catch strings whose generators
            // are not aligned with the coordinate basis.
            std::map<std::tuple<int, int, int>, std::vector<int>> cls;
            for (int x = 0; x < dim; ++x)
                if (!sdp.col[size_t(x)].empty())
                    cls[{M.deg[x], M.lv[x], M.rv[x]}].push_back(x);
            for (int t = 0; t < random_tries && !cls.empty(); ++t) {
                auto it = cls.begin();
                std::advance(it, int(rng() % cls.size()));
                std::fill(seed.begin(), seed.end(), 0);
                for (int x : it->second) seed[size_t(x)] = uint8_t(rng() % unsigned(p));
                detail::grow_acyclic(M, ops, sdp, st, seed);
            }
            if (!st.span.dim()) continue;
            if (!dual) {
                auto [Q, proj] = detail::quotient_by_span(M, st.span);
                out.legs.push_back({false, dim, Q.dim()});
                M = std::move(Q);
            } else {
                auto [S, incl] = submodule(M, st.span.basis().nullspace());
                out.legs.push_back({true, dim, S.dim()});
                M = std::move(S);
            }
            moved = true;
        }
        if (!moved) break;
    }
    out.mod = std::move(M);
    return out;
}

// ---------------------------------------------------------------------------
// Explicit isomorphisms.  Internal-degree-zero chain bimodule maps S -> T
// are the degree-0 cycles of the full hom complex; an invertible cycle is an
// isomorphism (its inverse is automatically a chain bimodule map).

inline std::optional<FpMat> find_bimodule_iso(const Mod& S, const Mod& T, int tries = 256) {
    if (S.dim() != T.dim()) return std::nullopt;
    int p = S.p;
    HomComplex H = hom_complex_full(S, T);
    std::vector<int> deg0;
    for (int k = 0; k < H.cx.dim(); ++k)
        if (H.cx.deg[k] == 0) deg0.push_back(k);
    if (deg0.empty()) return std::nullopt;
    FpMat D0(H.cx.dim(), int(deg0.size()), p);
    for (size_t t = 0; t < deg0.size(); ++t)
        for (int r = 0; r < H.cx.dim(); ++r) D0(r, int(t)) = H.cx.d(r, deg0[t]);
    FpMat cyc = D0.nullspace();  // columns: coefficient vectors of chain maps
    auto assemble = [&](const std::vector<uint8_t>& coef) {
        FpMat f(T.dim(), S.dim(), p);
        for (size_t t = 0; t < deg0.size(); ++t)
            if (coef[t]) f = f + H.basis_maps[size_t(deg0[t])].scaled(coef[t]);
        return f;
    };
    std::vector<uint8_t> coef(size_t(cyc.cols));
    for (int c = 0; c < cyc.cols; ++c) {
        for (int r = 0; r < cyc.rows; ++r) coef[size_t(r)] = 0;
        std::vector<uint8_t> one(size_t(deg0.size()), 0);
        for (int r = 0; r < cyc.rows; ++r) one[size_t(r)] = cyc(r, c);
        FpMat f = assemble(one);
        if (f.rank() == S.dim()) return f;
    }
    std::mt19937 rng(0xbead);
    std::vector<uint8_t> mix(size_t(deg0.size()));
    for (int t = 0; t < tries; ++t) {
        std::fill(mix.begin(), mix.end(), 0);
        for (int c = 0; c < cyc.cols; ++c) {
            uint8_t a = uint8_t(rng() % unsigned(p));
            if (!a) continue;
            for (int r = 0; r < cyc.rows; ++r)
                mix[size_t(r)] = uint8_t((mix[size_t(r)] + a * cyc(r, c)) % p);
        }
        FpMat f = assemble(mix);
        if (f.rank() == S.dim()) return f;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Adjunction data: the structure maps of the cup/cap adjunctions in explicit
// matrix models.

struct AdjunctionData {
    int i = 0;
    Mod areg;
    Mod unit_piece;    // L_i (x) _iL
    FpMat eta2;        // coinvariant projection A -> L_i (x) _iL
    Mod counit_piece;  // p(L_i) (x) HOM(p(L_i), A)
    FpMat eps_hat;     // evaluation counit_piece -> A
    TensorResult S;    // p(_iL) (x)_A L_i
    Mod ssh;           // S[-2]{-2}
    FpMat eta1;        // V(0,0) generator of ssh: the unit k -> _iL (x)^L L_i
    FpMat eps2;        // functional on S projecting onto its V(0,0) summand
};

inline AdjunctionData adjunction_maps(const ZigzagAlgebra& A, int lambda, int i) {
    AdjunctionData ad;
    ad.i = i;
    ad.areg = regular_bimodule(A, lambda);
    auto [corner, proj] = vertex_coinvariants(A, i, ad.areg);
    ad.unit_piece = std::move(corner);
    ad.eta2 = std::move(proj);
    TwistCellParts tc = twist_prime_cell(A, lambda, i);
    ad.counit_piece = std::move(tc.piece);
    ad.eps_hat = std::move(tc.counit);
    ad.S = tensor_over_A(ny_resolution(A, lambda, i, true).mod, simple(A, lambda, i, false));
    ad.ssh = shift_mod(ad.S.mod, -2, -2);
    ad.eta1 = jordan_generator(ad.ssh.underlying(), 0, 0);
    ad.eps2 = jordan_functional(ad.S.mod.underlying(), 0, 0);
    return ad;
}

// ---------------------------------------------------------------------------
// Temperley-Lieb relations, checked on the projective and simple generators
// with explicit stable-part quasi-isomorphisms as certificates.

inline Certificate verify_tl_relations(const ZigzagAlgebra& A, int lambda) {
    Certificate cert{"TL relations n=" + std::to_string(A.n) + " p=" + std::to_string(A.p) +
                         " lambda=" + std::to_string(lambda),
                     {}};
    std::vector<std::pair<std::string, Mod>> objs;
    for (int j = 1; j <= A.n; ++j)
        objs.push_back({"P" + std::to_string(j), projective(A, lambda, j, false)});
    for (int j = 1; j <= A.n - 1; ++j)
        objs.push_back({"L" + std::to_string(j), simple(A, lambda, j, false)});
    for (auto& [nm, M] : objs)
        for (int i = 1; i <= A.n - 1; ++i) {
            std::string ui = "U" + std::to_string(i);
            PComplex V = tl_pfactor(A, lambda, i, M);
            Mod uim = cup(A, lambda, i, V);
            // (i)  U_i U_i = U_i[-1]{-1} + U_i[1]{1}
            {
                PComplex W = tl_pfactor(A, lambda, i, uim);
                PComplex target = direct_sum(shift(V, -1, -1), shift(V, 1, 1));
                auto q = standard_quasi_iso(W, target);
                cert.leg(ui + " " + ui + " = " + ui + "[-1]{-1} + " + ui + "[1]{1} on " + nm,
                         q.has_value() && is_quasi_iso(*q));
            }
            // (iii)  U_i U_j U_i = U_i for |i-j| = 1
            for (int j : {i - 1, i + 1}) {
                if (j < 1 || j > A.n - 1) continue;
                Mod ujuim = tl_functor(A, lambda, j, uim);
                PComplex W = tl_pfactor(A, lambda, i, ujuim);
                auto q = standard_quasi_iso(W, V);
                cert.leg(ui + " U" + std::to_string(j) + " " + ui + " = " + ui + " on " + nm,
                         q.has_value() && is_quasi_iso(*q));
            }
            // (ii)  U_i U_j = U_j U_i for |i-j| > 1 (both sides annihilate objects)
            for (int j = i + 2; j <= A.n - 1; ++j) {
                PComplex wij = tl_pfactor(A, lambda, i, tl_functor(A, lambda, j, M));
                PComplex wji = tl_pfactor(A, lambda, j, uim);
                cert.leg(ui + " U" + std::to_string(j) + " = U" + std::to_string(j) + " " + ui +
                             " on " + nm,
                         is_acyclic(wij) && is_acyclic(wji));
            }
        }
    return cert;
}

// ---------------------------------------------------------------------------
// Braid relations.  Each certificate composes stored twist models through
// the coinvariant cocone and tensoring against cell-shaped factors, reduces
// both sides with strip_min (a chain of strict quasi-isomorphisms), and
// finishes with an explicit invertible bimodule chain map between the
// reduced models.

namespace detail {

inline void strip_and_match(const Mod& target, Mod composite, const std::string& tag,
                            Certificate& cert) {
    StripResult sr = strip_min(std::move(composite));
    std::string trail = std::to_string(sr.legs.empty() ? sr.mod.dim() : sr.legs.front().from);
    for (auto& l : sr.legs) trail += (l.dual ? " >" : " -") + std::to_string(l.to);
    cert.leg(tag + ": reduced to matching dimension", sr.mod.dim() == target.dim(),
             "dims " + trail);
    if (sr.mod.dim() != target.dim()) return;
    auto iso = find_bimodule_iso(target, sr.mod);
    cert.leg(tag + ": explicit bimodule isomorphism", iso.has_value());
}

}  // namespace detail

// T_i T'_i = identity = T'_i T_i, as an explicit reduction of both composite
// bimodules to the regular bimodule.
inline Certificate verify_braid_R2(const ZigzagAlgebra& A, int lambda, int i) {
    Certificate cert{"R2 (inverse twists) n=" + std::to_string(A.n) + " p=" + std::to_string(A.p) +
                         " lambda=" + std::to_string(lambda) + " i=" + std::to_string(i),
                     {}};
    Mod areg = regular_bimodule(A, lambda);
    ResolvedBimodule T = build_T(A, lambda, i);
    ResolvedBimodule Tp = build_T_prime(A, lambda, i);
    detail::strip_and_match(areg, twist_cocone(A, i, Tp.mod), "T T'", cert);
    detail::strip_and_match(areg, tensor_over_A(Tp.mod, T.mod).mod, "T' T", cert);
    return cert;
}

namespace detail {

// Tensor a cell bimodule against an arbitrary bimodule and reduce the
// result.  The cell factor is projective on the right, so tensoring with it
// is exact and the reduction stays a chain of quasi-isomorphisms of the
// composite.
inline Mod cell_step(const Mod& cell, Mod rhs, std::string& trail) {
    Mod w = tensor_over_A(cell, rhs).mod;
    trail += " " + std::to_string(w.dim());
    StripResult sr = strip_min(std::move(w));
    trail += ">" + std::to_string(sr.mod.dim());
    return std::move(sr.mod);
}

// a (x)_A b (x)_A a assembled right to left, reducing after every step.
inline Mod cell_triple(const Mod& a, const Mod& b, std::string& trail) {
    StripResult sr = strip_min(Mod(a));
    trail = std::to_string(a.dim()) + ">" + std::to_string(sr.mod.dim());
    Mod w = cell_step(b, std::move(sr.mod), trail);
    return cell_step(a, std::move(w), trail);
}

inline void match_composites(Mod w1, Mod w2, const std::string& tag, std::string note,
                             Certificate& cert) {
    // The greedy reduction can stall at different dimensions on the two
    // sides; retry the larger side with fresh random seeds before comparing.
    for (uint32_t attempt = 1; attempt <= 6 && w1.dim() != w2.dim(); ++attempt) {
        Mod& big = w1.dim() > w2.dim() ? w1 : w2;
        int before = big.dim();
        StripResult sr = strip_min(std::move(big), 256, 0x5eed + attempt);
        big = std::move(sr.mod);
        if (big.dim() != before)
            note += " retry " + std::to_string(before) + ">" + std::to_string(big.dim());
    }
    cert.leg(tag + ": both orders reduce to equal dimension", w1.dim() == w2.dim(), note);
    if (w1.dim() != w2.dim()) return;
    auto iso = find_bimodule_iso(w1, w2);
    cert.leg(tag + ": explicit bimodule isomorphism", iso.has_value());
}

}  // namespace detail

// The braid relation T_i T_j T_i = T_j T_i T_j for the adjacent pair
// j = i + 1.  Inverting both sides turns it into the same relation for the
// inverse twists, whose evaluation-cone models are cells on both sides, so
// each triple composite is an honest tensor product over A.  Both composites
// are reduced and the reduced bimodules matched by an explicit isomorphism.
inline Certificate verify_braid_R3(const ZigzagAlgebra& A, int lambda, int i) {
    int j = i + 1;
    Certificate cert{"R3 (braid relation) n=" + std::to_string(A.n) + " p=" + std::to_string(A.p) +
                         " lambda=" + std::to_string(lambda) + " pair (" + std::to_string(i) +
                         "," + std::to_string(j) + ")",
                     {}};
    Mod celli = build_T_prime(A, lambda, i).mod;
    Mod cellj = build_T_prime(A, lambda, j).mod;
    std::string t1, t2;
    Mod w1 = detail::cell_triple(celli, cellj, t1);  // T'_i T'_{i+1} T'_i
    Mod w2 = detail::cell_triple(cellj, celli, t2);  // T'_{i+1} T'_i T'_{i+1}
    detail::match_composites(std::move(w1), std::move(w2), "T' T' T' both orders",
                             "dims " + t1 + " | " + t2, cert);
    return cert;
}

// Distant commutativity T_i T_j = T_j T_i for |i - j| > 1, again through the
// inverse-twist cell models.
inline Certificate verify_braid_distant(const ZigzagAlgebra& A, int lambda, int i, int j) {
    Certificate cert{"distant commutativity n=" + std::to_string(A.n) + " p=" +
                         std::to_string(A.p) + " lambda=" + std::to_string(lambda) + " pair (" +
                         std::to_string(i) + "," + std::to_string(j) + ")",
                     {}};
    if (j < i + 2) throw std::invalid_argument("verify_braid_distant: vertices must be distant");
    Mod celli = build_T_prime(A, lambda, i).mod;
    Mod cellj = build_T_prime(A, lambda, j).mod;
    std::string t1, t2;
    StripResult si = strip_min(Mod(celli));
    t1 = std::to_string(celli.dim()) + ">" + std::to_string(si.mod.dim());
    Mod w1 = detail::cell_step(cellj, std::move(si.mod), t1);  // T'_j T'_i
    StripResult sj = strip_min(Mod(cellj));
    t2 = std::to_string(cellj.dim()) + ">" + std::to_string(sj.mod.dim());
    Mod w2 = detail::cell_step(celli, std::move(sj.mod), t2);  // T'_i T'_j
    detail::match_composites(std::move(w1), std::move(w2), "T' T' both orders",
                             "dims " + t1 + " | " + t2, cert);
    return cert;
}

}  // namespace pdgzz
