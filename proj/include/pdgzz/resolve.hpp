// Finite cell replacements of the simple modules L_i / _iL over the
// differential zigzag algebra, for both differential parameters, plus the
// explicit chain maps between neighbouring simples (the "psi" and "phi"
// maps) built from their printed coefficient lists.
#pragma once

#include "pdgzz/module.hpp"

namespace pdgzz {

// Reverse every edge label through the anti-involution tau; the result
// compiles on the opposite side with the complementary parameter.
inline CellDiagram tau_diagram(const CellDiagram& dg) {
    CellDiagram out = dg;
    for (auto& e : out.edges) e.label = {e.label[1], e.label[0], e.label[2]};
    return out;
}

namespace detail {

// Basis of the projective at vertex v as algebra basis indices, in the order
// used by compile().
inline std::vector<int> node_basis(const ZigzagAlgebra& A, int v, bool right_side) {
    std::vector<int> out;
    for (int b = 0; b < A.dim(); ++b)
        if ((right_side ? A.src(b) : A.tgt(b)) == v) out.push_back(b);
    return out;
}

inline std::vector<int> node_offsets(const ZigzagAlgebra& A, const CellDiagram& dg,
                                     bool right_side) {
    std::vector<int> off;
    int t = 0;
    for (auto& nd : dg.nodes) {
        off.push_back(t);
        t += int(node_basis(A, nd.P, right_side).size());
    }
    off.push_back(t);
    return off;
}

// Index of the idempotent inside the node basis.
inline int head_slot(const ZigzagAlgebra& A, int v, bool right_side) {
    auto nb = node_basis(A, v, right_side);
    for (size_t x = 0; x < nb.size(); ++x)
        if (nb[x] == A.idem(v)) return int(x);
    throw std::logic_error("head_slot: idempotent not found");
}

}  // namespace detail

struct NYResolution {
    CellDiagram diagram;
    int i = 0;
    int lambda = 1;
    bool right_side = false;
    Mod mod;     // compiled cell module
    Mod smp;     // the simple it replaces
    FpMat aug;   // 1 x dim projection onto the head of the final node
};

inline ModMap aug_map(const NYResolution& r) { return {&r.mod, &r.smp, r.aug, 0}; }

// The three-row cell diagram replacing L_i (or _iL).  Node order: the initial
// P_i{2-2p}; then per column c = 0..p-2 (shift 3-2p+2c) the P_{i-1} node
// followed by the P_{i+1} node; then the final P_i.  The row P_0 is dropped.
// The internal two-step arrows run from the P_{i-1} row to the P_{i+1} row
// for (left, lambda=1), and in the reverse direction for (right, lambda=1);
// the lambda=0 diagrams arise by tau transport from the other side.
inline CellDiagram ny_diagram(int p, int n, int i, bool right_side, int lambda) {
    if (i < 1 || i > n - 1) throw std::invalid_argument("ny_diagram: index range");
    if (lambda == 0) return tau_diagram(ny_diagram(p, n, i, !right_side, 1));
    bool down = !right_side;  // verticals P_{i-1} -> P_{i+1} on the left side
    bool has_top = i - 1 >= 1;
    // On the right side the walks multiply from the other end, so the
    // initial and final labels are the reversed words; the vertical label
    // (i-1|i|i+1) is the same on both sides.
    auto lab = [&](int a, int b) {
        return right_side ? std::array<int, 3>{b, a, 0} : std::array<int, 3>{a, b, 0};
    };
    CellDiagram dg;
    dg.nodes.push_back({i, 2 - 2 * p, 2 * p});
    std::vector<int> top(p - 1, -1), bot(p - 1, -1);
    for (int c = 0; c <= p - 2; ++c) {
        int s = 3 - 2 * p + 2 * c;
        if (has_top) {
            top[c] = int(dg.nodes.size());
            dg.nodes.push_back({i - 1, s, 2 * p - 2 * c - (down ? 1 : 2)});
        }
        bot[c] = int(dg.nodes.size());
        dg.nodes.push_back({i + 1, s, 2 * p - 2 * c - (down ? 2 : 1)});
    }
    int fin = int(dg.nodes.size());
    dg.nodes.push_back({i, 0, 0});
    // Arrows out of the initial node, with the sign on the lower branch.
    if (has_top) dg.edges.push_back({0, top[0], lab(i, i - 1), 1});
    dg.edges.push_back({0, bot[0], lab(i, i + 1), -1});
    for (int c = 0; c + 1 <= p - 2; ++c) {
        if (has_top) dg.edges.push_back({top[c], top[c + 1], {i - 1, i - 1, 0}, 1});
        dg.edges.push_back({bot[c], bot[c + 1], {i + 1, i + 1, 0}, 1});
    }
    if (has_top)
        for (int c = 0; c <= p - 2; ++c)
            dg.edges.push_back(down ? CellEdge{top[c], bot[c], {i - 1, i + 1, 0}, 1}
                                    : CellEdge{bot[c], top[c], {i - 1, i + 1, 0}, 1});
    if (has_top) dg.edges.push_back({top[p - 2], fin, lab(i - 1, i), 1});
    dg.edges.push_back({bot[p - 2], fin, lab(i + 1, i), 1});
    return dg;
}

namespace detail {

inline NYResolution finish_resolution(const ZigzagAlgebra& A, CellDiagram dg, int i,
                                      bool right_side, int lambda) {
    NYResolution r;
    r.diagram = std::move(dg);
    r.i = i;
    r.lambda = lambda;
    r.right_side = right_side;
    r.mod = compile(A, lambda, r.diagram, right_side);
    r.smp = simple(A, lambda, i, right_side);
    auto off = node_offsets(A, r.diagram, right_side);
    int fin = int(r.diagram.nodes.size()) - 1;
    r.aug = FpMat(1, r.mod.dim(), A.p);
    r.aug(0, off[fin] + head_slot(A, i, right_side)) = 1;
    return r;
}

}  // namespace detail

inline NYResolution ny_resolution(const ZigzagAlgebra& A, int lambda, int i,
                                  bool right_side) {
    return detail::finish_resolution(A, ny_diagram(A.p, A.n, i, right_side, lambda), i,
                                     right_side, lambda);
}

// Replacement of the top simple: a single row of P_{n-1} copies feeding the
// final P_n.  The connecting word from the row into P_n is annihilated by
// the differential only when the parameter matches the side (left: lambda=0,
// right: lambda=1, the tau transport of the left one); for the complementary
// parameter no such two-row replacement exists and the constructor picks the
// valid parameter for the requested side.
inline NYResolution ln_resolution(const ZigzagAlgebra& A, bool right_side) {
    int p = A.p, n = A.n;
    int lambda = right_side ? 1 : 0;
    CellDiagram dg;
    for (int c = 0; c <= p - 2; ++c) dg.nodes.push_back({n - 1, 3 - 2 * p + 2 * c, p - 1 - c});
    dg.nodes.push_back({n, 0, 0});
    for (int c = 0; c + 1 <= p - 2; ++c)
        dg.edges.push_back({c, c + 1, {n - 1, n - 1, 0}, 1});
    dg.edges.push_back({p - 2, p - 1,
                        right_side ? std::array<int, 3>{n, n - 1, 0}
                                   : std::array<int, 3>{n - 1, n, 0},
                        1});
    return detail::finish_resolution(A, dg, n, right_side, lambda);
}

// Cell replacement of L_{i+1}[1]{2p-1+off} for lambda = 1 (left side): a row
// of P_{i+1} copies splitting through P_i (+) P_{i+2} and rejoining into a
// second P_{i+1} row.  Node order: left row 0..p-2, then P_i, P_{i+2}, then
// right row.  off = 0 is the source of the psi map; off = 2-2p is the target
// of the phi map.
inline CellDiagram hook_diagram(int p, int n, int i, int off) {
    if (i < 1 || i + 2 > n) throw std::invalid_argument("hook_diagram: index range");
    CellDiagram dg;
    for (int c = 0; c <= p - 2; ++c)
        dg.nodes.push_back({i + 1, -2 * p + 3 + 2 * c + off, 2 * p + 2 - c});
    int ni = p - 1, nii = p;
    dg.nodes.push_back({i, off, p + 3});
    dg.nodes.push_back({i + 2, off, p + 2});
    for (int c = 0; c <= p - 2; ++c) dg.nodes.push_back({i + 1, 1 + 2 * c + off, p + 1 - c});
    for (int c = 0; c + 1 <= p - 2; ++c) {
        dg.edges.push_back({c, c + 1, {i + 1, i + 1, 0}, 1});
        dg.edges.push_back({p + 1 + c, p + 2 + c, {i + 1, i + 1, 0}, 1});
    }
    dg.edges.push_back({p - 2, nii, {i + 1, i + 2, 0}, -1});
    dg.edges.push_back({p - 2, ni, {i + 1, i, 0}, 1});
    dg.edges.push_back({ni, nii, {i, i + 2, 0}, 1});
    dg.edges.push_back({nii, p + 1, {i + 2, i + 1, 0}, 1});
    dg.edges.push_back({ni, p + 1, {i, i + 1, 0}, 1});
    return dg;
}

struct AppendixMap {
    Mod src, tgt;  // compiled cell replacements
    FpMat m;       // the chain map between them (internal degree 0)
};

inline ModMap appendix_map(const AppendixMap& a) { return {&a.src, &a.tgt, a.m, 0}; }

// psi: L_{i+1}[1]{2p-1} -> L_i for lambda = 1, the identity on each P_{i+1}
// copy of the first row and zero elsewhere.
inline AppendixMap psi_map(const ZigzagAlgebra& A, int i) {
    if (i < 1 || i > A.n - 2) throw std::invalid_argument("psi_map: index range");
    int p = A.p;
    AppendixMap r;
    CellDiagram sdg = hook_diagram(p, A.n, i, 0);
    CellDiagram tdg = ny_diagram(p, A.n, i, false, 1);
    r.src = compile(A, 1, sdg);
    r.tgt = compile(A, 1, tdg);
    auto soff = detail::node_offsets(A, sdg, false);
    auto toff = detail::node_offsets(A, tdg, false);
    r.m = FpMat(r.tgt.dim(), r.src.dim(), p);
    bool has_top = i - 1 >= 1;
    int nd = int(detail::node_basis(A, i + 1, false).size());
    for (int c = 0; c <= p - 2; ++c) {
        // source left-row node c, target P_{i+1} node of column c
        int tnode = has_top ? 2 + 2 * c : 1 + c;
        for (int x = 0; x < nd; ++x) r.m(toff[tnode] + x, soff[c] + x) = 1;
    }
    // Commuting with the connecting words forces the identity on the P_i
    // node in degree zero as well.
    int ndi = int(detail::node_basis(A, i, false).size());
    int sni = p - 1, tfin = int(tdg.nodes.size()) - 1;
    for (int x = 0; x < ndi; ++x) r.m(toff[tfin] + x, soff[sni] + x) = 1;
    return r;
}

// phi: L_i -> L_{i+1}[1]{1} for lambda = 1, assembled from its printed
// component list; every denominator is a factorial (k+1)! with k <= p-2,
// invertible mod p (asserted).
inline AppendixMap phi_map(const ZigzagAlgebra& A, int i) {
    if (i < 1 || i > A.n - 2) throw std::invalid_argument("phi_map: index range");
    int p = A.p;
    AppendixMap r;
    CellDiagram sdg = ny_diagram(p, A.n, i, false, 1);
    CellDiagram tdg = hook_diagram(p, A.n, i, 2 - 2 * p);
    r.src = compile(A, 1, sdg);
    r.tgt = compile(A, 1, tdg);
    auto soff = detail::node_offsets(A, sdg, false);
    auto toff = detail::node_offsets(A, tdg, false);
    r.m = FpMat(r.tgt.dim(), r.src.dim(), p);

    auto fact = [&](int k) {
        Fp f(1, p);
        for (int t = 2; t <= k; ++t) f = f * Fp(t, p);
        return f;
    };
    auto inv_fact = [&](int k) {
        Fp f = fact(k);
        if (!f.v) throw std::logic_error("phi_map: non-invertible factorial");
        return f.inverse();
    };
    auto sgn = [&](int e) { return Fp(e % 2 ? p - 1 : 1, p); };

    // coeff * right multiplication by the basis element (a -> b, k), from
    // source node sn to target node tn; skipped when the element vanishes.
    auto add = [&](int sn, int tn, int a, int b, int k, Fp coeff) {
        if (!coeff.v) return;
        auto it = A.index_of.find({a, b, k});
        if (it == A.index_of.end()) return;
        int y = it->second;
        auto sb = detail::node_basis(A, sdg.nodes[sn].P, false);
        auto tb = detail::node_basis(A, tdg.nodes[tn].P, false);
        for (size_t x = 0; x < sb.size(); ++x) {
            auto prod = A.mult_basis(sb[x], y);
            if (!prod) continue;
            for (size_t z = 0; z < tb.size(); ++z)
                if (tb[z] == *prod) {
                    Fp cur(r.m(toff[tn] + int(z), soff[sn] + int(x)), p);
                    r.m(toff[tn] + int(z), soff[sn] + int(x)) = uint8_t((cur + coeff).v);
                }
        }
    };

    bool has_top = i - 1 >= 1;
    // source node indices (see ny_diagram order); appendix index k counts
    // columns from the right, so column c corresponds to k = p-2-c.
    auto src_top = [&](int k) { return 1 + 2 * (p - 2 - k); };
    auto src_bot = [&](int k) { return has_top ? 2 + 2 * (p - 2 - k) : 1 + (p - 2 - k); };
    int src_first = 0, src_final = int(sdg.nodes.size()) - 1;
    int tgt_pi = p - 1, tgt_pii = p;
    auto tgt_right = [&](int j) { return p + 1 + j; };

    add(src_first, tgt_pi, i, i, 0, Fp(1, p));  // gamma
    for (int j = 0; j <= p - 2; ++j)            // d_j
        add(src_final, tgt_right(j), i, i + 1, p - 2 - j, sgn(j + 1) * fact(p - j - 2));
    add(src_final, tgt_pii, i, i + 2, p - 2, Fp(p - 1, p));  // b
    for (int k = 0; k <= p - 2; ++k) {
        for (int j = 0; j <= p - 3 - k; ++j)  // p_{k,j}
            add(src_bot(k), tgt_right(j), i + 1, i + 1, p - j - k - 2,
                sgn(k + j) * fact(p - 2 - j) * inv_fact(k + 1));
        add(src_bot(k), tgt_right(p - 2 - k), i + 1, i + 1, 0, Fp(p - 1, p));
    }
    for (int k = 0; k <= p - 3; ++k)  // m_k
        add(src_bot(k), tgt_pii, i + 1, i + 2, p - k - 2, sgn(k) * inv_fact(k + 1));
    add(src_bot(p - 2), tgt_pii, i + 1, i + 2, 0, Fp(p - 1, p));   // m_{p-2}
    add(src_bot(p - 2), tgt_pi, i + 1, i, 0, Fp(2 % p, p));        // n_{p-2}
    if (has_top) {
        for (int k = 0; k <= p - 2; ++k)
            for (int j = 0; j <= p - 3 - k; ++j)  // h_{k,j}
                add(src_top(k), tgt_right(j), i - 1, i + 1, p - j - k - 3,
                    sgn(k + 1) * Fp(k % p, p) * inv_fact(k + 1) * inv_fact(j + 1));
        for (int k = 1; k <= p - 3; ++k)  // f_k
            add(src_top(k), tgt_pii, i - 1, i + 2, p - k - 3,
                sgn(k + 1) * Fp(k % p, p) * inv_fact(k + 1));
        add(src_top(p - 2), tgt_pi, i - 1, i, 0, Fp(2 % p, p));  // g_{p-2}
    }
    return r;
}

}  // namespace pdgzz
