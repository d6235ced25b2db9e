// Finite graded p-complexes over F_p: a graded space with a degree-2
// operator d satisfying d^p = 0.  Provides slash (Mayer) homology,
// decomposition into the indecomposables V(j,b) (j+1 basis vectors in
// degrees b, b+2, ..., b+2j, consecutive chain), symbols in O_p, tensor
// products, homological/grading shifts, cones, and null-homotopy tests.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "arith.hpp"
#include "fpmat.hpp"

namespace pdgzz {

struct PComplex {
    int p = 0;
    std::vector<int> deg;  // q-degree of each basis vector
    FpMat d;               // column j |-> sum_i d(i,j) e_i

    PComplex() = default;
    PComplex(int prime, std::vector<int> degrees)
        : p(prime), deg(std::move(degrees)), d(int(deg.size()), int(deg.size()), prime) {}

    int dim() const { return int(deg.size()); }

    std::map<int, int> dims() const {
        std::map<int, int> m;
        for (int x : deg) m[x]++;
        return m;
    }
};

// The (j+1)-dimensional indecomposable with bottom degree b.
inline PComplex vtilde(int p, int j, int b) {
    if (j < 0 || j > p - 1) throw std::invalid_argument("vtilde: need 0 <= j <= p-1");
    std::vector<int> degs(j + 1);
    for (int k = 0; k <= j; ++k) degs[k] = b + 2 * k;
    PComplex c(p, degs);
    for (int k = 0; k < j; ++k) c.d(k + 1, k) = 1;
    return c;
}

// Balanced alias: degrees -j, -j+2, ..., j.
inline PComplex vtilde_balanced(int p, int j) { return vtilde(p, j, -j); }

struct Violation {
    std::string what;
    int degree = 0;
};

// Checks: d homogeneous of degree +2, and d^p = 0.
inline std::optional<Violation> validate(const PComplex& c) {
    for (int j = 0; j < c.dim(); ++j)
        for (int i = 0; i < c.dim(); ++i)
            if (c.d(i, j) && c.deg[i] != c.deg[j] + 2)
                return Violation{"differential entry of degree != 2", c.deg[j]};
    if (!c.d.pow(c.p).is_zero()) {
        for (int j = 0; j < c.dim(); ++j) {
            FpMat col(c.dim(), 1, c.p);
            col(j, 0) = 1;
            if (!(c.d.pow(c.p) * col).is_zero()) return Violation{"d^p != 0", c.deg[j]};
        }
        return Violation{"d^p != 0", 0};
    }
    return std::nullopt;
}

// rank of d^k restricted to the degree-dg slot (k = 0 gives the dimension).
inline int restricted_rank(const PComplex& c, int k, int dg) {
    if (k == 0) {
        int n = 0;
        for (int x : c.deg) n += (x == dg);
        return n;
    }
    FpMat dk = c.d.pow(k);
    std::vector<int> cols;
    for (int j = 0; j < c.dim(); ++j)
        if (c.deg[j] == dg) cols.push_back(j);
    FpMat m(c.dim(), int(cols.size()), c.p);
    for (size_t cj = 0; cj < cols.size(); ++cj)
        for (int i = 0; i < c.dim(); ++i) m(i, int(cj)) = dk(i, cols[cj]);
    return m.rank();
}

// H_{/k} = ker d^k / im d^{p-k}, reported per degree (zero entries omitted).
inline std::map<int, int> slash_homology(const PComplex& c, int k) {
    if (k < 1 || k > c.p - 1) throw std::invalid_argument("slash_homology: k out of range");
    std::map<int, int> out;
    std::map<int, int> dm = c.dims();
    for (auto& [dg, n] : dm) {
        int kerdim = n - restricted_rank(c, k, dg);
        int imdim = restricted_rank(c, c.p - k, dg - 2 * (c.p - k));
        int h = kerdim - imdim;
        if (h) out[dg] = h;
    }
    return out;
}

// Multiset of summands (j, b): graded Jordan type of the nilpotent d,
// via rank differences of restricted powers.
struct Decomposition {
    std::map<std::pair<int, int>, int> summands;  // (j, b) -> multiplicity

    int total_dim() const {
        int n = 0;
        for (auto& [jb, m] : summands) n += m * (jb.first + 1);
        return n;
    }
    friend bool operator==(const Decomposition& a, const Decomposition& b) {
        return a.summands == b.summands;
    }
};

inline Decomposition decompose(const PComplex& c) {
    // S_k(d) := rank d^k|_d - rank d^{k+1}|_d counts summands (k+t, d-2t), t >= 0;
    // so mult(j, b) = S_j(b) - S_{j+1}(b-2).
    std::map<int, int> dm = c.dims();
    auto S = [&](int k, int dg) {
        if (k > c.p) return 0;
        return restricted_rank(c, k, dg) - restricted_rank(c, k + 1, dg);
    };
    Decomposition out;
    for (auto& [dg, n] : dm) {
        for (int j = 0; j <= c.p - 1; ++j) {
            int m = S(j, dg) - S(j + 1, dg - 2);
            if (m < 0) throw std::logic_error("decompose: negative multiplicity");
            if (m) out.summands[{j, dg}] += m;
        }
    }
    if (out.total_dim() != c.dim()) throw std::logic_error("decompose: dimension mismatch");
    return out;
}

// Symbol in O_p: contractible summands (j = p-1) contribute 0; V(j,b)
// contributes q^b (1 + q^2 + ... + q^{2j}).
inline CycInt symbol(const PComplex& c) {
    Decomposition dec = decompose(c);
    LaurentPoly s;
    for (auto& [jb, m] : dec.summands) {
        auto [j, b] = jb;
        if (j == c.p - 1) continue;
        for (int k = 0; k <= j; ++k) s.add_term(b + 2 * k, m);
    }
    return CycInt(c.p, s);
}

inline bool is_acyclic(const PComplex& c) {
    Decomposition dec = decompose(c);
    bool only_free = true;
    for (auto& [jb, m] : dec.summands)
        if (jb.first != c.p - 1) only_free = false;
    // Cross-check against vanishing of every slash homology.
    bool slash_vanish = true;
    for (int k = 1; k <= c.p - 1; ++k)
        if (!slash_homology(c, k).empty()) slash_vanish = false;
    if (only_free != slash_vanish) throw std::logic_error("is_acyclic: criteria disagree");
    return only_free;
}

inline PComplex direct_sum(const PComplex& a, const PComplex& b) {
    PComplex c(a.p, {});
    c.deg = a.deg;
    c.deg.insert(c.deg.end(), b.deg.begin(), b.deg.end());
    c.d = FpMat(c.dim(), c.dim(), a.p);
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) c.d(i, j) = a.d(i, j);
    for (int i = 0; i < b.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j) c.d(a.dim() + i, a.dim() + j) = b.d(i, j);
    return c;
}

// d(x (x) y) = dx (x) y + x (x) dy; no signs in the p-DG convention, and
// d^p = 0 follows from the freshman's dream in characteristic p.
inline PComplex tensor(const PComplex& a, const PComplex& b) {
    PComplex c(a.p, {});
    c.deg.resize(size_t(a.dim()) * b.dim());
    auto idx = [&](int i, int j) { return i * b.dim() + j; };
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j) c.deg[idx(i, j)] = a.deg[i] + b.deg[j];
    c.d = FpMat(c.dim(), c.dim(), a.p);
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j) {
            for (int i2 = 0; i2 < a.dim(); ++i2)
                if (a.d(i2, i)) c.d(idx(i2, j), idx(i, j)) = a.d(i2, i);
            for (int j2 = 0; j2 < b.dim(); ++j2)
                if (b.d(j2, j)) c.d(idx(i, j2), idx(i, j)) = b.d(j2, j);
        }
    return c;
}

inline PComplex grade_shift(const PComplex& c, int l) {
    PComplex r = c;
    for (int& x : r.deg) x += l;
    return r;
}

// [h]{l}: [1] tensors with V(p-2, -2p+2) (= V~_{p-2}{-p}), [-1] with
// V(p-2, 2); {l} translates degrees.  [1][-1] = id only up to contractibles.
inline PComplex shift(const PComplex& c, int h, int l) {
    PComplex r = c;
    for (; h > 0; --h) r = tensor(r, vtilde(c.p, c.p - 2, -2 * c.p + 2));
    for (; h < 0; ++h) r = tensor(r, vtilde(c.p, c.p - 2, 2));
    return grade_shift(r, l);
}

struct PMap {
    PComplex src, tgt;
    FpMat m;       // tgt.dim x src.dim
    int qdeg = 0;  // m(i,j) != 0 requires tgt.deg[i] == src.deg[j] + qdeg

    bool degree_ok() const {
        for (int i = 0; i < tgt.dim(); ++i)
            for (int j = 0; j < src.dim(); ++j)
                if (m(i, j) && tgt.deg[i] != src.deg[j] + qdeg) return false;
        return true;
    }
    bool is_chain_map() const { return degree_ok() && (tgt.d * m - m * src.d).is_zero(); }
};

// cone(f): M{2-2p} = ... = M{-2} --(-f)--> N{0}.
inline PComplex cone(const PMap& f) {
    if (!f.is_chain_map()) throw std::invalid_argument("cone: not a chain map");
    int p = f.src.p, nm = f.src.dim(), nn = f.tgt.dim();
    PComplex c(p, {});
    for (int k = p - 1; k >= 1; --k)
        for (int x : f.src.deg) c.deg.push_back(x - 2 * k);
    for (int x : f.tgt.deg) c.deg.push_back(x);
    c.d = FpMat(c.dim(), c.dim(), p);
    auto mslot = [&](int k) { return (p - 1 - k) * nm; };  // copy M{-2k}
    for (int k = p - 1; k >= 1; --k) {
        for (int i = 0; i < nm; ++i)
            for (int j = 0; j < nm; ++j)
                if (f.src.d(i, j)) c.d(mslot(k) + i, mslot(k) + j) = f.src.d(i, j);
        if (k > 1)
            for (int i = 0; i < nm; ++i) c.d(mslot(k - 1) + i, mslot(k) + i) = 1;
    }
    int noff = (p - 1) * nm;
    for (int i = 0; i < nn; ++i)
        for (int j = 0; j < nn; ++j)
            if (f.tgt.d(i, j)) c.d(noff + i, noff + j) = f.tgt.d(i, j);
    for (int i = 0; i < nn; ++i)
        for (int j = 0; j < nm; ++j)
            if (f.m(i, j)) c.d(noff + i, mslot(1) + j) = uint8_t((p - f.m(i, j)) % p);
    return c;
}

// cocone(f): M{0} --(-f)--> N{2} = ... = N{2p-2}.
inline PComplex cocone(const PMap& f) {
    if (!f.is_chain_map()) throw std::invalid_argument("cocone: not a chain map");
    int p = f.src.p, nm = f.src.dim(), nn = f.tgt.dim();
    PComplex c(p, {});
    for (int x : f.src.deg) c.deg.push_back(x);
    for (int k = 1; k <= p - 1; ++k)
        for (int x : f.tgt.deg) c.deg.push_back(x + 2 * k);
    c.d = FpMat(c.dim(), c.dim(), p);
    auto nslot = [&](int k) { return nm + (k - 1) * nn; };  // copy N{2k}
    for (int i = 0; i < nm; ++i)
        for (int j = 0; j < nm; ++j)
            if (f.src.d(i, j)) c.d(i, j) = f.src.d(i, j);
    for (int i = 0; i < nn; ++i)
        for (int j = 0; j < nm; ++j)
            if (f.m(i, j)) c.d(nslot(1) + i, j) = uint8_t((p - f.m(i, j)) % p);
    for (int k = 1; k <= p - 1; ++k) {
        for (int i = 0; i < nn; ++i)
            for (int j = 0; j < nn; ++j)
                if (f.tgt.d(i, j)) c.d(nslot(k) + i, nslot(k) + j) = f.tgt.d(i, j);
        if (k < p - 1)
            for (int i = 0; i < nn; ++i) c.d(nslot(k + 1) + i, nslot(k) + i) = 1;
    }
    return c;
}

inline bool is_quasi_iso(const PMap& f) { return is_acyclic(cone(f)); }

// Positions (i, j) with tgt.deg[i] - src.deg[j] == t: a basis of the
// degree-t component of the internal hom.
inline std::vector<std::pair<int, int>> hom_component(const PComplex& src, const PComplex& tgt,
                                                      int t) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < tgt.dim(); ++i)
        for (int j = 0; j < src.dim(); ++j)
            if (tgt.deg[i] - src.deg[j] == t) out.emplace_back(i, j);
    return out;
}

// f is null-homotopic iff f = (hom differential)^{p-1} h for some h of
// q-degree 2-2p, where the hom differential is h |-> d_N h - h d_M.
inline bool is_null_homotopic(const PMap& f) {
    if (f.qdeg != 0 || !f.is_chain_map())
        throw std::invalid_argument("is_null_homotopic: need a qdeg-0 chain map");
    int p = f.src.p;
    auto lo = hom_component(f.src, f.tgt, 2 - 2 * p);
    auto hi = hom_component(f.src, f.tgt, 0);
    if (hi.empty()) return true;
    // Column k of op = (d_N (.) - (.) d_M)^{p-1} applied to the k-th basis map.
    FpMat op(int(hi.size()), int(lo.size()), p);
    for (size_t k = 0; k < lo.size(); ++k) {
        FpMat h(f.tgt.dim(), f.src.dim(), p);
        h(lo[k].first, lo[k].second) = 1;
        for (int it = 0; it < p - 1; ++it) h = f.tgt.d * h - h * f.src.d;
        for (size_t r = 0; r < hi.size(); ++r) op(int(r), int(k)) = h(hi[r].first, hi[r].second);
    }
    FpMat rhs(int(hi.size()), 1, p);
    for (size_t r = 0; r < hi.size(); ++r) rhs(int(r), 0) = f.m(hi[r].first, hi[r].second);
    return op.solve(rhs).has_value();
}

// Explicit Jordan chain basis for the nilpotent d: each block is a column
// run u, du, ..., d^j u.  Independent of the rank-difference computation in
// decompose(), so the two cross-check each other.
struct ChainBasis {
    std::vector<std::array<int, 3>> blocks;  // (j, bottom degree, first column in g)
    FpMat g;                                 // invertible; columns grouped by block

    Decomposition as_decomposition() const {
        Decomposition out;
        for (auto& [j, b, c] : blocks) out.summands[{j, b}]++;
        return out;
    }
};

inline ChainBasis decompose_basis(const PComplex& c) {
    ChainBasis out;
    out.g = FpMat(c.dim(), c.dim(), c.p);
    int col = 0;
    std::vector<FpMat> dpow(c.p + 1, FpMat::identity(c.dim(), c.p));
    for (int k = 1; k <= c.p; ++k) dpow[k] = dpow[k - 1] * c.d;

    // Spanning set of (ker d  cap  im d^j) in a fixed degree, as columns.
    auto ker_cap_im = [&](int j, int dg) {
        std::vector<int> srcs;
        for (int s = 0; s < c.dim(); ++s)
            if (c.deg[s] == dg - 2 * j) srcs.push_back(s);
        FpMat ij(c.dim(), int(srcs.size()), c.p);
        for (size_t s = 0; s < srcs.size(); ++s)
            for (int i = 0; i < c.dim(); ++i) ij(i, int(s)) = dpow[j](i, srcs[s]);
        FpMat y = (c.d * ij).nullspace();
        return ij * y;
    };

    std::map<int, int> dm = c.dims();
    // Per degree, tops of longer chains already span ker d cap im d^{j+1};
    // extend to ker d cap im d^j and lift each new top w to u with d^j u = w.
    std::map<int, RowSpan> tops;
    for (auto& [dg, n] : dm) tops.emplace(dg, RowSpan(c.dim(), c.p));
    for (int j = c.p - 1; j >= 0; --j) {
        for (auto& [dg, n] : dm) {
            RowSpan& S = tops.at(dg);
            FpMat W = ker_cap_im(j, dg);
            for (int wc = 0; wc < W.cols; ++wc) {
                std::vector<uint8_t> w(c.dim());
                for (int i = 0; i < c.dim(); ++i) w[i] = W(i, wc);
                if (!S.insert(w)) continue;
                // Lift: solve d^j u = w with u homogeneous of degree dg - 2j.
                std::vector<int> srcs;
                for (int s = 0; s < c.dim(); ++s)
                    if (c.deg[s] == dg - 2 * j) srcs.push_back(s);
                FpMat rhs(c.dim(), 1, c.p);
                for (int i = 0; i < c.dim(); ++i) rhs(i, 0) = W(i, wc);
                FpMat sub(c.dim(), int(srcs.size()), c.p);
                for (size_t s = 0; s < srcs.size(); ++s)
                    for (int i = 0; i < c.dim(); ++i) sub(i, int(s)) = dpow[j](i, srcs[s]);
                auto sol = sub.solve(rhs);
                if (!sol) throw std::logic_error("decompose_basis: lift failed");
                FpMat u(c.dim(), 1, c.p);
                for (size_t s = 0; s < srcs.size(); ++s) u(srcs[s], 0) = (*sol)(int(s), 0);
                out.blocks.push_back({j, dg - 2 * j, col});
                for (int k = 0; k <= j; ++k) {
                    FpMat v = dpow[k] * u;
                    for (int i = 0; i < c.dim(); ++i) out.g(i, col) = v(i, 0);
                    ++col;
                }
            }
        }
    }
    if (col != c.dim() || out.g.rank() != c.dim())
        throw std::logic_error("decompose_basis: not a basis");
    return out;
}

// Explicit quasi-isomorphism X -> Y when the non-contractible parts of the
// two decompositions agree: identity on matched blocks, zero on free ones.
inline std::optional<PMap> standard_quasi_iso(const PComplex& x, const PComplex& y) {
    ChainBasis bx = decompose_basis(x), by = decompose_basis(y);
    std::map<std::pair<int, int>, std::vector<int>> ycols;  // (j,b) -> block starts
    for (auto& [j, b, c] : by.blocks)
        if (j != y.p - 1) ycols[{j, b}].push_back(c);
    // Map written in the chain bases: match stable blocks one-to-one.
    FpMat m0(y.dim(), x.dim(), x.p);
    for (auto& [j, b, c] : bx.blocks) {
        if (j == x.p - 1) continue;
        auto it = ycols.find({j, b});
        if (it == ycols.end() || it->second.empty()) return std::nullopt;
        int yc = it->second.back();
        it->second.pop_back();
        for (int k = 0; k <= j; ++k) m0(yc + k, c + k) = 1;
    }
    for (auto& [jb, v] : ycols)
        if (!v.empty()) return std::nullopt;
    // Back to the standard bases: m = g_y m0 g_x^{-1}, via g_x^T m^T = (g_y m0)^T.
    auto mt = bx.g.transpose().solve((by.g * m0).transpose());
    if (!mt) return std::nullopt;
    PMap f{x, y, mt->transpose(), 0};
    if (!f.is_chain_map() || !is_acyclic(cone(f)))
        throw std::logic_error("standard_quasi_iso: construction failed");
    return f;
}

// iota: V~_0 -> V~_{p-2} (x) V~_{p-2} (balanced), u_0 |-> sum (-1)^i v_i (x) v_{p-2-i}.
// Quotient of c by a homogeneous d-stable span.  Returns the quotient
// complex together with the projection matrix onto it.
inline std::pair<PComplex, FpMat> quotient_complex(const PComplex& c, const RowSpan& rs) {
    int n = c.dim(), p = c.p;
    if (rs.cols != n) throw std::invalid_argument("quotient_complex: size mismatch");
    // Homogeneity of the span, and free coordinates.
    std::vector<bool> piv(n, false);
    for (size_t r = 0; r < rs.rows.size(); ++r) {
        piv[rs.pivot[r]] = true;
        for (int j = 0; j < n; ++j)
            if (rs.rows[r][j] && c.deg[j] != c.deg[rs.pivot[r]])
                throw std::invalid_argument("quotient_complex: span not homogeneous");
    }
    std::vector<int> free;
    for (int j = 0; j < n; ++j)
        if (!piv[j]) free.push_back(j);
    int qd = int(free.size());
    FpMat proj(qd, n, p);
    for (int j = 0; j < n; ++j) {
        std::vector<uint8_t> v(n, 0);
        v[j] = 1;
        rs.reduce(v);
        for (int t = 0; t < qd; ++t) proj(t, j) = v[free[t]];
    }
    // Stability of the span under d.
    for (auto& row : rs.rows) {
        std::vector<uint8_t> v(row.begin(), row.end());
        SparseOp dop(c.d);
        auto w = dop.apply(v);
        if (rs.reduce(w) >= 0) throw std::invalid_argument("quotient_complex: span not d-stable");
    }
    PComplex q;
    q.p = p;
    for (int t = 0; t < qd; ++t) q.deg.push_back(c.deg[free[t]]);
    FpMat dsel(n, qd, p);
    for (int t = 0; t < qd; ++t)
        for (int i = 0; i < n; ++i) dsel(i, t) = c.d(i, free[t]);
    q.d = proj * dsel;
    if (auto v = validate(q)) throw std::logic_error("quotient_complex: " + v->what);
    return {q, proj};
}

// Graded dimension of the degree-t stable maps between two p-complexes:
// chain maps modulo maps homotopic to zero through the p-th power rule.
inline int stable_hom_dim(const PComplex& v, const PComplex& w, int t) {
    int p = v.p;
    PComplex h;  // hom complex, basis (i, j) ~ w_i (x) v_j^*
    h.p = p;
    std::vector<std::pair<int, int>> bas;
    for (int i = 0; i < w.dim(); ++i)
        for (int j = 0; j < v.dim(); ++j) {
            bas.push_back({i, j});
            h.deg.push_back(w.deg[i] - v.deg[j]);
        }
    int n = int(bas.size());
    h.d = FpMat(n, n, p);
    for (int t2 = 0; t2 < n; ++t2) {
        auto [i, j] = bas[t2];
        for (int i2 = 0; i2 < w.dim(); ++i2)
            if (w.d(i2, i)) h.d.set(i2 * v.dim() + j, t2, w.d(i2, i));
        for (int j2 = 0; j2 < v.dim(); ++j2)
            if (v.d(j, j2)) h.d.set(i * v.dim() + j2, t2, p - v.d(j, j2));
    }
    // ker d at degree t, minus the image of d^{p-1} from degree t - 2(p-1).
    auto slot = [&](int dg) {
        std::vector<int> sel;
        for (int x = 0; x < n; ++x)
            if (h.deg[x] == dg) sel.push_back(x);
        return sel;
    };
    auto at = slot(t);
    if (at.empty()) return 0;
    int kd = int(at.size()) - restricted_rank(h, 1, t);
    FpMat dp = h.d.pow(p - 1);
    auto lo = slot(t - 2 * (p - 1));
    FpMat img(n, int(lo.size()), p);
    for (size_t cix = 0; cix < lo.size(); ++cix)
        for (int i = 0; i < n; ++i) img(i, int(cix)) = dp(i, lo[cix]);
    return kd - img.rank();
}

inline PMap iota(int p) {
    PMap f;
    f.src = vtilde(p, 0, 0);
    f.tgt = tensor(vtilde_balanced(p, p - 2), vtilde_balanced(p, p - 2));
    f.m = FpMat(f.tgt.dim(), 1, p);
    int n = p - 1;  // dim of each factor
    for (int i = 0; i <= p - 2; ++i) f.m.set(i * n + (p - 2 - i), 0, (i % 2 == 0) ? 1 : -1);
    f.qdeg = 0;
    return f;
}

}  // namespace pdgzz
