// The Grothendieck lattice of the differential zigzag algebra over the
// cyclotomic quotient O_p: symbols of cell modules in the projective basis,
// classes of arbitrary compact modules through the RHOM pairing, the
// bar-semilinear Gram form, and decategorified matrices of the
// Temperley-Lieb and twist functors.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "pdgzz/functors.hpp"

namespace pdgzz {

using CycMatrix = std::vector<std::vector<CycInt>>;  // row-major, square

inline CycMatrix cyc_identity(int p, int n) {
    CycMatrix m(size_t(n), std::vector<CycInt>(size_t(n), CycInt::zero(p)));
    for (int i = 0; i < n; ++i) m[size_t(i)][size_t(i)] = CycInt::one(p);
    return m;
}

inline CycMatrix cyc_mul(const CycMatrix& a, const CycMatrix& b) {
    int n = int(a.size()), p = a[0][0].p;
    CycMatrix r(size_t(n), std::vector<CycInt>(size_t(n), CycInt::zero(p)));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                r[size_t(i)][size_t(j)] =
                    r[size_t(i)][size_t(j)] + a[size_t(i)][size_t(k)] * b[size_t(k)][size_t(j)];
    return r;
}

// K_0 vector in the basis [P_1], ..., [P_n].
struct K0Vector {
    int p = 0;
    std::vector<CycInt> c;

    K0Vector() = default;
    K0Vector(int prime, int n) : p(prime), c(size_t(n), CycInt::zero(prime)) {}

    int n() const { return int(c.size()); }
    friend K0Vector operator+(const K0Vector& a, const K0Vector& b) {
        K0Vector r = a;
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
        return r;
    }
    friend K0Vector operator-(const K0Vector& a, const K0Vector& b) {
        K0Vector r = a;
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
        return r;
    }
    friend K0Vector operator*(const CycInt& s, const K0Vector& a) {
        K0Vector r = a;
        for (auto& x : r.c) x = s * x;
        return r;
    }
    friend bool operator==(const K0Vector& a, const K0Vector& b) { return a.c == b.c; }
};

// Class of a cell module: each node P_v{s} contributes q^s [P_v].
inline K0Vector symbol_module(int p, int n, const CellDiagram& dg) {
    K0Vector v(p, n);
    for (auto& nd : dg.nodes)
        v.c[size_t(nd.P - 1)] = v.c[size_t(nd.P - 1)] + CycInt::q_power(p, nd.shift);
    return v;
}

// The underlying p-complex of the vertex-j slice e_j M of a left module.
inline PComplex vertex_slice(const Mod& M, int j) {
    std::vector<int> rows;
    for (int x = 0; x < M.dim(); ++x)
        if (M.lv[x] == j) rows.push_back(x);
    PComplex c(M.p, {});
    for (int x : rows) c.deg.push_back(M.deg[x]);
    c.d = FpMat(int(rows.size()), int(rows.size()), M.p);
    for (size_t a = 0; a < rows.size(); ++a)
        for (size_t b = 0; b < rows.size(); ++b) c.d(int(a), int(b)) = M.d(rows[a], rows[b]);
    return c;
}

// Gram matrix of the pairing: <[P_i],[P_j]> = graded dimension of e_i A e_j.
inline CycMatrix gram_matrix(const ZigzagAlgebra& A) {
    CycMatrix g = cyc_identity(A.p, A.n);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) {
            CycInt s = CycInt::zero(A.p);
            for (int b = 0; b < A.dim(); ++b)
                if (A.src(b) == i + 1 && A.tgt(b) == j + 1)
                    s = s + CycInt::q_power(A.p, A.deg(b));
            g[size_t(i)][size_t(j)] = s;
        }
    return g;
}

// Bar-semilinear pairing: conjugate linear in the first slot.
inline CycInt pairing(const CycMatrix& gram, const K0Vector& x, const K0Vector& y) {
    CycInt s = CycInt::zero(x.p);
    for (int i = 0; i < x.n(); ++i)
        for (int j = 0; j < y.n(); ++j)
            s = s + x.c[size_t(i)].bar() * gram[size_t(i)][size_t(j)] * y.c[size_t(j)];
    return s;
}

namespace detail {

using Rat = boost::multiprecision::cpp_rational;

// Exact solve of a square rational system; empty result if singular.
inline std::optional<std::vector<Rat>> solve_rational(std::vector<std::vector<Rat>> m,
                                                      std::vector<Rat> b) {
    int n = int(m.size());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (m[size_t(r)][size_t(col)] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        std::swap(m[size_t(piv)], m[size_t(col)]);
        std::swap(b[size_t(piv)], b[size_t(col)]);
        Rat d = m[size_t(col)][size_t(col)];
        for (int r = 0; r < n; ++r) {
            if (r == col || m[size_t(r)][size_t(col)] == 0) continue;
            Rat f = m[size_t(r)][size_t(col)] / d;
            for (int k = col; k < n; ++k)
                m[size_t(r)][size_t(k)] -= f * m[size_t(col)][size_t(k)];
            b[size_t(r)] -= f * b[size_t(col)];
        }
    }
    std::vector<Rat> x(size_t(n), Rat(0));
    for (int r = 0; r < n; ++r) x[size_t(r)] = b[size_t(r)] / m[size_t(r)][size_t(r)];
    return x;
}

// Coordinates of x in the free Z-basis 1, q, ..., q^{2p-3} of O_p.
inline std::vector<Int> cyc_coords(const CycInt& x) {
    std::vector<Int> out(size_t(2 * x.p - 2), Int(0));
    for (auto& [e, c] : x.rep.coeffs) out[size_t(e)] = c;
    return out;
}

}  // namespace detail

// Solve gram * x = v over O_p by unfolding into the free Z-basis; throws if
// the system has no O_p solution.
inline K0Vector gram_solve(const CycMatrix& gram, const K0Vector& v) {
    int p = v.p, n = v.n(), r = 2 * p - 2, N = n * r;
    std::vector<std::vector<detail::Rat>> m(size_t(N),
                                            std::vector<detail::Rat>(size_t(N), detail::Rat(0)));
    std::vector<detail::Rat> b(size_t(N), detail::Rat(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < r; ++k) {
                // Column (j,k): the image of q^k [P_j] under the Gram form.
                CycInt img = gram[size_t(i)][size_t(j)] * CycInt::q_power(p, k);
                auto co = detail::cyc_coords(img);
                for (int t = 0; t < r; ++t) m[size_t(i * r + t)][size_t(j * r + k)] = co[size_t(t)];
            }
    for (int i = 0; i < n; ++i) {
        auto co = detail::cyc_coords(v.c[size_t(i)]);
        for (int t = 0; t < r; ++t) b[size_t(i * r + t)] = co[size_t(t)];
    }
    auto x = detail::solve_rational(std::move(m), std::move(b));
    if (!x) throw std::logic_error("gram_solve: Gram matrix is singular");
    K0Vector out(p, n);
    for (int j = 0; j < n; ++j) {
        LaurentPoly rep;
        for (int k = 0; k < r; ++k) {
            detail::Rat val = (*x)[size_t(j * r + k)];
            if (boost::multiprecision::denominator(val) != 1)
                throw std::logic_error("gram_solve: solution not integral over O_p");
            rep.add_term(k, boost::multiprecision::numerator(val));
        }
        out.c[size_t(j)] = CycInt(p, rep);
    }
    return out;
}

// Class of an arbitrary compact left module: its pairings with the
// projectives are the symbols of the vertex slices, and the Gram form is
// inverted to land back in the projective basis.
inline K0Vector class_of_module(const ZigzagAlgebra& A, const Mod& M) {
    K0Vector v(A.p, A.n);
    for (int j = 1; j <= A.n; ++j) v.c[size_t(j - 1)] = symbol(vertex_slice(M, j));
    return gram_solve(gram_matrix(A), v);
}

// Classes of the simples through their cell replacements.
inline K0Vector simple_class(const ZigzagAlgebra& A, int lambda, int i) {
    if (i == A.n) return symbol_module(A.p, A.n, ln_resolution(A, false).diagram);
    return symbol_module(A.p, A.n, ny_resolution(A, lambda, i, false).diagram);
}

// Determinant by cofactor expansion (the matrices here are at most 6x6).
inline CycInt cyc_det(const CycMatrix& m) {
    int n = int(m.size()), p = m[0][0].p;
    if (n == 1) return m[0][0];
    CycInt s = CycInt::zero(p);
    for (int j = 0; j < n; ++j) {
        if (m[0][size_t(j)].is_zero()) continue;
        CycMatrix minor(size_t(n - 1), std::vector<CycInt>(size_t(n - 1), CycInt::zero(p)));
        for (int r = 1; r < n; ++r)
            for (int c = 0, t = 0; c < n; ++c) {
                if (c == j) continue;
                minor[size_t(r - 1)][size_t(t++)] = m[size_t(r)][size_t(c)];
            }
        CycInt term = m[0][size_t(j)] * cyc_det(minor);
        s = (j % 2 == 0) ? s + term : s - term;
    }
    return s;
}

// An element of O_p is a unit iff its resultant with Psi_p(q^2) is +-1:
// the resultant is the product of the element's values at the roots, an
// ordinary integer that must divide 1 when an inverse exists, and +-1
// certifies comaximality in Z[q] conversely.
inline bool cyc_is_unit(const CycInt& x) {
    using detail::Rat;
    // Psi_p(q^2) = 1 + q^2 + ... + q^{2p-2}.
    std::vector<Rat> f(size_t(2 * x.p - 1), Rat(0));
    for (int k = 0; k <= 2 * x.p - 2; k += 2) f[size_t(k)] = 1;
    std::vector<Rat> g(size_t(2 * x.p - 2), Rat(0));
    for (auto& [e, c] : x.rep.coeffs) g[size_t(e)] = Rat(c);
    while (!g.empty() && g.back() == 0) g.pop_back();
    if (g.empty()) return false;
    // Resultant via the Euclidean algorithm with exact rationals.
    Rat res(1);
    while (true) {
        int df = int(f.size()) - 1, dg = int(g.size()) - 1;
        if (dg == 0) {
            Rat c = g[0], acc(1);
            for (int k = 0; k < df; ++k) acc *= c;
            res *= acc;
            break;
        }
        // f mod g, tracking res(f,g) = lc(g)^{deg f - deg r} * (-1)^{df dg} res(g, r).
        std::vector<Rat> r = f;
        Rat lc = g[size_t(dg)];
        for (int k = df; k >= dg; --k) {
            Rat q = r[size_t(k)] / lc;
            if (q == 0) continue;
            for (int t = 0; t <= dg; ++t) r[size_t(k - dg + t)] -= q * g[size_t(t)];
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        if (r.empty()) return false;
        int dr = int(r.size()) - 1;
        Rat acc(1);
        for (int k = 0; k < df - dr; ++k) acc *= lc;
        res *= acc;
        if ((df % 2) && (dg % 2)) res = -res;
        f = std::move(g);
        g = std::move(r);
    }
    return res == 1 || res == -1;
}

inline bool gram_perfect(const ZigzagAlgebra& A) { return cyc_is_unit(cyc_det(gram_matrix(A))); }

// Decategorified TL generator in the projective basis: column j is
// symbol(cap complex of P_j, shifted) times [L_i].
inline CycMatrix u_matrix(const ZigzagAlgebra& A, int lambda, int i) {
    CycMatrix m = cyc_identity(A.p, A.n);
    K0Vector li = simple_class(A, lambda, i);
    for (int j = 1; j <= A.n; ++j) {
        CycInt s = symbol(tl_pfactor(A, lambda, i, projective(A, lambda, j, false)));
        K0Vector col = s * li;
        for (int r = 0; r < A.n; ++r) m[size_t(r)][size_t(j - 1)] = col.c[size_t(r)];
    }
    return m;
}

// Decategorified twists.  With the shift normalization used throughout this
// code ([M[1]] = -[M], so the TL circle is -q - q^{-1}), the class of the
// twist bimodule is [T_i] = Id + q u_i and [T'_i] = Id + q^{-1} u_i; these
// are mutually inverse over O_p because u^2 = -(q + q^{-1}) u.  Under the
// specialization O_p -> O_{2p} (q to a primitive 2p-th root, so q^p = -1)
// they become the familiar forms Id - q^{p+1} u_i and Id - q^{p-1} u_i.
inline CycMatrix t_matrix(const ZigzagAlgebra& A, int lambda, int i, bool inverse) {
    CycMatrix u = u_matrix(A, lambda, i);
    CycMatrix m = cyc_identity(A.p, A.n);
    CycInt f = CycInt::q_power(A.p, inverse ? 2 * A.p - 1 : 1);
    for (int r = 0; r < A.n; ++r)
        for (int c = 0; c < A.n; ++c)
            m[size_t(r)][size_t(c)] = m[size_t(r)][size_t(c)] + f * u[size_t(r)][size_t(c)];
    return m;
}

// Decategorification of a stored bimodule: columns are the classes of its
// values on the projectives.
inline CycMatrix decat(const ZigzagAlgebra& A, int lambda, const ResolvedBimodule& B) {
    CycMatrix m = cyc_identity(A.p, A.n);
    for (int j = 1; j <= A.n; ++j) {
        K0Vector col = class_of_module(A, apply_bimodule(B, projective(A, lambda, j, false)));
        for (int r = 0; r < A.n; ++r) m[size_t(r)][size_t(j - 1)] = col.c[size_t(r)];
    }
    return m;
}

// Conjugate a matrix in the projective basis into the basis of simple
// classes: columns of s are [L_1], ..., [L_n]; returns s^{-1} m s.
inline CycMatrix to_simple_basis(const ZigzagAlgebra& A, int lambda, const CycMatrix& m) {
    int p = A.p, n = A.n;
    CycMatrix s(size_t(n), std::vector<CycInt>(size_t(n), CycInt::zero(p)));
    for (int j = 1; j <= n; ++j) {
        K0Vector lj = simple_class(A, lambda, j);
        for (int r = 0; r < n; ++r) s[size_t(r)][size_t(j - 1)] = lj.c[size_t(r)];
    }
    CycMatrix ms = cyc_mul(m, s);
    // Solve s * x = ms column by column through the same unfolding as the
    // Gram system.
    CycMatrix out = cyc_identity(p, n);
    for (int j = 0; j < n; ++j) {
        K0Vector col(p, n);
        for (int r = 0; r < n; ++r) col.c[size_t(r)] = ms[size_t(r)][size_t(j)];
        K0Vector x = gram_solve(s, col);
        for (int r = 0; r < n; ++r) out[size_t(r)][size_t(j)] = x.c[size_t(r)];
    }
    return out;
}

}  // namespace pdgzz
