// The graded algebra A_n: vertices 1..n, arrows (i|i+1) and (i+1|i) in
// degree 1, subject to (i|i-1|i) = (i|i+1|i) for interior i and
// (1|2|1) = 0.  Basis of normal forms (i -> j, k): the monotone walk from
// vertex i to vertex j followed by k loops, with 0 <= k <= min(i,j) - 1;
// its degree is |i-j| + 2k.  The loop at vertex v is c_v = (v|v-1|v)
// (so c_1 = 0), and loops slide freely along arrows.
//
// The family of differentials d_lambda is determined by the Leibniz rule,
// d(i|i+1) = lambda (i|i+1) c_{i+1}, d(i+1|i) = (1-lambda) (i+1|i) c_i,
// d(e_i) = 0; on normal forms it acts by
//   d(i -> j, k) = (k + lambda (j-i)_+ + (1-lambda) (i-j)_+) (i -> j, k+1).
#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fpmat.hpp"

namespace pdgzz {

struct ZigzagAlgebra {
    int n = 0, p = 0;
    std::vector<std::array<int, 3>> basis;       // (src, tgt, loops)
    std::map<std::array<int, 3>, int> index_of;  // inverse lookup

    ZigzagAlgebra() = default;
    ZigzagAlgebra(int vertices, int prime) : n(vertices), p(prime) {
        if (vertices < 1) throw std::invalid_argument("ZigzagAlgebra: need n >= 1");
        if (!is_prime(prime)) throw std::invalid_argument("ZigzagAlgebra: p must be prime");
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 0; k <= std::min(i, j) - 1; ++k) {
                    index_of[{i, j, k}] = int(basis.size());
                    basis.push_back({i, j, k});
                }
    }

    int dim() const { return int(basis.size()); }
    int deg(int b) const {
        auto [i, j, k] = basis[b];
        return (i > j ? i - j : j - i) + 2 * k;
    }
    int src(int b) const { return basis[b][0]; }
    int tgt(int b) const { return basis[b][1]; }

    int idem(int i) const { return index_of.at({i, i, 0}); }
    // The loop c_i (throws for i = 1, where it is zero; use loop_or_zero).
    std::optional<int> loop(int i) const {
        auto it = index_of.find({i, i, 1});
        return it == index_of.end() ? std::nullopt : std::optional<int>(it->second);
    }
    // Index of the degree-1 arrow (i|j), |i-j| = 1.
    int arrow(int i, int j) const { return index_of.at({i, j, 0}); }

    // Product of two basis elements: at most one basis element, coeff 1.
    std::optional<int> mult_basis(int a, int b) const {
        auto [i, j, k] = basis[a];
        auto [j2, m, l] = basis[b];
        if (j != j2) return std::nullopt;
        int t = 0;  // extra loops created when the walk backtracks through j
        if (i < j && j > m) t = j - std::max(i, m);
        else if (i > j && j < m) t = std::min(i, m) - j;
        int loops = k + l + t;
        if (loops > std::min(i, m) - 1) {
            // Backtracking through vertex 1 hits the relation (1|2|1) = 0,
            // and excess loops die against the top of the local nilpotency.
            return std::nullopt;
        }
        return index_of.at({i, m, loops});
    }

    // x * y on coefficient column vectors (length dim()).
    FpMat multiply(const FpMat& x, const FpMat& y) const {
        FpMat r(dim(), 1, p);
        for (int a = 0; a < dim(); ++a) {
            if (!x(a, 0)) continue;
            for (int b = 0; b < dim(); ++b) {
                if (!y(b, 0)) continue;
                if (auto c = mult_basis(a, b))
                    r.set(*c, 0, r(*c, 0) + long(x(a, 0)) * y(b, 0));
            }
        }
        return r;
    }

    FpMat unit() const {
        FpMat r(dim(), 1, p);
        for (int i = 1; i <= n; ++i) r(idem(i), 0) = 1;
        return r;
    }
    FpMat basis_vec(int b) const {
        FpMat r(dim(), 1, p);
        r(b, 0) = 1;
        return r;
    }

    // Matrices of left/right multiplication by basis element b.
    FpMat left_mult(int b) const {
        FpMat m(dim(), dim(), p);
        for (int x = 0; x < dim(); ++x)
            if (auto c = mult_basis(b, x)) m(*c, x) = 1;
        return m;
    }
    FpMat right_mult(int b) const {
        FpMat m(dim(), dim(), p);
        for (int x = 0; x < dim(); ++x)
            if (auto c = mult_basis(x, b)) m(*c, x) = 1;
        return m;
    }

    // The differential d_lambda as a dim x dim matrix on coefficient vectors.
    FpMat differential(int lambda) const {
        FpMat d(dim(), dim(), p);
        for (int b = 0; b < dim(); ++b) {
            auto [i, j, k] = basis[b];
            if (k + 1 > std::min(i, j) - 1) continue;
            long coeff = k;
            if (j > i) coeff += long(lambda) * (j - i);
            if (i > j) coeff += long(1 - lambda) * (i - j);
            d.set(index_of.at({i, j, k + 1}), b, coeff);
        }
        return d;
    }

    // The anti-involution reversing paths: (i -> j, k) |-> (j -> i, k).
    // Intertwines d_lambda with d_{1-lambda}.
    int tau_basis(int b) const {
        auto [i, j, k] = basis[b];
        return index_of.at({j, i, k});
    }
    FpMat tau() const {
        FpMat m(dim(), dim(), p);
        for (int b = 0; b < dim(); ++b) m(tau_basis(b), b) = 1;
        return m;
    }
};

inline ZigzagAlgebra build_algebra(int n, int p) { return ZigzagAlgebra(n, p); }

// Residues lambda in F_p for which the two dual canonical basis vectors of
// weight zero in the fourth tensor power stay bar-invariant after base
// change to O_p; the three polynomial identities below are the
// coefficientwise conditions.  Solutions: {1} for p > 2, {0,1} for p = 2.
inline std::vector<int> lambda_constraints(int p) {
    std::vector<int> out;
    for (int l = 0; l < p; ++l) {
        auto m = [&](long x) { long r = x % p; return r < 0 ? r + p : r; };
        bool ok = m(2 * (1 + l * (3 - l))) == m((l + 3L * l) + ((1 - l) + (3 - l)));
        ok = ok && m(2 * ((1 - l) + (3L - l))) == m(4 + ((1 - l) * (1L - l) + (1 - l) * (3L - l)));
        ok = ok && m(2 * (l + 3L * l)) == m((long(l) * l + (l + 2L) * l) + 4);
        if (ok) out.push_back(l);
    }
    return out;
}

}  // namespace pdgzz
