// Dense linear algebra over F_p: rank / RREF / kernel / solve, plus an
// incremental row-space (online echelon form) used for subspace closures.
// Entries are stored as uint8_t residues; p stays small (<= 251).
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "arith.hpp"

namespace pdgzz {

struct FpMat {
    int rows = 0, cols = 0, p = 0;
    std::vector<uint8_t> a;  // row major

    FpMat() = default;
    FpMat(int r, int c, int prime) : rows(r), cols(c), p(prime), a(size_t(r) * c, 0) {}

    static FpMat identity(int n, int prime) {
        FpMat m(n, n, prime);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    uint8_t& operator()(int i, int j) { return a[size_t(i) * cols + j]; }
    uint8_t operator()(int i, int j) const { return a[size_t(i) * cols + j]; }

    void set(int i, int j, long v) {
        long r = v % p;
        if (r < 0) r += p;
        (*this)(i, j) = uint8_t(r);
    }

    bool is_zero() const {
        for (uint8_t x : a)
            if (x) return false;
        return true;
    }

    friend bool operator==(const FpMat& x, const FpMat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.p == y.p && x.a == y.a;
    }

    friend FpMat operator+(const FpMat& x, const FpMat& y) {
        FpMat r(x.rows, x.cols, x.p);
        for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = uint8_t((x.a[i] + y.a[i]) % x.p);
        return r;
    }
    friend FpMat operator-(const FpMat& x, const FpMat& y) {
        FpMat r(x.rows, x.cols, x.p);
        for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = uint8_t((x.a[i] + x.p - y.a[i]) % x.p);
        return r;
    }
    friend FpMat operator*(const FpMat& x, const FpMat& y) {
        if (x.cols != y.rows) throw std::invalid_argument("FpMat: shape mismatch");
        FpMat r(x.rows, y.cols, x.p);
        for (int i = 0; i < x.rows; ++i) {
            uint32_t* acc = nullptr;
            std::vector<uint32_t> row(y.cols, 0);
            acc = row.data();
            for (int k = 0; k < x.cols; ++k) {
                uint32_t xv = x(i, k);
                if (!xv) continue;
                const uint8_t* yrow = &y.a[size_t(k) * y.cols];
                for (int j = 0; j < y.cols; ++j) acc[j] += xv * yrow[j];
                // xv*yv <= (p-1)^2 <= 62500; safe for ~68k accumulations.
                if ((k & 1023) == 1023)
                    for (int j = 0; j < y.cols; ++j) acc[j] %= x.p;
            }
            for (int j = 0; j < y.cols; ++j) r(i, j) = uint8_t(acc[j] % x.p);
        }
        return r;
    }

    FpMat scaled(long c) const {
        long cc = c % p;
        if (cc < 0) cc += p;
        FpMat r(rows, cols, p);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = uint8_t(a[i] * cc % p);
        return r;
    }
    FpMat operator-() const { return scaled(-1); }

    FpMat transpose() const {
        FpMat r(cols, rows, p);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    FpMat pow(int e) const {
        FpMat acc = identity(rows, p), base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    // In-place row reduction to RREF; returns pivot column indices.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int r = 0;
        for (int c = 0; c < cols && r < rows; ++c) {
            int pr = -1;
            for (int i = r; i < rows; ++i)
                if ((*this)(i, c)) { pr = i; break; }
            if (pr < 0) continue;
            if (pr != r)
                for (int j = 0; j < cols; ++j) std::swap((*this)(pr, j), (*this)(r, j));
            long inv = Fp((*this)(r, c), p).inverse().v;
            for (int j = c; j < cols; ++j) (*this)(r, j) = uint8_t((*this)(r, j) * inv % p);
            for (int i = 0; i < rows; ++i) {
                if (i == r) continue;
                uint32_t f = (*this)(i, c);
                if (!f) continue;
                uint32_t fneg = p - f;
                uint8_t* ri = &a[size_t(i) * cols];
                const uint8_t* rr = &a[size_t(r) * cols];
                for (int j = c; j < cols; ++j) ri[j] = uint8_t((ri[j] + fneg * rr[j]) % p);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    int rank() const {
        FpMat c = *this;
        return int(c.rref().size());
    }

    // Basis of the right kernel {x : Ax = 0}, returned as columns.
    FpMat nullspace() const {
        FpMat m = *this;
        std::vector<int> piv = m.rref();
        std::vector<bool> is_piv(cols, false);
        for (int c : piv) is_piv[c] = true;
        int nfree = cols - int(piv.size());
        FpMat ker(cols, nfree, p);
        int kcol = 0;
        for (int c = 0; c < cols; ++c) {
            if (is_piv[c]) continue;
            ker(c, kcol) = 1;
            for (size_t r = 0; r < piv.size(); ++r)
                ker.set(piv[r], kcol, -long(m(int(r), c)));
            ++kcol;
        }
        return ker;
    }

    // One solution of A x = b (b a column matrix), if any.
    std::optional<FpMat> solve(const FpMat& b) const {
        FpMat aug(rows, cols + b.cols, p);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) aug(i, j) = (*this)(i, j);
            for (int j = 0; j < b.cols; ++j) aug(i, cols + j) = b(i, j);
        }
        std::vector<int> piv = aug.rref();
        for (int c : piv)
            if (c >= cols) return std::nullopt;  // inconsistent
        FpMat x(cols, b.cols, p);
        for (size_t r = 0; r < piv.size(); ++r)
            for (int j = 0; j < b.cols; ++j) x(piv[r], j) = aug(int(r), cols + j);
        return x;
    }
};

// Online echelon form over F_p: insert rows one at a time, test membership.
struct RowSpan {
    int cols = 0, p = 0;
    std::vector<std::vector<uint8_t>> rows;  // echelon rows
    std::vector<int> pivot;                  // pivot column of each row

    RowSpan(int c, int prime) : cols(c), p(prime) {}

    int dim() const { return int(rows.size()); }

    // Reduce v against the current rows (in place); returns pivot or -1.
    int reduce(std::vector<uint8_t>& v) const {
        for (size_t r = 0; r < rows.size(); ++r) {
            uint32_t f = v[pivot[r]];
            if (!f) continue;
            uint32_t fneg = p - f;
            const uint8_t* rr = rows[r].data();
            for (int j = pivot[r]; j < cols; ++j) v[j] = uint8_t((v[j] + fneg * rr[j]) % p);
        }
        for (int j = 0; j < cols; ++j)
            if (v[j]) return j;
        return -1;
    }

    bool contains(std::vector<uint8_t> v) const { return reduce(v) < 0; }

    // Insert; returns true if the span grew.
    bool insert(std::vector<uint8_t> v) {
        int pc = reduce(v);
        if (pc < 0) return false;
        long inv = Fp(v[pc], p).inverse().v;
        for (int j = pc; j < cols; ++j) v[j] = uint8_t(v[j] * inv % p);
        // Keep rows sorted by pivot so reduce() stays a single sweep.
        size_t pos = 0;
        while (pos < rows.size() && pivot[pos] < pc) ++pos;
        rows.insert(rows.begin() + pos, std::move(v));
        pivot.insert(pivot.begin() + pos, pc);
        return true;
    }

    // Basis as a matrix (rows are the echelon basis vectors).
    FpMat basis() const {
        FpMat m(dim(), cols, p);
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        return m;
    }
};

// Column-compressed view of a matrix, for fast repeated matrix-vector
// products with sparse operators.
struct SparseOp {
    int rows = 0, cols = 0, p = 0;
    std::vector<std::vector<std::pair<int, uint8_t>>> col;

    explicit SparseOp(const FpMat& m) : rows(m.rows), cols(m.cols), p(m.p), col(m.cols) {
        for (int j = 0; j < m.cols; ++j)
            for (int i = 0; i < m.rows; ++i)
                if (m(i, j)) col[j].push_back({i, m(i, j)});
    }

    std::vector<uint8_t> apply(const std::vector<uint8_t>& v) const {
        std::vector<uint32_t> acc(rows, 0);
        for (int j = 0; j < cols; ++j) {
            uint32_t c = v[j];
            if (!c) continue;
            for (auto& [i, a] : col[j]) acc[i] = (acc[i] + c * a) % uint32_t(p);
        }
        std::vector<uint8_t> out(rows);
        for (int i = 0; i < rows; ++i) out[i] = uint8_t(acc[i]);
        return out;
    }
};

// Smallest subspace containing the seed vectors and stable under all the
// given operators.
inline RowSpan span_closure(int dim, int p, const std::vector<const FpMat*>& ops,
                            const std::vector<std::vector<uint8_t>>& seeds) {
    std::vector<SparseOp> sp;
    sp.reserve(ops.size());
    for (auto* m : ops) sp.emplace_back(*m);
    RowSpan rs(dim, p);
    std::vector<std::vector<uint8_t>> work;
    for (auto& s : seeds)
        if (rs.insert(std::vector<uint8_t>(s))) work.push_back(s);
    while (!work.empty()) {
        auto v = std::move(work.back());
        work.pop_back();
        for (auto& op : sp) {
            auto w = op.apply(v);
            if (rs.insert(std::vector<uint8_t>(w))) work.push_back(std::move(w));
        }
    }
    return rs;
}

}  // namespace pdgzz
