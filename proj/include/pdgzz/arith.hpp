// Exact coefficient arithmetic: the prime field F_p, integer Laurent
// polynomials in q, and the two cyclotomic quotient rings used throughout:
//
//   Op    = Z[q] / (Psi_p(q^2)),  Psi_p(x) = 1 + x + ... + x^{p-1},
//           a free Z-module of rank 2p-2 with basis 1, q, ..., q^{2p-3};
//   O2p   = Z[q] / (Phi_{2p}(q)), the ring of integers of the 2p-th
//           cyclotomic field, where q^p = -1.
//
// Both reductions have unique normal forms, so equality is plain comparison.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pdgzz {

using Int = boost::multiprecision::cpp_int;

inline bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// F_p scalar. The modulus travels with the value; mixing moduli throws.
// ---------------------------------------------------------------------------
struct Fp {
    int v = 0;  // residue in [0, p)
    int p = 0;  // modulus; 0 marks an unusable default-constructed value

    Fp() = default;
    Fp(long value, int prime) : p(prime) {
        if (!is_prime(prime)) throw std::invalid_argument("Fp: modulus must be prime");
        long r = value % prime;
        if (r < 0) r += prime;
        v = static_cast<int>(r);
    }

    bool is_zero() const { return v == 0; }

    friend Fp operator+(Fp a, Fp b) { a.check(b); return Fp(a.v + b.v, a.p); }
    friend Fp operator-(Fp a, Fp b) { a.check(b); return Fp(a.v - b.v, a.p); }
    friend Fp operator*(Fp a, Fp b) { a.check(b); return Fp(long(a.v) * b.v, a.p); }
    friend Fp operator-(Fp a) { return Fp(-a.v, a.p); }
    friend bool operator==(const Fp& a, const Fp& b) { return a.v == b.v && a.p == b.p; }

    Fp inverse() const {
        if (v == 0) throw std::domain_error("Fp: inverse of zero");
        // p is prime, so v^(p-2) inverts v.
        long acc = 1, base = v, e = p - 2;
        while (e) {
            if (e & 1) acc = acc * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return Fp(acc, p);
    }

  private:
    void check(const Fp& o) const {
        if (p != o.p) throw std::invalid_argument("Fp: mixed moduli");
    }
};

// ---------------------------------------------------------------------------
// Laurent polynomials over Z with arbitrary-precision coefficients.
// Invariant: no zero coefficients are stored (map is canonical/sorted).
// ---------------------------------------------------------------------------
struct LaurentPoly {
    std::map<int, Int> coeffs;  // exponent -> nonzero coefficient

    LaurentPoly() = default;
    explicit LaurentPoly(Int c, int exp = 0) {
        if (c != 0) coeffs[exp] = std::move(c);
    }
    static LaurentPoly q(int exp = 1) { return LaurentPoly(1, exp); }

    bool is_zero() const { return coeffs.empty(); }

    Int coeff(int exp) const {
        auto it = coeffs.find(exp);
        return it == coeffs.end() ? Int(0) : it->second;
    }

    void add_term(int exp, const Int& c) {
        if (c == 0) return;
        Int& slot = coeffs[exp];
        slot += c;
        if (slot == 0) coeffs.erase(exp);
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (auto& [e, c] : b.coeffs) r.add_term(e, c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (auto& [e, c] : b.coeffs) r.add_term(e, -c);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (auto& [ea, ca] : a.coeffs)
            for (auto& [eb, cb] : b.coeffs) r.add_term(ea + eb, ca * cb);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly r;
        for (auto& [e, c] : a.coeffs) r.coeffs[e] = -c;
        return r;
    }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.coeffs == b.coeffs;
    }

    // q |-> q^{-1}
    LaurentPoly bar() const {
        LaurentPoly r;
        for (auto& [e, c] : coeffs) r.coeffs[-e] = c;
        return r;
    }

    std::string str() const {
        if (coeffs.empty()) return "0";
        std::string s;
        for (auto& [e, c] : coeffs) {
            if (!s.empty() && c > 0) s += "+";
            if (c == -1 && e != 0) s += "-";
            else if (c != 1 || e == 0) s += c.str();
            if (e != 0) {
                if (c != 1 && c != -1) s += "*";
                s += "q";
                if (e != 1) s += "^" + std::to_string(e);
            }
        }
        return s;
    }
};

// ---------------------------------------------------------------------------
// O_p = Z[q]/(Psi_p(q^2)): canonical representative supported on exponents
// 0..2p-3.  Reduction uses q^{2p} = 1 and
//   q^{2p-2+r} = -(q^r + q^{r+2} + ... + q^{r+2p-4})   for r in {0,1}.
// ---------------------------------------------------------------------------
struct CycInt {
    int p = 0;
    LaurentPoly rep;  // exponents in [0, 2p-3]

    CycInt() = default;
    CycInt(int prime, const LaurentPoly& x) : p(prime) {
        if (!is_prime(prime)) throw std::invalid_argument("CycInt: p must be prime");
        LaurentPoly folded;
        for (auto& [e, c] : x.coeffs) {
            int r = e % (2 * prime);
            if (r < 0) r += 2 * prime;
            folded.add_term(r, c);  // q^{2p} = 1
        }
        // Knock the top two exponents down using Psi_p(q^2) = 0.
        for (int top = 2 * prime - 1; top >= 2 * prime - 2; --top) {
            Int c = folded.coeff(top);
            if (c == 0) continue;
            folded.add_term(top, -c);
            int r = top - (2 * prime - 2);
            for (int k = 0; k <= prime - 2; ++k) folded.add_term(r + 2 * k, -c);
        }
        rep = folded;
    }
    static CycInt zero(int prime) { return CycInt(prime, LaurentPoly()); }
    static CycInt one(int prime) { return CycInt(prime, LaurentPoly(1)); }
    static CycInt q_power(int prime, int e) { return CycInt(prime, LaurentPoly::q(e)); }

    bool is_zero() const { return rep.is_zero(); }

    friend CycInt operator+(const CycInt& a, const CycInt& b) { a.check(b); return CycInt(a.p, a.rep + b.rep); }
    friend CycInt operator-(const CycInt& a, const CycInt& b) { a.check(b); return CycInt(a.p, a.rep - b.rep); }
    friend CycInt operator*(const CycInt& a, const CycInt& b) { a.check(b); return CycInt(a.p, a.rep * b.rep); }
    friend CycInt operator-(const CycInt& a) { return CycInt(a.p, -a.rep); }
    friend bool operator==(const CycInt& a, const CycInt& b) { return a.p == b.p && a.rep == b.rep; }

    // The bar involution q |-> q^{-1} = q^{2p-1}.
    CycInt bar() const { return CycInt(p, rep.bar()); }

    std::string str() const { return rep.str(); }

  private:
    void check(const CycInt& o) const {
        if (p != o.p) throw std::invalid_argument("CycInt: mixed p");
    }
};

inline CycInt cyc_reduce(int p, const LaurentPoly& x) { return CycInt(p, x); }

// Quantum integer [m] = q^{-m+1} + q^{-m+3} + ... + q^{m-1} in O_p.
inline CycInt qint(int p, int m) {
    if (m < 0) throw std::invalid_argument("qint: m must be >= 0");
    LaurentPoly s;
    for (int k = 0; k < m; ++k) s.add_term(-m + 1 + 2 * k, 1);
    return CycInt(p, s);
}

// ---------------------------------------------------------------------------
// O_{2p} = Z[q]/(Phi_{2p}(q)).  For p = 2, Phi_4 = q^2 + 1; for odd prime p,
// Phi_{2p}(q) = q^{p-1} - q^{p-2} + ... - q + 1.  Normal form: degree < p-1
// after first folding with q^p = -1 (q has order 2p).
// ---------------------------------------------------------------------------
struct Cyc2p {
    int p = 0;
    LaurentPoly rep;  // exponents in [0, deg Phi_{2p} - 1]

    Cyc2p() = default;
    Cyc2p(int prime, const LaurentPoly& x) : p(prime) {
        if (!is_prime(prime)) throw std::invalid_argument("Cyc2p: p must be prime");
        // Fold exponents into [0, p) using q^p = -1 (hence q^{2p} = 1).
        LaurentPoly folded;
        for (auto& [e, c] : x.coeffs) {
            long r = e % (2L * prime);
            if (r < 0) r += 2L * prime;
            if (r >= prime) folded.add_term(int(r - prime), -c);
            else folded.add_term(int(r), c);
        }
        // Remainder mod the monic Phi_{2p}.
        std::vector<Int> phi = phi2p(prime);          // coefficients, degree p-1 (or 2 for p=2)
        int deg = int(phi.size()) - 1;
        while (!folded.coeffs.empty()) {
            auto top = folded.coeffs.rbegin();
            if (top->first < deg) break;
            int e = top->first;
            Int c = top->second;
            for (int k = 0; k <= deg; ++k) folded.add_term(e - deg + k, -c * phi[k]);
        }
        rep = folded;
    }
    static std::vector<Int> phi2p(int prime) {
        std::vector<Int> out;
        if (prime == 2) { out = {Int(1), Int(0), Int(1)}; return out; }  // q^2+1
        out.resize(prime);
        for (int k = 0; k < prime; ++k) out[k] = (k % 2 == 0) ? 1 : -1;  // alternating
        return out;
    }

    bool is_zero() const { return rep.is_zero(); }
    friend Cyc2p operator+(const Cyc2p& a, const Cyc2p& b) { return Cyc2p(a.p, a.rep + b.rep); }
    friend Cyc2p operator-(const Cyc2p& a, const Cyc2p& b) { return Cyc2p(a.p, a.rep - b.rep); }
    friend Cyc2p operator*(const Cyc2p& a, const Cyc2p& b) { return Cyc2p(a.p, a.rep * b.rep); }
    friend Cyc2p operator-(const Cyc2p& a) { return Cyc2p(a.p, -a.rep); }
    friend bool operator==(const Cyc2p& a, const Cyc2p& b) { return a.p == b.p && a.rep == b.rep; }
    std::string str() const { return rep.str(); }
};

// Quotient map O_p -> O_{2p}; well defined because Phi_{2p} | Psi_p(q^2).
inline Cyc2p to_root(const CycInt& x) { return Cyc2p(x.p, x.rep); }

}  // namespace pdgzz
