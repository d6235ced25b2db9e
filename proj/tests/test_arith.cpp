// Coefficient rings: reduction normal forms, bar involution, quantum
// integers, and the quotient map onto the 2p-th cyclotomic integers.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pdgzz/arith.hpp"

using namespace pdgzz;

namespace {

// Independent oracle for reduction mod Psi_p(q^2) = 1 + q^2 + ... + q^{2p-2}:
// fold exponents mod 2p (valid since Psi | q^{2p} - 1), then take the plain
// polynomial remainder by the monic Psi.  Unique normal form, degree <= 2p-3.
LaurentPoly psi_remainder_oracle(int p, const LaurentPoly& x) {
    LaurentPoly f;
    for (auto& [e, c] : x.coeffs) {
        int r = e % (2 * p);
        if (r < 0) r += 2 * p;
        f.add_term(r, c);
    }
    LaurentPoly psi;
    for (int k = 0; k <= p - 1; ++k) psi.add_term(2 * k, 1);
    while (!f.coeffs.empty()) {
        auto top = f.coeffs.rbegin();
        int e = top->first;
        if (e < 2 * p - 2) break;
        Int c = top->second;
        for (auto& [pe, pc] : psi.coeffs) f.add_term(e - (2 * p - 2) + pe, -c * pc);
    }
    return f;
}

LaurentPoly random_laurent(std::mt19937& rng, int terms, int max_abs_exp, int max_abs_coeff) {
    std::uniform_int_distribution<int> de(-max_abs_exp, max_abs_exp);
    std::uniform_int_distribution<int> dc(-max_abs_coeff, max_abs_coeff);
    LaurentPoly x;
    for (int t = 0; t < terms; ++t) x.add_term(de(rng), dc(rng));
    return x;
}

const int PRIMES[] = {2, 3, 5, 7};

}  // namespace

TEST_CASE("Psi_p(q^2) reduces to zero and q has order 2p") {
    for (int p : PRIMES) {
        LaurentPoly psi;
        for (int k = 0; k <= p - 1; ++k) psi.add_term(2 * k, 1);
        CHECK(cyc_reduce(p, psi).is_zero());
        CHECK(CycInt::q_power(p, 2 * p) == CycInt::one(p));
        CHECK(CycInt::q_power(p, -1) == CycInt::q_power(p, 2 * p - 1));
        CHECK(!CycInt::q_power(p, p).is_zero());
    }
}

TEST_CASE("reduction matches the long-division oracle") {
    std::mt19937 rng(20260826);
    for (int p : PRIMES) {
        for (int trial = 0; trial < 200; ++trial) {
            LaurentPoly x = random_laurent(rng, 12, 6 * p, 9);
            CycInt r = cyc_reduce(p, x);
            CHECK(r.rep == psi_remainder_oracle(p, x));
            // Normal-form support check.
            for (auto& [e, c] : r.rep.coeffs) {
                CHECK(e >= 0);
                CHECK(e <= 2 * p - 3);
            }
        }
    }
}

TEST_CASE("cyc_reduce is a ring homomorphism") {
    std::mt19937 rng(7);
    for (int p : PRIMES) {
        for (int trial = 0; trial < 100; ++trial) {
            LaurentPoly x = random_laurent(rng, 8, 5 * p, 6);
            LaurentPoly y = random_laurent(rng, 8, 5 * p, 6);
            CHECK(cyc_reduce(p, x + y) == cyc_reduce(p, x) + cyc_reduce(p, y));
            CHECK(cyc_reduce(p, x * y) == cyc_reduce(p, x) * cyc_reduce(p, y));
        }
    }
}

TEST_CASE("bar is a ring involution sending q to q^{-1}") {
    std::mt19937 rng(11);
    for (int p : PRIMES) {
        CHECK(CycInt::q_power(p, 1).bar() == CycInt::q_power(p, -1));
        for (int trial = 0; trial < 50; ++trial) {
            CycInt x = cyc_reduce(p, random_laurent(rng, 8, 5 * p, 6));
            CycInt y = cyc_reduce(p, random_laurent(rng, 8, 5 * p, 6));
            CHECK(x.bar().bar() == x);
            CHECK((x * y).bar() == x.bar() * y.bar());
            CHECK((x + y).bar() == x.bar() + y.bar());
        }
    }
}

TEST_CASE("quantum integers: base cases, [p] = 0, Clebsch-Gordan products") {
    for (int p : PRIMES) {
        CHECK(qint(p, 0).is_zero());
        CHECK(qint(p, 1) == CycInt::one(p));
        CHECK(qint(p, 2) == CycInt::q_power(p, -1) + CycInt::q_power(p, 1));
        CHECK(qint(p, p).is_zero());
        CHECK(!qint(p, p - 1).is_zero());
        // [m][n] = [m+n-1] + [m+n-3] + ... + [m-n+1]  for m >= n >= 1.
        for (int m = 1; m <= p + 2; ++m)
            for (int n = 1; n <= m; ++n) {
                CycInt rhs = CycInt::zero(p);
                for (int k = 0; k < n; ++k) rhs = rhs + qint(p, m + n - 1 - 2 * k);
                CHECK(qint(p, m) * qint(p, n) == rhs);
            }
    }
}

TEST_CASE("to_root: q^p = -1 and the map kills Psi_p(q^2)") {
    for (int p : PRIMES) {
        CHECK(to_root(CycInt::q_power(p, p)) == -Cyc2p(p, LaurentPoly(1)));
        LaurentPoly psi;
        for (int k = 0; k <= p - 1; ++k) psi.add_term(2 * k, 1);
        CHECK(Cyc2p(p, psi).is_zero());
        // 1 + q^p reduces to zero through the quotient.
        CycInt x = CycInt::one(p) + CycInt::q_power(p, p);
        CHECK(to_root(x).is_zero());
        if (p > 2) CHECK(!x.is_zero());  // for p = 2 the two rings coincide
    }
}

TEST_CASE("to_root is a ring homomorphism") {
    std::mt19937 rng(23);
    for (int p : PRIMES) {
        for (int trial = 0; trial < 100; ++trial) {
            CycInt x = cyc_reduce(p, random_laurent(rng, 8, 5 * p, 6));
            CycInt y = cyc_reduce(p, random_laurent(rng, 8, 5 * p, 6));
            CHECK(to_root(x + y) == to_root(x) + to_root(y));
            CHECK(to_root(x * y) == to_root(x) * to_root(y));
        }
    }
}

TEST_CASE("Phi_{2p} divides Psi_p(q^2) over Z") {
    // Divide Psi_p(q^2) by the monic Phi_{2p} as integer polynomials and
    // confirm zero remainder (this is what makes to_root well defined).
    for (int p : PRIMES) {
        std::vector<Int> psi(2 * p - 1, 0);
        for (int k = 0; k <= p - 1; ++k) psi[2 * k] = 1;
        std::vector<Int> phi = Cyc2p::phi2p(p);
        int dphi = int(phi.size()) - 1;
        for (int e = int(psi.size()) - 1; e >= dphi; --e) {
            Int c = psi[e];
            if (c == 0) continue;
            for (int k = 0; k <= dphi; ++k) psi[e - dphi + k] -= c * phi[k];
        }
        for (auto& c : psi) CHECK(c == 0);
    }
}

TEST_CASE("Fp scalars: field axioms spot checks and inverses") {
    for (int p : PRIMES) {
        for (int v = 1; v < p; ++v) {
            Fp x(v, p);
            CHECK(x * x.inverse() == Fp(1, p));
        }
        CHECK(Fp(p - 1, p) + Fp(1, p) == Fp(0, p));
        CHECK(-Fp(1, p) == Fp(p - 1, p));
    }
    CHECK(is_prime(2));
    CHECK(is_prime(251));
    CHECK(!is_prime(1));
    CHECK(!is_prime(91));
}
