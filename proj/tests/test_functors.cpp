// Cup/cap functors, the Temperley-Lieb endofunctor, adjunction data, the
// twist bimodules, and the certified TL/braid relation verifiers.
#include <catch2/catch_amalgamated.hpp>

#include "pdgzz/functors.hpp"

using namespace pdgzz;

namespace {

// Non-free part of a decomposition (drop the contractible summands).
std::map<std::pair<int, int>, int> stable_part(const PComplex& c) {
    auto dec = decompose(c);
    std::map<std::pair<int, int>, int> out;
    for (auto& [jb, mult] : dec.summands)
        if (jb.first != c.p - 1) out[jb] = mult;
    return out;
}

void require_cert(const Certificate& c) {
    INFO(c.title << ": " << c.first_failure());
    REQUIRE(c.ok());
}

}  // namespace

TEST_CASE("cup pairs the simple with a coefficient complex") {
    for (int p : {2, 3}) {
        ZigzagAlgebra A(3, p);
        for (int i : {1, 2}) {
            // One-dimensional trivial coefficients give the simple itself.
            Mod M = cup(A, 1, i, vtilde(p, 0, 0));
            CHECK(M.dim() == 1);
            CHECK(M.lv[0] == i);
            CHECK(M.deg[0] == 0);
            // Free coefficients give an acyclic module.
            CHECK(is_acyclic(cup(A, 1, i, vtilde(p, p - 1, 0)).underlying()));
            // Graded dimension is multiplicative: dim L_i = 1.
            CHECK(cup(A, 1, i, vtilde(p, 1, -1)).dim() == 2);
        }
    }
}

TEST_CASE("cap against projectives collapses the cell replacement") {
    for (int p : {2, 3})
        for (int lambda : lambda_constraints(p)) {
            ZigzagAlgebra A(3, p);
            for (int i : {1, 2})
                for (int j = 1; j <= 3; ++j) {
                    // Oracle: P_j is already cofibrant, so the derived tensor
                    // is the plain tensor _iL (x) P_j = e_i A e_j placed in
                    // degree 0, of which only the idempotent survives d.
                    PComplex c = cap(A, lambda, i, projective(A, lambda, j, false));
                    std::map<std::pair<int, int>, int> want;
                    if (i == j) want[{0, 0}] = 1;
                    CHECK(stable_part(c) == want);
                }
        }
}

TEST_CASE("cap against simples reproduces the tensor table") {
    for (int p : {2, 3})
        for (int lambda : lambda_constraints(p)) {
            ZigzagAlgebra A(3, p);
            for (int i : {1, 2})
                for (int j = 1; j <= 3; ++j) {
                    PComplex c = cap(A, lambda, i, simple(A, lambda, j, false));
                    std::map<std::pair<int, int>, int> want;
                    if (j == i) {
                        want[{0, 0}] = 1;
                        want[{0, 2 - 2 * p}] = 1;  // trivial module [2]{2}
                    } else if (j == i - 1 || j == i + 1) {
                        want[{p - 2, 3 - 2 * p}] = 1;  // V_{p-2}{1-p} balanced
                    }
                    CHECK(stable_part(c) == want);
                }
        }
}

TEST_CASE("TL functor on simples") {
    for (int p : {2, 3}) {
        int lambda = 1;
        ZigzagAlgebra A(3, p);
        for (int i : {1, 2})
            for (int j = 1; j <= 3; ++j) {
                Mod M = tl_functor(A, lambda, i, simple(A, lambda, j, false));
                if (std::abs(i - j) > 1) {
                    CHECK(is_acyclic(M.underlying()));
                    continue;
                }
                // U_i M = L_i (x) pfactor, so the stable content of the
                // underlying complex is carried by the p-complex factor.
                PComplex f = tl_pfactor(A, lambda, i, simple(A, lambda, j, false));
                PComplex want =
                    j == i ? direct_sum(shift(vtilde(p, 0, 0), 1, 1), shift(vtilde(p, 0, 0), -1, -1))
                           : vtilde(p, 0, 0);
                CHECK(stable_part(f) == stable_part(want));
                CHECK(stable_part(M.underlying()) == stable_part(want));
            }
    }
}

TEST_CASE("adjunction data: chain maps and idempotent images") {
    for (int p : {2, 3}) {
        ZigzagAlgebra A(3, p);
        for (int i : {1, 2}) {
            AdjunctionData ad = adjunction_maps(A, 1, i);
            // Unit and counit commute with the differential.
            ModMap eta2{&ad.areg, &ad.unit_piece, ad.eta2, 0};
            CHECK(eta2.is_chain_map());
            ModMap eps{&ad.counit_piece, &ad.areg, ad.eps_hat, 0};
            CHECK(eps.is_chain_map());
            // eta_2 sends (i) to the corner generator and kills the other
            // idempotents.
            for (int j = 1; j <= 3; ++j) {
                int col = -1;
                for (int b = 0; b < ad.areg.dim(); ++b)
                    if (ad.areg.deg[b] == 0 && ad.areg.lv[b] == j) col = b;
                REQUIRE(col >= 0);
                bool zero = true;
                for (int r = 0; r < ad.unit_piece.dim(); ++r)
                    if (ad.eta2(r, col)) zero = false;
                CHECK(zero == (j != i));
            }
            // The one-sided unit/counit witness the V(0,0) summand of
            // p(_iL) (x)_A L_i: the generator is a cycle, the functional a
            // cocycle, and the pairing of the matched component is 1.
            FpMat dg = ad.ssh.underlying().d * ad.eta1;
            CHECK(dg.rank() == 0);
            FpMat fd = ad.eps2 * ad.S.mod.underlying().d;
            CHECK(fd.rank() == 0);
            FpMat pair = ad.eps2 * jordan_generator(ad.S.mod.underlying(), 0, 0);
            CHECK(pair(0, 0) == 1);
        }
    }
}

TEST_CASE("twist bimodules applied to generators") {
    int p = 2, lambda = 0;
    ZigzagAlgebra A(3, p);
    // The identity bimodule acts as the identity.
    ResolvedBimodule id = identity_bimodule(A, lambda);
    for (int j = 1; j <= 3; ++j) {
        Mod Pj = projective(A, lambda, j, false);
        Mod M = apply_bimodule(id, Pj);
        CHECK(M.dim() == Pj.dim());
        CHECK(stable_part(M.underlying()) == stable_part(Pj.underlying()));
    }
    // T_i fixes cell modules supported away from vertex i.
    ResolvedBimodule T1 = build_T(A, lambda, 1);
    Mod P3 = projective(A, lambda, 3, false);
    Mod M = twist_cocone(A, 1, P3);
    CHECK(stable_part(M.underlying()) == stable_part(P3.underlying()));
    Mod L3 = ln_resolution(A, false).mod;
    CHECK(stable_part(twist_cocone(A, 1, L3).underlying()) == stable_part(L3.underlying()));
    // The inverse twist does the same through its cell model.
    ResolvedBimodule T1p = build_T_prime(A, lambda, 1);
    CHECK(stable_part(apply_bimodule(T1p, L3).underlying()) == stable_part(L3.underlying()));
    CHECK(T1.kind == +1);
    CHECK(T1p.kind == -1);
    CHECK(T1p.left_cell);
    CHECK(T1p.right_proj);
}

TEST_CASE("composite bimodules follow the applicable rules") {
    int p = 2, lambda = 1;
    ZigzagAlgebra A(2, p);
    ResolvedBimodule T = build_T(A, lambda, 1);
    ResolvedBimodule Tp = build_T_prime(A, lambda, 1);
    // Cell composed with anything tensors; small cocone composes on cells.
    ResolvedBimodule c1 = compose_bimodules(Tp, T);
    CHECK(c1.mod.dim() > 0);
    ResolvedBimodule c2 = compose_bimodules(T, Tp);
    CHECK(c2.mod.dim() > 0);
    // Composing with the identity changes nothing stably.
    ResolvedBimodule ci = compose_bimodules(identity_bimodule(A, lambda), Tp);
    CHECK(ci.mod.dim() == Tp.mod.dim());
}

TEST_CASE("Temperley-Lieb relation certificates (small)") {
    for (auto [n, p, lambda] : {std::array{2, 2, 0}, std::array{2, 3, 1}})
        require_cert(verify_tl_relations(ZigzagAlgebra(n, p), lambda));
}

TEST_CASE("R2: the twists are mutually inverse (small)") {
    for (auto [n, p, lambda] : {std::array{2, 2, 0}, std::array{2, 3, 1}})
        require_cert(verify_braid_R2(ZigzagAlgebra(n, p), lambda, 1));
}

TEST_CASE("R3: the braid relation (small)") {
    require_cert(verify_braid_R3(ZigzagAlgebra(3, 2), 0, 1));
}

TEST_CASE("distant twists commute", "[extended]") {
    require_cert(verify_braid_distant(ZigzagAlgebra(4, 2), 0, 1, 3));
}
