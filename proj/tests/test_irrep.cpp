#include "zhualg/irrep.hpp"
#include "doctest.h"

using namespace zhualg;
using namespace zhualg::lie;

TEST_CASE("sl2 irreps have the right dimensions and spectra") {
    auto g = build_lie_algebra("A1");
    auto td = whole_algebra_triangular(g);
    for (long m = 0; m <= 4; ++m) {
        auto rep = build_irrep(td, {m});
        CHECK(rep.dim == m + 1);
        // h acts diagonally with eigenvalues m, m-2, ..., -m
        Mat<Rat> H = rep.action_of(g.basis_vec(g.label_index("h")));
        for (int i = 0; i < rep.dim; ++i)
            for (int j = 0; j < rep.dim; ++j)
                CHECK(H[i][j] == (i == j ? Rat(m - 2 * rep.level_of[i]) : Rat(0)));
    }
}

TEST_CASE("irrep dimensions match the Weyl formula") {
    auto g = build_lie_algebra("A2");
    auto td = whole_algebra_triangular(g);
    for (std::vector<long> lam : {std::vector<long>{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}}) {
        auto rep = build_irrep(td, lam);
        CHECK(Rat(rep.dim) == td.weyl_dim(lam));
    }
}

TEST_CASE("action matrices represent the Lie bracket") {
    auto g = build_lie_algebra("A2");
    auto td = whole_algebra_triangular(g);
    auto rep = build_irrep(td, {1, 1});
    for (int a = 0; a < td.dim(); ++a)
        for (int b = 0; b < td.dim(); ++b) {
            LieVec xa = td.basis_elem(a), xb = td.basis_elem(b);
            Mat<Rat> A = rep.act[a], B = rep.act[b];
            Mat<Rat> C = rep.action_of(g.bracket(xa, xb));
            for (int i = 0; i < rep.dim; ++i)
                for (int j = 0; j < rep.dim; ++j) {
                    Rat comm = 0;
                    for (int k = 0; k < rep.dim; ++k)
                        comm += A[i][k] * B[k][j] - B[i][k] * A[k][j];
                    REQUIRE(comm == C[i][j]);
                }
        }
}

TEST_CASE("gram matrix is contravariant and nondegenerate") {
    auto g = build_lie_algebra("A1");
    auto td = whole_algebra_triangular(g);
    auto rep = build_irrep(td, {3});
    CHECK(rep.gram[0][0] == 1);
    CHECK(rank(rep.gram) == rep.dim);
    // <e v, w> = <v, f w> for the Chevalley pair
    Mat<Rat> E = rep.action_of(g.basis_vec(g.label_index("e")));
    Mat<Rat> F = rep.action_of(g.basis_vec(g.label_index("f")));
    for (int i = 0; i < rep.dim; ++i)
        for (int j = 0; j < rep.dim; ++j) {
            Rat lhs = 0, rhs = 0;
            for (int k = 0; k < rep.dim; ++k) {
                lhs += E[k][i] * rep.gram[k][j];
                rhs += rep.gram[i][k] * F[k][j];
            }
            CHECK(lhs == rhs);
        }
}

TEST_CASE("casimir is scalar on an irrep") {
    auto g = build_lie_algebra("A2");
    auto td = whole_algebra_triangular(g);
    auto rep = build_irrep(td, {1, 0});
    Mat<Rat> C = rep.casimir();
    Rat c0 = C[0][0];
    for (int i = 0; i < rep.dim; ++i)
        for (int j = 0; j < rep.dim; ++j) CHECK(C[i][j] == (i == j ? c0 : Rat(0)));
    // fundamental of sl3 with the normalized form: c = (lambda, lambda + 2 rho) = 8/3
    CHECK(c0 == Rat(8, 3));
}

TEST_CASE("fixed subalgebra irreps") {
    auto g = build_lie_algebra("A2");
    auto aut = diagram_automorphism(g, "flip", {});
    auto td0 = fixed_subalgebra(g, aut);
    auto trivial = build_irrep(td0, {0});
    CHECK(trivial.dim == 1);
    auto rep = build_irrep(td0, {2});
    CHECK(Rat(rep.dim) == td0.weyl_dim({2}));
}
