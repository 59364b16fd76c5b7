#include "zhualg/twisted.hpp"
#include "doctest.h"
#include <random>

using namespace zhualg;
using namespace zhualg::twisted;
using lie::LieVec;
using voa::ModVec;
using voa::mv_axpy;
using voa::mv_scale;

namespace {

struct Fix {
    std::shared_ptr<const lie::LieAlgebra> g;
    std::shared_ptr<const lie::Automorphism> aut;
    voa::SectorBasis sb;
    Fix(const char* type, const char* mu, const char* e_label) {
        auto ga = lie::build_lie_algebra(type);
        LieVec e;
        if (e_label && *e_label) e = ga.basis_vec(ga.label_index(e_label));
        g = std::make_shared<lie::LieAlgebra>(std::move(ga));
        aut = std::make_shared<lie::Automorphism>(lie::diagram_automorphism(*g, mu, e));
        sb = voa::make_sector_basis(*g, *aut);
    }
    LieVec lv(const char* label) const { return g->basis_vec(g->label_index(label)); }
};

AffineElt jac_sum(const voa::SectorBasis& sb, const AffineElt& x, const AffineElt& y,
                  const AffineElt& z, bool sc) {
    AffineElt out = twisted_bracket(sb, twisted_bracket(sb, x, y, sc), z, sc);
    AffineElt t = twisted_bracket(sb, twisted_bracket(sb, y, z, sc), x, sc);
    AffineElt u = twisted_bracket(sb, twisted_bracket(sb, z, x, sc), y, sc);
    for (auto& [m, a] : t.terms)
        for (auto& [i, c] : a) out.terms[m][i] += c;
    for (auto& [m, a] : u.terms)
        for (auto& [i, c] : a) out.terms[m][i] += c;
    out.central += t.central + u.central;
    // prune zeros
    for (auto it = out.terms.begin(); it != out.terms.end();) {
        for (auto jt = it->second.begin(); jt != it->second.end();)
            jt = field_is_zero(jt->second) ? it->second.erase(jt) : std::next(jt);
        it = it->second.empty() ? out.terms.erase(it) : std::next(it);
    }
    return out;
}

} // namespace

TEST_CASE("sigma cocycle values on sl2") {
    Fix x("A1", "id", "f");
    AffineElt h0 = affine_term(x.lv("h"), 0);
    AffineElt e0 = affine_term(x.lv("e"), 0);
    AffineElt br = twisted_bracket(x.sb, h0, e0, true);
    // [h (x) 1, e (x) 1] = 2 e (x) 1 + <f, [h,e]> k = 2 e (x) 1 + 2 k
    AffineElt want = affine_term(x.lv("e"), 0, Rat(2));
    for (auto& [m, a] : want.terms)
        for (auto& [i, c] : a) c *= 2;
    CHECK(br == want);
    // [e (x) t, f (x) t^-1] = h (x) 1 + (1 <e,f> + <f, h>) k = h (x) 1 + k
    AffineElt et = affine_term(x.lv("e"), 1);
    AffineElt fm = affine_term(x.lv("f"), -1);
    CHECK(twisted_bracket(x.sb, et, fm, true) == affine_term(x.lv("h"), 0, Rat(1)));
    // the plain mu cocycle drops the e-correction
    AffineElt br_mu = twisted_bracket(x.sb, h0, e0, false);
    AffineElt want_mu = affine_term(x.lv("e"), 0);
    for (auto& [m, a] : want_mu.terms)
        for (auto& [i, c] : a) c *= 2;
    CHECK(br_mu == want_mu);
}

TEST_CASE("twisted affinization satisfies the Jacobi identity") {
    for (bool sc : {false, true}) {
        Fix x("A1", "id", "f");
        std::vector<AffineElt> elems;
        for (int i = 0; i < x.g->dim; ++i)
            for (long m = -2; m <= 2; ++m) elems.push_back(affine_term(x.g->basis_vec(i), m));
        std::mt19937_64 rng(5);
        for (int t = 0; t < 40; ++t) {
            const AffineElt& a = elems[rng() % elems.size()];
            const AffineElt& b = elems[rng() % elems.size()];
            const AffineElt& c = elems[rng() % elems.size()];
            AffineElt s = jac_sum(x.sb, a, b, c, sc);
            CHECK(s.terms.empty());
            CHECK(s.central == 0);
        }
    }
}

TEST_CASE("class residues are enforced for twisted terms") {
    Fix x("A2", "flip", "");
    // a class-1 sector element at an even mode is rejected
    int s1 = -1, s0 = -1;
    for (int s = 0; s < x.sb.dim(); ++s)
        (x.sb.cls[s] == 1 ? s1 : s0) = s;
    REQUIRE(s1 >= 0);
    REQUIRE(s0 >= 0);
    CHECK_THROWS_AS(check_classes(x.sb, affine_term(x.sb.vec[s1], 0)),
                    std::invalid_argument);
    CHECK_NOTHROW(check_classes(x.sb, affine_term(x.sb.vec[s1], 1)));
    CHECK_NOTHROW(check_classes(x.sb, affine_term(x.sb.vec[s0], -2)));
}

TEST_CASE("phi is an isomorphism of affinizations") {
    Fix x("A1", "id", "f");
    // phi(e (x) 1) = e(0) - <f, e> k = e(0) - k
    AffineElt img = iso_phi(x.sb, affine_term(x.lv("e"), 0), true);
    CHECK(img == affine_term(x.lv("e"), 0, Rat(-1)));
    // h and f pick up no correction
    CHECK(iso_phi(x.sb, affine_term(x.lv("h"), 0), true) == affine_term(x.lv("h"), 0));
    // homomorphism property on all basis pairs, |m| <= 2
    for (int i = 0; i < x.g->dim; ++i)
        for (int j = 0; j < x.g->dim; ++j)
            for (long m = -2; m <= 2; ++m)
                for (long n = -2; n <= 2; ++n) {
                    AffineElt a = affine_term(x.g->basis_vec(i), m);
                    AffineElt b = affine_term(x.g->basis_vec(j), n);
                    AffineElt lhs = iso_phi(x.sb, twisted_bracket(x.sb, a, b, true), true);
                    AffineElt rhs = twisted_bracket(x.sb, iso_phi(x.sb, a, true),
                                                    iso_phi(x.sb, b, true), false);
                    REQUIRE(lhs == rhs);
                }
    // round trip on random elements
    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
        AffineElt a = affine_term(x.g->basis_vec(rng() % x.g->dim), (long)(rng() % 5) - 2,
                                  Rat((long)(rng() % 7) - 3));
        CHECK(iso_phi(x.sb, iso_phi(x.sb, a, true), false) == a);
    }
}

TEST_CASE("phi with a nontrivial diagram automorphism") {
    Fix x("A2", "flip", "");
    LieVec e0 = lie::highest_root_vector_fixed(*x.g, *x.aut);
    auto aut = std::make_shared<lie::Automorphism>(lie::diagram_automorphism(*x.g, "flip", e0));
    auto sb = voa::make_sector_basis(*x.g, *aut);
    for (int i = 0; i < sb.dim(); ++i)
        for (int j = 0; j < sb.dim(); ++j)
            for (long m = -3; m <= 3; ++m)
                for (long n = -3; n <= 3; ++n) {
                    if ((m - sb.cls[i]) % 2 != 0 || (n - sb.cls[j]) % 2 != 0) continue;
                    AffineElt a = affine_term(sb.vec[i], m);
                    AffineElt b = affine_term(sb.vec[j], n);
                    AffineElt lhs = iso_phi(sb, twisted_bracket(sb, a, b, true), true);
                    AffineElt rhs = twisted_bracket(sb, iso_phi(sb, a, true),
                                                    iso_phi(sb, b, true), false);
                    REQUIRE(lhs == rhs);
                }
}

TEST_CASE("twisted Verma graded dimensions for the A2 flip") {
    Fix x("A2", "flip", "");
    auto W = build_twisted_verma(x.g, x.aut, {0}, Rat(1), 2);
    CHECK(W->verma_dims() == std::vector<long>{1, 5, 18});
    // half-integer layer is the 5-dimensional odd sector, integer layer adds
    // the fixed subalgebra modes
    auto simple = W->simple_dims();
    REQUIRE(simple.size() == 3);
    CHECK(simple[0] == 1);
    for (size_t d = 0; d < 3; ++d) CHECK(simple[d] <= W->verma_dims()[d]);
}

TEST_CASE("trivial twist reduces to the untwisted Verma") {
    Fix x("A1", "id", "");
    auto W = build_twisted_verma(x.g, x.aut, {0}, Rat(1), 2);
    CHECK(W->verma_dims() == std::vector<long>{1, 3, 9});
    auto W1 = build_twisted_verma(x.g, x.aut, {1}, Rat(1), 1);
    CHECK(W1->mod->top_dim() == 2);
    CHECK(W1->verma_dims()[0] == 2);
}

TEST_CASE("critical level is rejected for twisted Vermas") {
    Fix x("A1", "id", "");
    CHECK_THROWS_AS(build_twisted_verma(x.g, x.aut, {0}, Rat(-2), 2),
                    std::invalid_argument);
}

TEST_CASE("y0 modes match the module action when e = 0") {
    Fix x("A2", "flip", "");
    auto W = build_twisted_verma(x.g, x.aut, {0}, Rat(1), 4);
    auto V = std::make_shared<voa::VacuumVoa>(x.g, x.aut, Rat(1), 3);
    TwistedY0 Y(V, W);
    CHECK(Y.T() == 2);
    ModVec w0 = W->mod->vacuum_like(0);
    for (int s = 0; s < x.sb.dim(); ++s) {
        ModVec cur = V->current(x.sb.vec[s]);
        CHECK(Y.state_class(cur) == x.sb.cls[s]);
        for (long m = -3; m <= 3; ++m) {
            if ((m - x.sb.cls[s]) % 2 != 0) continue;
            CHECK(Y.y0_mode(cur, m, w0) == W->mod->act(s, m, w0));
        }
    }
}

TEST_CASE("sigma correction shifts only the zero mode") {
    Fix x("A2", "flip", "");
    LieVec e0 = lie::highest_root_vector_fixed(*x.g, *x.aut);
    auto aut = std::make_shared<lie::Automorphism>(lie::diagram_automorphism(*x.g, "flip", e0));
    Rat level(1);
    auto W = build_twisted_verma(x.g, aut, {0}, level, 4);
    auto V = std::make_shared<voa::VacuumVoa>(x.g, aut, level, 3);
    TwistedY0 Y(V, W);
    auto sb2 = voa::make_sector_basis(*x.g, *aut);
    ModVec w = W->mod->act(sb2.dim() - 1, -1, W->mod->vacuum_like(0));
    for (int s = 0; s < sb2.dim(); ++s) {
        if (sb2.cls[s] != 0) continue;
        ModVec cur = V->current(sb2.vec[s]);
        // zero mode: a(0) - <e, a> l
        ModVec want = W->mod->act(s, 0, w);
        mv_axpy(want, -sb2.e_pair[s] * level, w);
        CHECK(Y.y0_mode(cur, 0, w) == want);
        // a nonzero mode is uncorrected
        CHECK(Y.y0_mode(cur, -2, w) == W->mod->act(s, -2, w));
        // o(i(a)) collapses to the plain zero mode
        ModVec o_parts = Y.o_mode(cur, w);
        mv_axpy(o_parts, sb2.e_pair[s] * level, w);
        CHECK(o_parts == W->mod->act(s, 0, w));
    }
}

TEST_CASE("twisted identities verify on a small window") {
    Fix x("A2", "flip", "");
    auto W = build_twisted_verma(x.g, x.aut, {0}, Rat(1), 4);
    auto V = std::make_shared<voa::VacuumVoa>(x.g, x.aut, Rat(1), 3);
    TwistedY0 Y(V, W);
    ModVec u = V->current(lie::highest_root_vector(*x.g));
    LieVec ft = x.g->basis_vec(x.g->label_index("f_theta"));
    ModVec v = V->current(ft);
    ModVec w = W->mod->vacuum_like(0);
    auto jr = verify_twisted_jacobi(Y, u, v, w, 3, 4);
    CHECK(jr.ok());
    auto cr = verify_commutator(Y, u, v, w, 4);
    CHECK(cr.ok());
    auto ar = verify_weak_associativity(Y, u, v, w, 3, 4);
    CHECK(ar.ok());
}

TEST_CASE("power field identity and its preconditions") {
    Fix x("A2", "flip", "");
    auto W = build_twisted_verma(x.g, x.aut, {0}, Rat(1), 3);
    auto V = std::make_shared<voa::VacuumVoa>(x.g, x.aut, Rat(1), 3);
    TwistedY0 Y(V, W);
    LieVec et = lie::highest_root_vector(*x.g);
    auto rep = verify_power_field(Y, et, 2, 3);
    CHECK(rep.ok());
    // a fixed-sector vector is rejected
    LieVec fixed0 = lie::highest_root_vector_fixed(*x.g, *x.aut);
    CHECK_THROWS_AS(verify_power_field(Y, fixed0, 2, 3), std::invalid_argument);
}
