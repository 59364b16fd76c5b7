#include "zhualg/classify.hpp"
#include <algorithm>

namespace zhualg::classify {

Poly poly_trim(Poly p) {
    while (!p.empty() && field_is_zero(p.back())) p.pop_back();
    return p;
}

Poly poly_derivative(const Poly& p) {
    Poly d;
    for (size_t k = 1; k < p.size(); ++k) d.push_back(Rat((long)k) * p[k]);
    return poly_trim(d);
}

Poly poly_mod(Poly a, const Poly& b) {
    a = poly_trim(a);
    Poly bb = poly_trim(b);
    if (bb.empty()) throw std::invalid_argument("poly_mod: division by zero");
    while (a.size() >= bb.size()) {
        Rat c = a.back() / bb.back();
        size_t shift = a.size() - bb.size();
        for (size_t k = 0; k < bb.size(); ++k) a[k + shift] -= c * bb[k];
        a = poly_trim(a);
        if (a.empty()) break;
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b) {
    a = poly_trim(a);
    b = poly_trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

bool poly_is_constant(const Poly& p) { return poly_trim(p).size() <= 1; }

namespace {

Mat<Rat> mat_mul(const Mat<Rat>& a, const Mat<Rat>& b) {
    size_t n = a.size();
    Mat<Rat> c(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (field_is_zero(a[i][k])) continue;
            for (size_t j = 0; j < n; ++j)
                if (!field_is_zero(b[k][j])) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

bool is_zero_mat(const Mat<Rat>& m) {
    for (const auto& r : m)
        for (const auto& c : r)
            if (!field_is_zero(c)) return false;
    return true;
}

} // namespace

Poly matrix_minpoly(const Mat<Rat>& m) {
    size_t n = m.size();
    if (n == 0) return Poly{Rat(0), Rat(1)};
    // Krylov on vec(M^k): the first linear dependency gives the minimal
    // polynomial
    std::vector<Mat<Rat>> pows;
    Mat<Rat> id(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) id[i][i] = Rat(1);
    pows.push_back(id);
    for (size_t deg = 1; deg <= n; ++deg) {
        pows.push_back(mat_mul(pows.back(), m));
        Mat<Rat> A(n * n, std::vector<Rat>(deg, Rat(0)));
        std::vector<Rat> b(n * n, Rat(0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                for (size_t k = 0; k < deg; ++k) A[i * n + j][k] = pows[k][i][j];
                b[i * n + j] = pows[deg][i][j];
            }
        auto x = solve(A, b);
        if (x) {
            Poly p(deg + 1, Rat(0));
            p[deg] = Rat(1);
            for (size_t k = 0; k < deg; ++k) p[k] = -(*x)[k];
            return p;
        }
    }
    throw std::logic_error("matrix_minpoly: no dependency up to dimension");
}

bool minpoly_squarefree(const Mat<Rat>& m) {
    Poly p = matrix_minpoly(m);
    return poly_is_constant(poly_gcd(p, poly_derivative(p)));
}

std::vector<std::vector<long>> Classification::admissible_list() const {
    std::vector<std::vector<long>> out;
    for (const auto& w : weights)
        if (w.admissible) out.push_back(w.lambda);
    return out;
}

LieVec theta_element(const lie::LieAlgebra& g, const lie::Automorphism& aut,
                     bool& uses_theta0) {
    LieVec etheta = lie::highest_root_vector(g);
    if (aut.apply_mu(etheta) == etheta) {
        uses_theta0 = false;
        return etheta;
    }
    uses_theta0 = true;
    return lie::highest_root_vector_fixed(g, aut);
}

std::vector<Rat> coroot_coords(const lie::TriangularData& td, const LieVec& h) {
    int ns = (int)td.simples.size();
    int dim = td.ambient->dim;
    Mat<Rat> cols(dim, std::vector<Rat>(ns, Rat(0)));
    for (int i = 0; i < ns; ++i)
        for (const auto& [row, c] : td.positive[td.simples[i]].H) cols[row][i] = c;
    LinSolver<Rat> sol(cols);
    std::vector<Rat> dense(dim, Rat(0));
    for (const auto& [row, c] : h) dense[row] = c;
    auto r = sol.solve(dense);
    if (!r) throw std::invalid_argument("coroot_coords: not in the coroot span");
    return *r;
}

Classification classify_weights(const lie::LieAlgebra& g, const lie::Automorphism& aut,
                                const Rat& level) {
    Classification out;
    out.level = level;
    long lv = rat_to_long(level);
    if (lv < 0) throw std::invalid_argument("classification requires a nonnegative integer level");
    LieVec eX = theta_element(g, aut, out.uses_theta0);
    auto td0 = lie::fixed_subalgebra(g, aut);
    LieVec hX;
    if (out.uses_theta0) {
        hX = td0.positive[td0.theta0].H;
    } else {
        LieVec ftheta = g.basis_vec(g.f_index(g.rs.theta));
        hX = g.bracket(eX, ftheta);
    }
    auto cc = coroot_coords(td0, hX);
    for (const auto& c : cc)
        if (!(c > 0)) throw std::logic_error("classify: nonpositive coroot coefficient");
    int ns = (int)td0.simples.size();
    // enumerate one step beyond the admissible range in every coordinate
    std::vector<long> box(ns, 0);
    for (int i = 0; i < ns; ++i) {
        long v = 0;
        while (cc[i] * Rat(v + 1) <= Rat(lv + 1)) ++v;
        box[i] = v;
    }
    std::vector<long> lam(ns, 0);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == ns) {
            Rat pairing(0);
            for (int k = 0; k < ns; ++k) pairing += cc[k] * Rat(lam[k]);
            WeightInfo wi;
            wi.lambda = lam;
            wi.pairing = pairing;
            wi.admissible = (pairing <= level);
            out.weights.push_back(std::move(wi));
            return;
        }
        for (long v = 0; v <= box[i]; ++v) {
            lam[i] = v;
            self(self, i + 1);
        }
        lam[i] = 0;
    };
    rec(rec, 0);
    return out;
}

SVec<Rat> OmegaSpace::qcoords(const ModVec& v) const {
    const auto& M = *W->mod;
    const auto& Q = W->simple();
    SVec<Rat> out;
    ModVec r = Q.reduce(v);
    for (const auto& [m, c] : r) out[(int)M.coord_of(m)] = c;
    return out;
}

Mat<Rat> OmegaSpace::action_of(const LieVec& a) const {
    const auto& M = *W->mod;
    const auto& Q = W->simple();
    SVec<Rat> sec = W->sb->to_sector(a);
    int n = dim();
    Mat<Rat> out(n, std::vector<Rat>(n, Rat(0)));
    for (int j = 0; j < n; ++j) {
        ModVec img = Q.reduce(M.act_elem(sec, 0, basis[j]));
        std::vector<Rat> dense(M.total_dim(), Rat(0));
        for (const auto& [m, c] : img) dense[(size_t)M.coord_of(m)] = c;
        auto x = coords_solver->solve(dense);
        if (!x) throw std::logic_error("omega action: image escapes Omega");
        for (int i = 0; i < n; ++i) out[i][j] = (*x)[i];
    }
    return out;
}

OmegaSpace omega_space(const TwistedBundle& W) {
    OmegaSpace om;
    om.W = &W;
    auto per_depth = voa::omega_basis(W.simple());
    om.dims_by_depth.assign(W.cap + 1, 0);
    for (long d = 0; d <= W.cap; ++d) {
        om.dims_by_depth[d] = (long)per_depth[d].size();
        for (auto& v : per_depth[d]) om.basis.push_back(std::move(v));
    }
    const auto& M = *W.mod;
    Mat<Rat> cols(M.total_dim(), std::vector<Rat>(om.basis.size(), Rat(0)));
    for (size_t j = 0; j < om.basis.size(); ++j)
        for (const auto& [m, c] : om.basis[j]) cols[(size_t)M.coord_of(m)][j] = c;
    om.coords_solver = std::make_shared<LinSolver<Rat>>(cols);
    return om;
}

namespace {

// integer eigenvalue candidates: integer roots of the minimal polynomial,
// all of which lie within the Cauchy bound 1 + max |c_i| of the monic poly
std::vector<long> integer_eigen_candidates(const Mat<Rat>& op) {
    Poly p = matrix_minpoly(op);
    Rat mx(0);
    for (size_t i = 0; i + 1 < p.size(); ++i) {
        Rat a = abs(p[i]);
        if (a > mx) mx = a;
    }
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), mx.get_num().get_mpz_t(), mx.get_den().get_mpz_t());
    if (!q.fits_slong_p()) throw std::logic_error("eigenvalue bound overflow");
    long bound = 1 + q.get_si();
    std::vector<long> cands;
    for (long r = -bound; r <= bound; ++r) {
        Rat val(0);
        for (size_t i = p.size(); i-- > 0;) val = val * Rat(r) + p[i];
        if (field_is_zero(val)) cands.push_back(r);
    }
    return cands;
}

// refine a list of subspaces (rows = basis vectors) into integer eigenspaces
// of op; false if some piece is not exhausted
bool split_by_integer_eigen(const Mat<Rat>& op, std::vector<Mat<Rat>>& spaces) {
    size_t n = op.size();
    auto cands = integer_eigen_candidates(op);
    std::vector<Mat<Rat>> next;
    for (const auto& sp : spaces) {
        size_t d = sp.size();
        Mat<Rat> im(d, std::vector<Rat>(n, Rat(0)));
        for (size_t j = 0; j < d; ++j)
            for (size_t i = 0; i < n; ++i) {
                Rat acc(0);
                for (size_t k = 0; k < n; ++k)
                    if (!field_is_zero(op[i][k])) acc += op[i][k] * sp[j][k];
                im[j][i] = acc;
            }
        size_t found = 0;
        for (long r : cands) {
            if (found >= d) break;
            Mat<Rat> rows(n, std::vector<Rat>(d, Rat(0)));
            for (size_t j = 0; j < d; ++j)
                for (size_t i = 0; i < n; ++i) rows[i][j] = im[j][i] - Rat(r) * sp[j][i];
            auto ker = kernel_basis(rows);
            if (ker.empty()) continue;
            Mat<Rat> piece;
            for (const auto& kv : ker) {
                std::vector<Rat> vec(n, Rat(0));
                for (size_t j = 0; j < d; ++j)
                    if (!field_is_zero(kv[j]))
                        for (size_t i = 0; i < n; ++i) vec[i] += kv[j] * sp[j][i];
                piece.push_back(std::move(vec));
            }
            found += piece.size();
            next.push_back(std::move(piece));
        }
        if (found != d) return false;
    }
    spaces = std::move(next);
    return true;
}

} // namespace

ModuleCertificate certify_simple_module(const TwistedBundle& W, const LieVec& eX, long pow) {
    ModuleCertificate cert;
    cert.lambda = W.lambda;
    OmegaSpace om = omega_space(W);
    cert.omega_dim = om.dim();
    cert.top_only = true;
    for (size_t d = 1; d < om.dims_by_depth.size(); ++d)
        if (om.dims_by_depth[d] != 0) cert.top_only = false;

    Mat<Rat> Ae = om.action_of(eX);
    Mat<Rat> p = Ae;
    for (long k = 1; k < pow; ++k) p = mat_mul(p, Ae);
    cert.epower_zero = is_zero_mat(p);

    // Casimir of the fixed subalgebra w.r.t. the restricted invariant form
    const auto& td0 = *W.td0;
    int dim0 = td0.dim();
    Mat<Rat> aug(dim0, std::vector<Rat>(2 * dim0, Rat(0)));
    for (int i = 0; i < dim0; ++i) {
        for (int j = 0; j < dim0; ++j) aug[i][j] = td0.form_pair_sub(i, j);
        aug[i][dim0 + i] = Rat(1);
    }
    auto piv = row_reduce(aug);
    if ((int)piv.size() != dim0 || piv.back() >= dim0)
        throw std::logic_error("certify: restricted form degenerate");
    std::vector<Mat<Rat>> acts(dim0);
    for (int i = 0; i < dim0; ++i) acts[i] = om.action_of(td0.basis_elem(i));
    int n = om.dim();
    Mat<Rat> cas(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < dim0; ++i)
        for (int j = 0; j < dim0; ++j) {
            Rat c = aug[j][dim0 + i];  // (B^{-1})_{ji}
            if (field_is_zero(c)) continue;
            Mat<Rat> prod = mat_mul(acts[i], acts[j]);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) cas[a][b] += c * prod[a][b];
        }
    cert.casimir_squarefree = minpoly_squarefree(cas);

    // decompose Omega into integral joint eigenspaces of the simple coroots
    std::vector<Mat<Rat>> spaces;
    if (n > 0) {
        Mat<Rat> full;
        for (int j = 0; j < n; ++j) {
            std::vector<Rat> e(n, Rat(0));
            e[j] = Rat(1);
            full.push_back(std::move(e));
        }
        spaces.push_back(std::move(full));
    }
    bool ok = n > 0;
    for (size_t i = 0; i < td0.simples.size() && ok; ++i) {
        Mat<Rat> H = om.action_of(td0.positive[td0.simples[i]].H);
        ok = split_by_integer_eigen(H, spaces);
    }
    cert.weight_split = ok;

    for (const auto& w : classify_weights(*W.g, *W.aut, W.level).weights)
        if (w.lambda == W.lambda) {
            cert.admissible = w.admissible;
            break;
        }
    return cert;
}

Mat<Rat> epower_via_sigma(const TwistedY0& Y, const OmegaSpace& om, const LieVec& eX,
                          long pow, const Rat& level) {
    // o(i(eX)) = o(eX(-1)1) + level <e, eX> o(1), and o(1) acts as the
    // identity, so the scalar part is applied directly
    const auto& V = Y.V();
    ModVec st = V.current(eX);
    Rat c = V.algebra().form_pair(V.automorphism().e, eX) * level;
    int n = om.dim();
    Mat<Rat> out(n, std::vector<Rat>(n, Rat(0)));
    const auto& Q = om.W->simple();
    const auto& M = *om.W->mod;
    for (int j = 0; j < n; ++j) {
        ModVec cur = om.basis[j];
        for (long k = 0; k < pow; ++k) {
            ModVec nxt = Y.o_mode(st, cur);
            if (!field_is_zero(c)) voa::mv_axpy(nxt, c, cur);
            cur = Q.reduce(nxt);
        }
        std::vector<Rat> dense(M.total_dim(), Rat(0));
        for (const auto& [m, cc] : cur) dense[(size_t)M.coord_of(m)] = cc;
        auto x = om.coords_solver->solve(dense);
        if (!x) throw std::logic_error("epower_via_sigma: image escapes Omega");
        for (int i = 0; i < n; ++i) out[i][j] = (*x)[i];
    }
    return out;
}

} // namespace zhualg::classify
