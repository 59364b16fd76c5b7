#include "zhualg/irrep.hpp"
#include "zhualg/errors.hpp"
#include <algorithm>

namespace zhualg::lie {

namespace {

void check(bool c, const std::string& msg) {
    if (!c) throw std::logic_error("irrep: " + msg);
}

Mat<Rat> mat_mul(const Mat<Rat>& a, const Mat<Rat>& b) {
    size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    Mat<Rat> out(n, std::vector<Rat>(m, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (size_t j = 0; j < m; ++j)
                if (b[t][j] != 0) out[i][j] += a[i][t] * b[t][j];
        }
    return out;
}

Mat<Rat> mat_sub(Mat<Rat> a, const Mat<Rat>& b) {
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) a[i][j] -= b[i][j];
    return a;
}

Mat<Rat> mat_inv(Mat<Rat> m) {
    size_t n = m.size();
    Mat<Rat> aug(n, std::vector<Rat>(2 * n, Rat(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = 1;
    }
    auto piv = row_reduce(aug);
    check(piv.size() == n && (size_t)piv.back() == n - 1, "matrix not invertible");
    Mat<Rat> out(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
    return out;
}

} // namespace

Mat<Rat> Irrep::action_of(const LieVec& x) const {
    auto coords = td->resolve(x);
    Mat<Rat> out(dim, std::vector<Rat>(dim, Rat(0)));
    for (size_t k = 0; k < coords.size(); ++k) {
        if (coords[k] == 0) continue;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if (act[k][i][j] != 0) out[i][j] += coords[k] * act[k][i][j];
    }
    return out;
}

std::vector<Rat> Irrep::apply(const Mat<Rat>& m, const std::vector<Rat>& v) const {
    std::vector<Rat> out(m.size(), Rat(0));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j)
            if (m[i][j] != 0 && v[j] != 0) out[i] += m[i][j] * v[j];
    return out;
}

Mat<Rat> Irrep::casimir() const {
    int sd = td->dim();
    Mat<Rat> B(sd, std::vector<Rat>(sd));
    for (int i = 0; i < sd; ++i)
        for (int j = 0; j < sd; ++j) B[i][j] = td->form_pair_sub(i, j);
    Mat<Rat> invB = mat_inv(B);
    Mat<Rat> out(dim, std::vector<Rat>(dim, Rat(0)));
    for (int i = 0; i < sd; ++i)
        for (int j = 0; j < sd; ++j) {
            if (invB[j][i] == 0) continue;
            Mat<Rat> prod = mat_mul(act[i], act[j]);
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b) out[a][b] += invB[j][i] * prod[a][b];
        }
    return out;
}

Irrep build_irrep(const TriangularData& td, const std::vector<long>& lambda) {
    int ns = (int)td.simples.size();
    if ((int)lambda.size() != ns)
        throw std::invalid_argument("lambda length != number of simple roots");
    for (long l : lambda)
        if (l < 0) throw std::invalid_argument("lambda must be dominant integral");

    int nc = (int)td.cartan.size();
    check(nc == ns, "subalgebra not semisimple (cartan/simple count mismatch)");

    // lambda's values on the cartan basis: expand cartan[k] over simple coroots
    std::vector<std::vector<Rat>> cart_in_coroots(nc);
    {
        Mat<Rat> cols(td.ambient->dim, std::vector<Rat>(ns, Rat(0)));
        for (int i = 0; i < ns; ++i)
            for (const auto& [row, c] : td.positive[td.simples[i]].H) cols[row][i] = c;
        for (int k = 0; k < nc; ++k) {
            std::vector<Rat> b(td.ambient->dim, Rat(0));
            for (const auto& [row, c] : td.cartan[k]) b[row] = c;
            auto sol = solve(cols, b);
            check(sol.has_value(), "cartan element outside coroot span");
            cart_in_coroots[k] = *sol;
        }
    }

    Irrep ir;
    ir.td = &td;
    ir.lambda = lambda;

    // per-level data
    std::vector<int> nlev;                      // basis count per level
    std::vector<std::vector<std::vector<Rat>>> wt;     // [level][vec] on cartan basis
    std::vector<std::vector<std::vector<Rat>>> wts;    // [level][vec] on simple coroots
    std::vector<std::vector<Mat<Rat>>> Fm;      // [level][simple]: level -> level+1
    std::vector<std::vector<Mat<Rat>>> Em;      // [level][simple]: level -> level-1
    std::vector<Mat<Rat>> Gm;                   // [level] gram

    {
        nlev.push_back(1);
        std::vector<Rat> w0(nc), ws0(ns);
        for (int k = 0; k < nc; ++k) {
            Rat v(0);
            for (int i = 0; i < ns; ++i) v += cart_in_coroots[k][i] * lambda[i];
            w0[k] = v;
        }
        for (int i = 0; i < ns; ++i) ws0[i] = lambda[i];
        wt.push_back({w0});
        wts.push_back({ws0});
        Em.push_back(std::vector<Mat<Rat>>(ns));  // E on level 0 is zero (no level -1)
        Gm.push_back({{Rat(1)}});
    }

    long guard = 2;
    for (int p = 0; p < (int)td.positive.size(); ++p) {
        Rat pc = td.pair_coroot(lambda, p);
        guard += 2 * rat_to_long(Rat(pc.get_num() / pc.get_den())) + 2;
    }

    for (int d = 0;; ++d) {
        check(d <= guard, "irrep construction did not terminate");
        int n = nlev[d];
        int m = ns * n; // candidates (i, b) -> column i*n + b
        // E_j images of each candidate, as level-d coordinate vectors
        std::vector<std::vector<std::vector<Rat>>> Ecand(ns,
            std::vector<std::vector<Rat>>(m, std::vector<Rat>(n, Rat(0))));
        for (int j = 0; j < ns; ++j)
            for (int i = 0; i < ns; ++i)
                for (int b = 0; b < n; ++b) {
                    int cidx = i * n + b;
                    // E_j F_i b = F_i E_j b + delta_ij wts[d][b][i] b
                    if (d > 0) {
                        // E_j b at level d-1
                        std::vector<Rat> ejb(nlev[d - 1], Rat(0));
                        for (int r = 0; r < nlev[d - 1]; ++r) ejb[r] = Em[d][j][r][b];
                        // F_i of that, back to level d
                        for (int r = 0; r < n; ++r) {
                            Rat acc(0);
                            for (int s = 0; s < nlev[d - 1]; ++s)
                                if (Fm[d - 1][i][r][s] != 0 && ejb[s] != 0)
                                    acc += Fm[d - 1][i][r][s] * ejb[s];
                            Ecand[j][cidx][r] = acc;
                        }
                    }
                    if (i == j) Ecand[j][cidx][b] += wts[d][b][i];
                }

        // candidate Gram: <cand(i,b), cand(j,b')> = (G_d . E_i cand(j,b'))[b]
        Mat<Rat> Gc(m, std::vector<Rat>(m, Rat(0)));
        for (int i = 0; i < ns; ++i)
            for (int b = 0; b < n; ++b) {
                int row = i * n + b;
                for (int col = 0; col < m; ++col) {
                    Rat acc(0);
                    for (int k = 0; k < n; ++k)
                        if (Gm[d][b][k] != 0 && Ecand[i][col][k] != 0)
                            acc += Gm[d][b][k] * Ecand[i][col][k];
                    Gc[row][col] = acc;
                }
            }

        // greedy selection of candidates with independent Gram rows
        std::vector<int> keep;
        {
            SparseEchelon<Rat> ech;
            for (int c = 0; c < m; ++c) {
                SVec<Rat> row;
                for (int k = 0; k < m; ++k)
                    if (Gc[c][k] != 0) row[k] = Gc[c][k];
                if (ech.add(std::move(row))) keep.push_back(c);
            }
        }
        int n1 = (int)keep.size();
        if (n1 == 0) break;

        // Gram of the kept set and expansions of all candidates over it
        Mat<Rat> Gs(n1, std::vector<Rat>(n1));
        for (int a = 0; a < n1; ++a)
            for (int b = 0; b < n1; ++b) Gs[a][b] = Gc[keep[a]][keep[b]];
        Mat<Rat> invGs = mat_inv(Gs);
        // expansion x(c) = invGs . (Gc[keep][c])
        Mat<Rat> expand(n1, std::vector<Rat>(m, Rat(0))); // rows: kept basis
        for (int c = 0; c < m; ++c) {
            for (int a = 0; a < n1; ++a) {
                Rat acc(0);
                for (int b = 0; b < n1; ++b)
                    if (invGs[a][b] != 0 && Gc[keep[b]][c] != 0) acc += invGs[a][b] * Gc[keep[b]][c];
                expand[a][c] = acc;
            }
        }

        // record level d+1
        nlev.push_back(n1);
        Gm.push_back(Gs);
        std::vector<std::vector<Rat>> w1(n1), ws1(n1);
        for (int a = 0; a < n1; ++a) {
            int i = keep[a] / n, b = keep[a] % n;
            w1[a].resize(nc);
            for (int k = 0; k < nc; ++k)
                w1[a][k] = wt[d][b][k] - td.positive[td.simples[i]].tuple[k];
            ws1[a].resize(ns);
            for (int s = 0; s < ns; ++s)
                ws1[a][s] = wts[d][b][s] - td.cartan_ints[s][i];
        }
        wt.push_back(std::move(w1));
        wts.push_back(std::move(ws1));

        std::vector<Mat<Rat>> Fd(ns, Mat<Rat>(n1, std::vector<Rat>(n, Rat(0))));
        for (int i = 0; i < ns; ++i)
            for (int b = 0; b < n; ++b)
                for (int a = 0; a < n1; ++a) Fd[i][a][b] = expand[a][i * n + b];
        Fm.push_back(std::move(Fd));

        std::vector<Mat<Rat>> Ed(ns, Mat<Rat>(n, std::vector<Rat>(n1, Rat(0))));
        for (int j = 0; j < ns; ++j)
            for (int a = 0; a < n1; ++a)
                for (int r = 0; r < n; ++r) Ed[j][r][a] = Ecand[j][keep[a]][r];
        Em.push_back(std::move(Ed));
    }

    // assemble global data
    int L = (int)nlev.size();
    ir.level_offset.resize(L + 1);
    ir.level_offset[0] = 0;
    for (int d = 0; d < L; ++d) ir.level_offset[d + 1] = ir.level_offset[d] + nlev[d];
    ir.dim = ir.level_offset[L];
    ir.level_of.resize(ir.dim);
    ir.weight.resize(ir.dim);
    for (int d = 0; d < L; ++d)
        for (int b = 0; b < nlev[d]; ++b) {
            ir.level_of[ir.level_offset[d] + b] = d;
            ir.weight[ir.level_offset[d] + b] = wt[d][b];
        }

    // cross-check against the Weyl dimension formula
    check(Rat(ir.dim) == td.weyl_dim(lambda), "irrep dimension disagrees with Weyl formula");

    ir.gram.assign(ir.dim, std::vector<Rat>(ir.dim, Rat(0)));
    for (int d = 0; d < L; ++d)
        for (int a = 0; a < nlev[d]; ++a)
            for (int b = 0; b < nlev[d]; ++b)
                ir.gram[ir.level_offset[d] + a][ir.level_offset[d] + b] = Gm[d][a][b];

    int p = (int)td.positive.size();
    int sd = td.dim();
    ir.act.assign(sd, Mat<Rat>(ir.dim, std::vector<Rat>(ir.dim, Rat(0))));

    // simple E/F, cartan
    auto global_put = [&](Mat<Rat>& dst, int dl_to, int dl_from, const Mat<Rat>& blk) {
        for (size_t i = 0; i < blk.size(); ++i)
            for (size_t j = 0; j < blk[i].size(); ++j)
                dst[ir.level_offset[dl_to] + i][ir.level_offset[dl_from] + j] = blk[i][j];
    };
    for (int s = 0; s < ns; ++s) {
        int pe = td.simples[s];
        for (int d = 1; d < L; ++d) global_put(ir.act[pe], d - 1, d, Em[d][s]);          // E
        for (int d = 0; d + 1 < L; ++d) global_put(ir.act[p + nc + pe], d + 1, d, Fm[d][s]); // F
    }
    for (int k = 0; k < nc; ++k)
        for (int v = 0; v < ir.dim; ++v) ir.act[p + k][v][v] = ir.weight[v][k];

    // non-simple root vectors by height recursion
    std::vector<bool> done_e(p, false), done_f(p, false);
    for (int s = 0; s < ns; ++s) done_e[td.simples[s]] = done_f[td.simples[s]] = true;
    for (long h = 2;; ++h) {
        bool any = false, remaining = false;
        for (int q = 0; q < p; ++q) {
            if (done_e[q]) continue;
            if (td.positive[q].height != h) {
                remaining = true;
                continue;
            }
            any = true;
            // find simple s and positive r with coords(q) = unit_s + coords(r)
            int found_s = -1, found_r = -1;
            Rat ce, cf;
            for (int s = 0; s < ns && found_s < 0; ++s) {
                std::vector<long> c = td.positive[q].coords;
                c[s] -= 1;
                for (int r = 0; r < p; ++r) {
                    if (td.positive[r].coords != c || !done_e[r]) continue;
                    // ambient brackets fix the constants
                    LieVec be = td.ambient->bracket(td.positive[td.simples[s]].E, td.positive[r].E);
                    LieVec bf = td.ambient->bracket(td.positive[td.simples[s]].F, td.positive[r].F);
                    if (be.empty()) continue;
                    // be = ce * E_q
                    const LieVec& Eq = td.positive[q].E;
                    auto it = Eq.begin();
                    auto bit = be.find(it->first);
                    if (bit == be.end()) continue;
                    ce = bit->second / it->second;
                    LieVec test = Eq;
                    sv_scale(test, ce);
                    if (!(test == be)) continue;
                    const LieVec& Fq = td.positive[q].F;
                    auto itf = Fq.begin();
                    auto bitf = bf.find(itf->first);
                    check(bitf != bf.end(), "F-side bracket misaligned");
                    cf = bitf->second / itf->second;
                    LieVec testf = Fq;
                    sv_scale(testf, cf);
                    check(testf == bf, "F-side bracket not proportional");
                    found_s = s;
                    found_r = r;
                    break;
                }
            }
            check(found_s >= 0, "no bracket decomposition for positive root");
            int se = td.simples[found_s];
            Mat<Rat> com = mat_sub(mat_mul(ir.act[se], ir.act[found_r]),
                                   mat_mul(ir.act[found_r], ir.act[se]));
            for (auto& row : com)
                for (auto& x : row) x /= ce;
            ir.act[q] = std::move(com);
            Mat<Rat> comf = mat_sub(mat_mul(ir.act[p + nc + se], ir.act[p + nc + found_r]),
                                    mat_mul(ir.act[p + nc + found_r], ir.act[p + nc + se]));
            for (auto& row : comf)
                for (auto& x : row) x /= cf;
            ir.act[p + nc + q] = std::move(comf);
            done_e[q] = done_f[q] = true;
        }
        if (!remaining && !any) break;
        if (!any && remaining) check(false, "positive roots unreachable by height recursion");
    }
    return ir;
}

} // namespace zhualg::lie
