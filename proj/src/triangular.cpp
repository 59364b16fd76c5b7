#include "zhualg/triangular.hpp"
#include "zhualg/errors.hpp"
#include <algorithm>
#include <map>
#include <set>

namespace zhualg::lie {

namespace {

void check(bool c, const std::string& msg) {
    if (!c) throw std::logic_error("triangular: " + msg);
}

std::vector<Rat> dense(const LieVec& v, int dim) {
    std::vector<Rat> out(dim, Rat(0));
    for (const auto& [i, c] : v) out[i] = c;
    return out;
}

} // namespace

LieVec TriangularData::basis_elem(int k) const {
    int p = (int)positive.size(), c = (int)cartan.size();
    if (k < p) return positive[k].E;
    if (k < p + c) return cartan[k - p];
    return positive[k - p - c].F;
}

std::vector<Rat> TriangularData::resolve(const LieVec& v) const {
    auto r = solver->solve(dense(v, ambient->dim));
    if (!r) throw std::invalid_argument("vector not in the subalgebra");
    return *r;
}

bool TriangularData::contains(const LieVec& v) const {
    return solver->solve(dense(v, ambient->dim)).has_value();
}

Rat TriangularData::form_pair_sub(int i, int j) const {
    return ambient->form_pair(basis_elem(i), basis_elem(j));
}

Rat TriangularData::root_value(const Root& r, const LieVec& h) const {
    // h = sum over cartan basis; value = sum coeff * tuple
    // (resolve h over the cartan basis)
    Mat<Rat> cols(ambient->dim, std::vector<Rat>(cartan.size(), Rat(0)));
    for (size_t k = 0; k < cartan.size(); ++k)
        for (const auto& [row, c] : cartan[k]) cols[row][k] = c;
    auto sol = solve(cols, dense(h, ambient->dim));
    check(sol.has_value(), "element not in the Cartan subalgebra");
    Rat v(0);
    for (size_t k = 0; k < cartan.size(); ++k) v += (*sol)[k] * r.tuple[k];
    return v;
}

Rat TriangularData::pair_coroot(const std::vector<long>& lambda, int pos_idx) const {
    // <lambda, beta^vee> where beta^vee = sum_i c_i (beta_i,beta_i)/(beta,beta) beta_i^vee
    const Root& r = positive[pos_idx];
    int ns = (int)simples.size();
    check((int)lambda.size() == ns, "lambda has wrong length");
    // norms via <H_i, H_j> = 4 (b_i,b_j)/((b_i,b_i)(b_j,b_j))
    std::vector<Rat> nrm(ns);
    for (int i = 0; i < ns; ++i) {
        Rat hh = ambient->form_pair(positive[simples[i]].H, positive[simples[i]].H);
        check(hh != 0, "degenerate coroot");
        nrm[i] = 4 / hh; // (beta_i, beta_i)
    }
    Rat beta_norm(0);
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < ns; ++j) {
            Rat hij = ambient->form_pair(positive[simples[i]].H, positive[simples[j]].H);
            Rat bij = hij * nrm[i] * nrm[j] / 4;
            beta_norm += Rat(r.coords[i]) * Rat(r.coords[j]) * bij;
        }
    Rat out(0);
    for (int i = 0; i < ns; ++i) out += Rat(lambda[i]) * Rat(r.coords[i]) * nrm[i] / beta_norm;
    return out;
}

Rat TriangularData::weyl_dim(const std::vector<long>& lambda) const {
    std::vector<long> rho(simples.size(), 1);
    std::vector<long> lam_rho(lambda);
    for (size_t i = 0; i < lambda.size(); ++i) lam_rho[i] += 1;
    Rat prod(1);
    for (int p = 0; p < (int)positive.size(); ++p)
        prod *= pair_coroot(lam_rho, p) / pair_coroot(rho, p);
    return prod;
}

namespace {

TriangularData assemble(const LieAlgebra& g, std::vector<LieVec> cartan,
                        std::vector<std::pair<LieVec, LieVec>> rootvecs,
                        std::vector<std::vector<Rat>> tuples) {
    TriangularData td;
    td.ambient = &g;
    td.cartan = std::move(cartan);
    int np = (int)rootvecs.size();

    // group by tuple: root spaces must be one-dimensional here
    {
        std::set<std::vector<std::string>> seen;
        for (auto& t : tuples) {
            std::vector<std::string> key;
            for (auto& x : t) key.push_back(rat_str(x));
            check(!seen.count(key), "restricted root space not one-dimensional");
            seen.insert(key);
        }
    }

    // simples: positive tuples not expressible as a sum of two positive tuples
    std::vector<int> simples;
    for (int i = 0; i < np; ++i) {
        bool decomposable = false;
        for (int a = 0; a < np && !decomposable; ++a)
            for (int b = a; b < np && !decomposable; ++b) {
                bool eq = true;
                for (size_t k = 0; k < tuples[i].size(); ++k)
                    if (tuples[a][k] + tuples[b][k] != tuples[i][k]) {
                        eq = false;
                        break;
                    }
                if (eq) decomposable = true;
            }
        if (!decomposable) simples.push_back(i);
    }
    int ns = (int)simples.size();
    check(ns >= 1, "no simple restricted roots");

    // coordinates over the simple tuples (simples keep detection order,
    // which is inherited from the ambient positive-root order)
    Mat<Rat> scols(tuples[0].size(), std::vector<Rat>(ns, Rat(0)));
    for (int j = 0; j < ns; ++j)
        for (size_t k = 0; k < tuples[0].size(); ++k) scols[k][j] = tuples[simples[j]][k];
    std::vector<std::vector<long>> coords(np);
    for (int i = 0; i < np; ++i) {
        auto sol = solve(scols, tuples[i]);
        check(sol.has_value(), "restricted root outside simple-root lattice");
        coords[i].resize(ns);
        for (int j = 0; j < ns; ++j) coords[i][j] = rat_to_long((*sol)[j]);
    }

    // order: height then lex in simple-root coordinates
    std::vector<int> order(np);
    for (int i = 0; i < np; ++i) order[i] = i;
    auto hgt = [&](int i) {
        long h = 0;
        for (long c : coords[i]) h += c;
        return h;
    };
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (hgt(x) != hgt(y)) return hgt(x) < hgt(y);
        return coords[x] < coords[y];
    });

    for (int oi = 0; oi < np; ++oi) {
        int i = order[oi];
        TriangularData::Root r;
        r.tuple = tuples[i];
        r.coords = coords[i];
        r.height = hgt(i);
        r.E = rootvecs[i].first;
        r.F = rootvecs[i].second;
        td.positive.push_back(std::move(r));
    }
    // simples[j] = position of the root whose coordinates are the j-th unit vector
    td.simples.assign(ns, -1);
    for (int oi = 0; oi < np; ++oi) {
        if (td.positive[oi].height != 1) continue;
        int unit = -1;
        for (int j = 0; j < ns; ++j)
            if (td.positive[oi].coords[j] == 1) unit = j;
        check(unit >= 0 && td.simples[unit] == -1, "bad simple-root coordinates");
        td.simples[unit] = oi;
    }
    for (int j = 0; j < ns; ++j) check(td.simples[j] >= 0, "missing simple root");
    td.theta0 = np - 1;
    if (np >= 2)
        check(td.positive[np - 1].height > td.positive[np - 2].height,
              "highest restricted root not unique");

    // coroots and normalization [E, F] = H with beta(H) = 2
    for (auto& r : td.positive) {
        LieVec X = g.bracket(r.E, r.F);
        Rat v(0);
        {
            // beta(X): X lies in the Cartan span; evaluate via tuples
            Mat<Rat> ccols(g.dim, std::vector<Rat>(td.cartan.size(), Rat(0)));
            for (size_t k = 0; k < td.cartan.size(); ++k)
                for (const auto& [row, c] : td.cartan[k]) ccols[row][k] = c;
            auto sol = solve(ccols, dense(X, g.dim));
            check(sol.has_value(), "[E,F] not in the Cartan subalgebra");
            for (size_t k = 0; k < td.cartan.size(); ++k) v += (*sol)[k] * r.tuple[k];
        }
        check(v != 0, "beta([E,F]) = 0");
        Rat s = 2 / v;
        sv_scale(r.F, s);
        r.H = X;
        sv_scale(r.H, s);
    }

    // restricted Cartan integers over simples
    int nss = (int)td.simples.size();
    td.cartan_ints.assign(nss, std::vector<long>(nss, 0));
    for (int i = 0; i < nss; ++i)
        for (int j = 0; j < nss; ++j) {
            const auto& Hi = td.positive[td.simples[i]].H;
            // beta_j(H_i): use [H_i, E_j] = beta_j(H_i) E_j
            LieVec w = g.bracket(Hi, td.positive[td.simples[j]].E);
            if (w.empty()) {
                td.cartan_ints[i][j] = 0;
                continue;
            }
            const LieVec& Ej = td.positive[td.simples[j]].E;
            auto it = Ej.begin();
            auto wit = w.find(it->first);
            check(wit != w.end(), "[H,E] not proportional to E");
            Rat ratio = wit->second / it->second;
            LieVec test = Ej;
            sv_scale(test, ratio);
            check(test == w, "[H,E] not proportional to E");
            td.cartan_ints[i][j] = rat_to_long(ratio);
        }

    // solver over subalgebra basis columns
    int sd = td.dim();
    Mat<Rat> cols(g.dim, std::vector<Rat>(sd, Rat(0)));
    for (int k = 0; k < sd; ++k)
        for (const auto& [row, c] : td.basis_elem(k)) cols[row][k] = c;
    td.solver = std::make_shared<LinSolver<Rat>>(cols);
    return td;
}

} // namespace

TriangularData whole_algebra_triangular(const LieAlgebra& g) {
    std::vector<LieVec> cartan;
    for (int i = 0; i < g.rank; ++i) cartan.push_back(g.basis_vec(g.h_index(i)));
    std::vector<std::pair<LieVec, LieVec>> rv;
    std::vector<std::vector<Rat>> tuples;
    for (int r = 0; r < g.npos; ++r) {
        rv.push_back({g.basis_vec(g.e_index(r)), g.basis_vec(g.f_index(r))});
        std::vector<Rat> t(g.rank);
        for (int i = 0; i < g.rank; ++i) {
            long v = 0;
            for (int j = 0; j < g.rank; ++j) v += g.rs.positive[r][j] * g.rs.cartan[i][j];
            t[i] = v;
        }
        tuples.push_back(std::move(t));
    }
    return assemble(g, std::move(cartan), std::move(rv), std::move(tuples));
}

TriangularData fixed_subalgebra(const LieAlgebra& g, const Automorphism& aut) {
    int T = aut.order;
    if (T == 1) return whole_algebra_triangular(g);

    // Cartan: orbit sums of the h_i
    std::vector<LieVec> cartan;
    {
        std::vector<bool> used(g.rank, false);
        for (int i = 0; i < g.rank; ++i) {
            if (used[i]) continue;
            LieVec H;
            int j = i;
            do {
                used[j] = true;
                sv_axpy(H, Rat(1), g.basis_vec(g.h_index(j)));
                j = aut.perm[j];
            } while (j != i);
            cartan.push_back(std::move(H));
        }
    }

    // root vectors: full mu-averages over root orbits (catches sign-fixed
    // root vectors, whose average vanishes)
    std::vector<std::pair<LieVec, LieVec>> rv;
    std::vector<std::vector<Rat>> tuples;
    {
        std::vector<bool> used(g.npos, false);
        for (int r = 0; r < g.npos; ++r) {
            if (used[r]) continue;
            // orbit of the root under the coordinate permutation
            std::vector<int> orbit;
            std::vector<long> c = g.rs.positive[r];
            int rr = r;
            do {
                used[rr] = true;
                orbit.push_back(rr);
                std::vector<long> pc(g.rank, 0);
                for (int i = 0; i < g.rank; ++i) pc[aut.perm[i]] = c[i];
                c = pc;
                rr = g.rs.index.at(c);
            } while (rr != r);

            LieVec E, F, cur = g.basis_vec(g.e_index(r)), curf = g.basis_vec(g.f_index(r));
            for (int k = 0; k < T; ++k) {
                sv_axpy(E, Rat(1), cur);
                sv_axpy(F, Rat(1), curf);
                cur = aut.apply_mu(cur);
                curf = aut.apply_mu(curf);
            }
            Rat scale = Rat((long)orbit.size()) / T;
            sv_scale(E, scale);
            sv_scale(F, scale);
            if (E.empty()) continue; // root vector anti-fixed: nothing in g^[0]
            check(!F.empty(), "E/F averages inconsistent");

            std::vector<Rat> t(cartan.size());
            for (size_t k = 0; k < cartan.size(); ++k) {
                // value of the restricted root on cartan[k]
                Rat v(0);
                for (const auto& [row, hc] : cartan[k]) {
                    int i = row - g.h_index(0);
                    long pv = 0;
                    for (int j = 0; j < g.rank; ++j) pv += g.rs.positive[r][j] * g.rs.cartan[i][j];
                    v += hc * pv;
                }
                t[k] = v;
            }
            rv.push_back({std::move(E), std::move(F)});
            tuples.push_back(std::move(t));
        }
    }
    auto td = assemble(g, std::move(cartan), std::move(rv), std::move(tuples));

    // cross-check the dimension against the mu-fixed space
    auto eig = eigenspace_decomposition(g, aut);
    check(td.dim() == eig.dims[0], "fixed subalgebra dimension mismatch");
    return td;
}

LieAlgebra reify(const TriangularData& td, const std::string& type_label) {
    const LieAlgebra& amb = *td.ambient;
    LieAlgebra g;
    g.type = type_label;
    g.rank = (int)td.simples.size();
    g.npos = (int)td.positive.size();
    g.dim = td.dim();

    // root system data in the restricted normalization
    g.rs.rank = g.rank;
    // (beta_i, beta_j) renormalized so the highest restricted root has norm 2
    std::vector<Rat> nrm(g.rank);
    Mat<Rat> bgram(g.rank, std::vector<Rat>(g.rank, Rat(0)));
    for (int i = 0; i < g.rank; ++i) {
        Rat hh = amb.form_pair(td.positive[td.simples[i]].H, td.positive[td.simples[i]].H);
        nrm[i] = 4 / hh;
    }
    for (int i = 0; i < g.rank; ++i)
        for (int j = 0; j < g.rank; ++j) {
            Rat hij = amb.form_pair(td.positive[td.simples[i]].H, td.positive[td.simples[j]].H);
            bgram[i][j] = hij * nrm[i] * nrm[j] / 4;
        }
    const auto& th = td.positive[td.theta0].coords;
    Rat tnorm(0);
    for (int i = 0; i < g.rank; ++i)
        for (int j = 0; j < g.rank; ++j) tnorm += Rat(th[i]) * bgram[i][j] * Rat(th[j]);
    Rat cnorm = 2 / tnorm;
    g.rs.gram.assign(g.rank, std::vector<Rat>(g.rank, Rat(0)));
    for (int i = 0; i < g.rank; ++i)
        for (int j = 0; j < g.rank; ++j) g.rs.gram[i][j] = cnorm * bgram[i][j];
    g.rs.cartan.assign(g.rank, std::vector<long>(g.rank, 0));
    for (int i = 0; i < g.rank; ++i)
        for (int j = 0; j < g.rank; ++j) g.rs.cartan[i][j] = td.cartan_ints[i][j];
    for (int p = 0; p < g.npos; ++p) {
        g.rs.positive.push_back(td.positive[p].coords);
        g.rs.index[td.positive[p].coords] = p;
    }
    g.rs.theta = td.theta0;

    // structure constants via the ambient bracket
    g.br.assign(g.dim, std::vector<LieVec>(g.dim));
    for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j) {
            LieVec b = amb.bracket(td.basis_elem(i), td.basis_elem(j));
            auto coords = td.resolve(b);
            LieVec out;
            for (int k = 0; k < g.dim; ++k)
                if (coords[k] != 0) out[k] = coords[k];
            g.br[i][j] = std::move(out);
        }

    // form: restricted ambient form, renormalized
    g.form.assign(g.dim, std::vector<Rat>(g.dim, Rat(0)));
    for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j) g.form[i][j] = cnorm * td.form_pair_sub(i, j);

    g.labels.resize(g.dim);
    for (int r = 0; r < g.npos; ++r) {
        g.labels[g.e_index(r)] = "e" + std::to_string(r + 1);
        g.labels[g.f_index(r)] = "f" + std::to_string(r + 1);
    }
    for (int i = 0; i < g.rank; ++i) g.labels[g.h_index(i)] = "h" + std::to_string(i + 1);
    if (g.rank == 1) g.labels = {"e", "h", "f"};

    LieVec et = g.basis_vec(g.e_index(g.rs.theta)), ft = g.basis_vec(g.f_index(g.rs.theta));
    Rat kappa = g.killing(et, ft);
    Rat pair = g.form_pair(et, ft);
    check(pair != 0, "degenerate normalized form");
    g.dual_coxeter = kappa / (2 * pair);
    return g;
}

LieVec highest_root_vector_fixed(const LieAlgebra& g, const Automorphism& aut) {
    auto td = fixed_subalgebra(g, aut);
    return td.positive[td.theta0].E;
}

} // namespace zhualg::lie
