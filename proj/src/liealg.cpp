#include "zhualg/liealg.hpp"
#include "zhualg/errors.hpp"
#include "zhualg/triangular.hpp"
#include <algorithm>
#include <set>
#include <sstream>

namespace zhualg::lie {

namespace {

void check(bool c, const std::string& msg) {
    if (!c) throw std::logic_error("liealg: " + msg);
}

std::vector<long> add(const std::vector<long>& a, const std::vector<long>& b, long sb = 1) {
    std::vector<long> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + sb * b[i];
    return r;
}

bool is_zero_vec(const std::vector<long>& a) {
    return std::all_of(a.begin(), a.end(), [](long x) { return x == 0; });
}

bool is_negative_of(const std::vector<long>& a) {
    for (long x : a)
        if (x > 0) return false;
    return !is_zero_vec(a);
}

// ---- root system ------------------------------------------------------

struct DiagramEdge { int a, b; };

// Simple-root Gram matrices, long roots normalized to norm 2.
Mat<Rat> simply_laced_gram(char type, int rank, std::vector<DiagramEdge>& edges) {
    edges.clear();
    if (type == 'A') {
        for (int i = 0; i + 1 < rank; ++i) edges.push_back({i, i + 1});
    } else if (type == 'D') {
        check(rank >= 3, "D_n needs n >= 3");
        for (int i = 0; i + 1 <= rank - 3; ++i) edges.push_back({i, i + 1});
        edges.push_back({rank - 3, rank - 2});
        edges.push_back({rank - 3, rank - 1});
    } else if (type == 'E') {
        check(rank >= 6 && rank <= 8, "E_n needs n in {6,7,8}");
        // chain 0-2-3-4-5(-6-7), extra node 1 attached to 3
        edges.push_back({0, 2});
        edges.push_back({2, 3});
        edges.push_back({3, 4});
        edges.push_back({4, 5});
        edges.push_back({1, 3});
        if (rank >= 7) edges.push_back({5, 6});
        if (rank == 8) edges.push_back({6, 7});
    } else {
        check(false, "not a simply-laced type");
    }
    Mat<Rat> g(rank, std::vector<Rat>(rank, Rat(0)));
    for (int i = 0; i < rank; ++i) g[i][i] = 2;
    for (auto& e : edges) {
        g[e.a][e.b] = -1;
        g[e.b][e.a] = -1;
    }
    return g;
}

RootSystem close_roots(const Mat<Rat>& gram) {
    RootSystem rs;
    rs.rank = (int)gram.size();
    rs.gram = gram;
    rs.cartan.assign(rs.rank, std::vector<long>(rs.rank, 0));
    for (int i = 0; i < rs.rank; ++i)
        for (int j = 0; j < rs.rank; ++j) {
            Rat a = 2 * gram[i][j] / gram[i][i];
            rs.cartan[i][j] = rat_to_long(a);
        }

    std::set<std::vector<long>> all;
    for (int i = 0; i < rs.rank; ++i) {
        std::vector<long> v(rs.rank, 0);
        v[i] = 1;
        all.insert(v);
        v[i] = -1;
        all.insert(v);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<long>> snapshot(all.begin(), all.end());
        for (const auto& beta : snapshot) {
            for (int i = 0; i < rs.rank; ++i) {
                std::vector<long> alpha(rs.rank, 0);
                alpha[i] = 1;
                long p = 0;
                auto down = add(beta, alpha, -1);
                while (all.count(down)) {
                    ++p;
                    down = add(down, alpha, -1);
                }
                long pairing = 0;
                for (int j = 0; j < rs.rank; ++j) pairing += beta[j] * rs.cartan[i][j];
                long q = p - pairing;
                if (q >= 1) {
                    auto up = add(beta, alpha);
                    if (!is_zero_vec(up) && !all.count(up)) {
                        all.insert(up);
                        grew = true;
                    }
                }
            }
        }
    }

    std::vector<std::vector<long>> pos;
    for (const auto& r : all)
        if (!is_negative_of(r)) pos.push_back(r);
    std::sort(pos.begin(), pos.end(), [](const auto& x, const auto& y) {
        long hx = 0, hy = 0;
        for (long v : x) hx += v;
        for (long v : y) hy += v;
        if (hx != hy) return hx < hy;
        return x < y;
    });
    rs.positive = pos;
    for (int i = 0; i < (int)pos.size(); ++i) rs.index[pos[i]] = i;
    rs.theta = (int)pos.size() - 1;
    // highest root must be unique at its height
    if (pos.size() >= 2) {
        long h1 = 0, h2 = 0;
        for (long v : pos.back()) h1 += v;
        for (long v : pos[pos.size() - 2]) h2 += v;
        check(h1 > h2, "highest root not unique");
    }
    return rs;
}

} // namespace

long RootSystem::height(int r) const {
    long h = 0;
    for (long v : positive[r]) h += v;
    return h;
}

Rat RootSystem::norm(const std::vector<long>& c) const {
    Rat n(0);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) n += Rat(c[i]) * gram[i][j] * Rat(c[j]);
    return n;
}

// ---- LieAlgebra basics ------------------------------------------------

LieVec LieAlgebra::bracket(const LieVec& x, const LieVec& y) const {
    LieVec out;
    for (const auto& [i, ci] : x)
        for (const auto& [j, cj] : y) sv_axpy(out, ci * cj, br[i][j]);
    return out;
}

Rat LieAlgebra::form_pair(const LieVec& x, const LieVec& y) const {
    Rat out(0);
    for (const auto& [i, ci] : x)
        for (const auto& [j, cj] : y)
            if (form[i][j] != 0) out += ci * cj * form[i][j];
    return out;
}

std::vector<LieVec> LieAlgebra::ad(const LieVec& x) const {
    std::vector<LieVec> cols(dim);
    for (int i = 0; i < dim; ++i) cols[i] = bracket(x, basis_vec(i));
    return cols;
}

LieVec LieAlgebra::apply(const std::vector<LieVec>& cols, const LieVec& v) const {
    LieVec out;
    for (const auto& [i, c] : v) sv_axpy(out, c, cols[i]);
    return out;
}

Rat LieAlgebra::killing(const LieVec& x, const LieVec& y) const {
    auto ax = ad(x), ay = ad(y);
    Rat tr(0);
    for (int i = 0; i < dim; ++i) {
        // (ad x ad y)_{ii}
        const LieVec& yi = ay[i];
        for (const auto& [j, c] : yi) {
            auto it = ax[j].find(i);
            if (it != ax[j].end()) tr += c * it->second;
        }
    }
    return tr;
}

int LieAlgebra::label_index(const std::string& label) const {
    for (int i = 0; i < dim; ++i)
        if (labels[i] == label) return i;
    if (label == "e_theta") return e_index(rs.theta);
    if (label == "f_theta") return f_index(rs.theta);
    if (rank == 1) {
        if (label == "e") return e_index(0);
        if (label == "h") return h_index(0);
        if (label == "f") return f_index(0);
    }
    throw std::invalid_argument("unknown basis label '" + label + "' for " + type);
}

std::string LieAlgebra::coord_str(const LieVec& v) const {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : v) {
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Rat a = abs(c);
        if (a != 1) os << rat_str(a) << "*";
        os << labels[i];
        first = false;
    }
    return os.str();
}

// ---- simply-laced construction ---------------------------------------

namespace {

LieAlgebra build_simply_laced(char type, int rank) {
    LieAlgebra g;
    g.type = std::string(1, type) + std::to_string(rank);
    g.rank = rank;
    std::vector<DiagramEdge> edges;
    auto gram = simply_laced_gram(type, rank, edges);
    g.rs = close_roots(gram);
    g.npos = (int)g.rs.positive.size();
    g.dim = 2 * g.npos + rank;

    // asymmetry function on simple roots: eps[i][j] = -1 iff i == j or
    // (i adjacent j and i < j); extended bimultiplicatively
    std::vector<std::vector<int>> eps(rank, std::vector<int>(rank, 1));
    for (int i = 0; i < rank; ++i) eps[i][i] = -1;
    for (auto& e : edges) {
        int a = std::min(e.a, e.b), b = std::max(e.a, e.b);
        eps[a][b] = -1;
    }
    auto eps_sign = [&](const std::vector<long>& a, const std::vector<long>& b) -> long {
        long parity = 0;
        for (int i = 0; i < rank; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < rank; ++j) {
                if (b[j] == 0 || eps[i][j] == 1) continue;
                parity += a[i] * b[j];
            }
        }
        return (parity % 2 + 2) % 2 ? -1 : 1;
    };

    // signed root vectors: x_{+gamma} = e_gamma, x_{-gamma} = -f_gamma.
    // [x_a, x_b] = eps(a,b) x_{a+b} when a+b is a root, -h_a when b = -a.
    auto bracket_x = [&](int s1, int r1, int s2, int r2) -> LieVec {
        auto a = g.rs.positive[r1], b = g.rs.positive[r2];
        auto sum = add(a, b, 0); // copy shape
        for (int i = 0; i < rank; ++i) sum[i] = s1 * a[i] + s2 * b[i];
        LieVec out;
        if (is_zero_vec(sum)) {
            // [x_alpha, x_{-alpha}] = -h_alpha, alpha = s1 * root r1
            for (int i = 0; i < rank; ++i)
                if (a[i] != 0) out[g.h_index(i)] = Rat(-s1 * a[i]);
            return out;
        }
        std::vector<long> sa(rank), sb(rank);
        for (int i = 0; i < rank; ++i) {
            sa[i] = s1 * a[i];
            sb[i] = s2 * b[i];
        }
        long sgn = eps_sign(sa, sb);
        if (g.rs.index.count(sum)) {
            out[g.e_index(g.rs.index.at(sum))] = Rat(sgn);
            return out;
        }
        std::vector<long> neg(rank);
        for (int i = 0; i < rank; ++i) neg[i] = -sum[i];
        if (g.rs.index.count(neg)) {
            out[g.f_index(g.rs.index.at(neg))] = Rat(-sgn);
            return out;
        }
        return out; // not a root
    };

    g.br.assign(g.dim, std::vector<LieVec>(g.dim));
    // [h_i, .]
    for (int i = 0; i < rank; ++i) {
        for (int r = 0; r < g.npos; ++r) {
            long v = 0;
            for (int j = 0; j < rank; ++j) v += g.rs.positive[r][j] * g.rs.cartan[i][j];
            if (v != 0) {
                g.br[g.h_index(i)][g.e_index(r)][g.e_index(r)] = Rat(v);
                g.br[g.h_index(i)][g.f_index(r)][g.f_index(r)] = Rat(-v);
            }
        }
    }
    // root-vector pairs; f_gamma = -x_{-gamma} flips one sign per f factor
    for (int r1 = 0; r1 < g.npos; ++r1)
        for (int r2 = 0; r2 < g.npos; ++r2) {
            g.br[g.e_index(r1)][g.e_index(r2)] = bracket_x(1, r1, 1, r2);
            LieVec ef = bracket_x(1, r1, -1, r2);
            sv_scale(ef, Rat(-1));
            g.br[g.e_index(r1)][g.f_index(r2)] = ef;
            g.br[g.f_index(r1)][g.f_index(r2)] = bracket_x(-1, r1, -1, r2);
        }
    // antisymmetry closure for the remaining blocks
    for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j)
            if (g.br[i][j].empty() && !g.br[j][i].empty()) {
                LieVec v = g.br[j][i];
                sv_scale(v, Rat(-1));
                g.br[i][j] = v;
            }

    // normalized invariant form
    g.form.assign(g.dim, std::vector<Rat>(g.dim, Rat(0)));
    for (int r = 0; r < g.npos; ++r) {
        Rat nrm = g.rs.norm(g.rs.positive[r]);
        g.form[g.e_index(r)][g.f_index(r)] = 2 / nrm;
        g.form[g.f_index(r)][g.e_index(r)] = 2 / nrm;
    }
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) {
            // <h_i, h_j> = 4 (a_i, a_j) / ((a_i,a_i)(a_j,a_j))
            g.form[g.h_index(i)][g.h_index(j)] =
                4 * g.rs.gram[i][j] / (g.rs.gram[i][i] * g.rs.gram[j][j]);
        }

    // labels
    g.labels.resize(g.dim);
    for (int r = 0; r < g.npos; ++r) {
        g.labels[g.e_index(r)] = "e" + std::to_string(r + 1);
        g.labels[g.f_index(r)] = "f" + std::to_string(r + 1);
    }
    for (int i = 0; i < rank; ++i) g.labels[g.h_index(i)] = "h" + std::to_string(i + 1);
    if (rank == 1) {
        g.labels = {"e", "h", "f"};
    }

    // dual Coxeter number from the Killing ratio kappa = 2 h^vee <.,.>
    LieVec et = g.basis_vec(g.e_index(g.rs.theta)), ft = g.basis_vec(g.f_index(g.rs.theta));
    Rat kappa = g.killing(et, ft);
    Rat pair = g.form_pair(et, ft);
    g.dual_coxeter = kappa / (2 * pair);
    return g;
}

} // namespace

// ---- automorphisms ----------------------------------------------------

Automorphism diagram_automorphism(const LieAlgebra& g, const std::vector<int>& perm,
                                  const LieVec& e) {
    check((int)perm.size() == g.rank, "perm size != rank");
    for (int i = 0; i < g.rank; ++i)
        for (int j = 0; j < g.rank; ++j)
            check(g.rs.cartan[perm[i]][perm[j]] == g.rs.cartan[i][j],
                  "permutation does not preserve the Cartan matrix");

    Automorphism a;
    a.g = &g;
    a.perm = perm;
    a.order = 1;
    {
        // order of the permutation
        std::vector<int> p(perm);
        auto is_id = [&](const std::vector<int>& q) {
            for (int i = 0; i < (int)q.size(); ++i)
                if (q[i] != i) return false;
            return true;
        };
        while (!is_id(p)) {
            std::vector<int> q(p.size());
            for (size_t i = 0; i < p.size(); ++i) q[i] = perm[p[i]];
            p = q;
            ++a.order;
            check(a.order <= 6, "unexpected permutation order");
        }
    }
    check(a.order <= 3, "diagram automorphisms of order > 3 not supported");

    a.mu.assign(g.dim, LieVec{});
    for (int i = 0; i < g.rank; ++i) a.mu[g.h_index(i)] = g.basis_vec(g.h_index(perm[i]));

    // image of a positive root under the permutation
    auto apply_perm = [&](const std::vector<long>& c) {
        std::vector<long> out(g.rank, 0);
        for (int i = 0; i < g.rank; ++i) out[perm[i]] = c[i];
        return out;
    };
    // extend over root vectors by height recursion
    for (int r = 0; r < g.npos; ++r) {
        const auto& c = g.rs.positive[r];
        long h = g.rs.height(r);
        LieVec img;
        if (h == 1) {
            int i = 0;
            while (c[i] == 0) ++i;
            img = g.basis_vec(g.e_index(g.rs.index.at(apply_perm(c))));
        } else {
            // c = alpha_i + beta with beta positive
            int si = -1, rb = -1;
            for (int i = 0; i < g.rank && si < 0; ++i) {
                if (c[i] == 0) continue;
                std::vector<long> beta(c);
                beta[i] -= 1;
                auto it = g.rs.index.find(beta);
                if (it != g.rs.index.end()) {
                    // need [e_i, e_beta] != 0
                    const LieVec& b = g.br[g.e_index(g.rs.index.at(
                        [&] {
                            std::vector<long> s(g.rank, 0);
                            s[i] = 1;
                            return s;
                        }()))][g.e_index(it->second)];
                    if (!b.empty()) {
                        si = i;
                        rb = it->second;
                    }
                }
            }
            check(si >= 0, "no decomposition for positive root");
            std::vector<long> s(g.rank, 0);
            s[si] = 1;
            int ei = g.e_index(g.rs.index.at(s));
            const LieVec& b = g.br[ei][g.e_index(rb)];
            check(b.size() == 1, "root decomposition bracket not a single vector");
            Rat n = b.begin()->second;
            img = g.bracket(a.mu[ei], a.mu[g.e_index(rb)]);
            sv_scale(img, 1 / n);
        }
        check(img.size() == 1, "mu image of root vector not a single basis vector");
        int tgt = img.begin()->first;
        Rat cgamma = img.begin()->second;
        check(tgt == g.e_index(g.rs.index.at(apply_perm(c))), "mu image lands on wrong root");
        check(cgamma == 1 || cgamma == -1, "mu sign not +-1");
        a.mu[g.e_index(r)] = img;
        a.mu[g.f_index(r)] = LieVec{{g.f_index(g.rs.index.at(apply_perm(c))), cgamma}};
    }

    // verify the order on the full basis
    {
        std::vector<LieVec> acc(g.dim);
        for (int i = 0; i < g.dim; ++i) acc[i] = g.basis_vec(i);
        for (int t = 0; t < a.order; ++t)
            for (int i = 0; i < g.dim; ++i) acc[i] = g.apply(a.mu, acc[i]);
        for (int i = 0; i < g.dim; ++i)
            check(acc[i] == g.basis_vec(i), "mu does not have the permutation's order");
    }

    // nilpotent part
    a.e = e;
    if (!e.empty()) {
        LieVec fixed_test = a.apply_mu(e);
        check(fixed_test == e, "e must lie in the mu-fixed subalgebra");
    }
    a.ad_e = g.ad(e);
    {
        std::vector<LieVec> power(g.dim);
        bool zero = e.empty();
        a.nilindex = 1; // ad(0)^1 = 0 already
        if (!zero) {
            for (int i = 0; i < g.dim; ++i) power[i] = a.ad_e[i];
            int guard = 0;
            while (true) {
                bool all0 = true;
                for (int i = 0; i < g.dim && all0; ++i) all0 = power[i].empty();
                if (all0) break;
                ++a.nilindex;
                check(++guard <= g.dim + 1, "e is not nilpotent");
                for (int i = 0; i < g.dim; ++i) power[i] = a.apply_ad_e(power[i]);
            }
        }
    }

    // sigma = mu . exp(ad e)
    a.sigma.assign(g.dim, LieVec{});
    for (int i = 0; i < g.dim; ++i) {
        LieVec acc = g.basis_vec(i), term = g.basis_vec(i);
        Rat fact(1);
        int k = 0;
        while (true) {
            term = a.apply_ad_e(term);
            if (term.empty()) break;
            ++k;
            fact *= k;
            LieVec t = term;
            sv_scale(t, 1 / fact);
            sv_axpy(acc, Rat(1), t);
            check(k <= g.dim, "exp(ad e) did not terminate");
        }
        a.sigma[i] = a.apply_mu(acc);
    }
    return a;
}

Automorphism diagram_automorphism(const LieAlgebra& g, const std::string& kind,
                                  const LieVec& e) {
    std::vector<int> perm(g.rank);
    for (int i = 0; i < g.rank; ++i) perm[i] = i;
    char t = g.type[0];
    if (kind == "id" || kind.empty()) {
        // identity
    } else if (kind == "flip") {
        if (t == 'A') {
            for (int i = 0; i < g.rank; ++i) perm[i] = g.rank - 1 - i;
        } else if (t == 'D') {
            std::swap(perm[g.rank - 2], perm[g.rank - 1]);
        } else if (t == 'E' && g.rank == 6) {
            perm = {5, 1, 4, 3, 2, 0};
        } else {
            throw std::invalid_argument("no flip automorphism for " + g.type);
        }
    } else if (kind == "triality") {
        if (t == 'D' && g.rank == 4) {
            perm = {2, 1, 3, 0}; // cycle outer nodes 0 -> 2 -> 3 -> 0
        } else {
            throw std::invalid_argument("triality only exists for D4");
        }
    } else {
        throw std::invalid_argument("unknown automorphism kind '" + kind + "'");
    }
    return diagram_automorphism(g, perm, e);
}

EigenDecomposition eigenspace_decomposition(const LieAlgebra& g, const Automorphism& aut) {
    EigenDecomposition d;
    d.T = aut.order;
    d.comp.resize(d.T);
    d.dims.resize(d.T);
    for (int j = 0; j < d.T; ++j) {
        Mat<Cyc> m(g.dim, std::vector<Cyc>(g.dim, Cyc(d.T)));
        for (int col = 0; col < g.dim; ++col)
            for (const auto& [row, c] : aut.mu[col]) m[row][col] = Cyc(d.T, c);
        Cyc z = root_of_unity(d.T, j);
        for (int i = 0; i < g.dim; ++i) m[i][i] = m[i][i] - z;
        d.comp[j] = kernel_basis(m);
        d.dims[j] = (int)d.comp[j].size();
    }
    int total = 0;
    for (int x : d.dims) total += x;
    check(total == g.dim, "eigenspace dimensions do not add up");
    if (d.T <= 2) {
        d.rational_comp.resize(d.T);
        for (int j = 0; j < d.T; ++j)
            for (const auto& v : d.comp[j]) {
                LieVec lv;
                for (int i = 0; i < g.dim; ++i) {
                    check(v[i].is_rational(), "unexpected irrational eigenvector");
                    if (v[i].a != 0) lv[i] = v[i].a;
                }
                d.rational_comp[j].push_back(lv);
            }
    }
    return d;
}

int ad_e_block_size(const Automorphism& aut, const LieVec& v) {
    LieVec cur = v;
    int m = 0;
    while (!cur.empty()) {
        cur = aut.apply_ad_e(cur);
        ++m;
        check(m <= aut.g->dim + 1, "ad(e) not nilpotent on v");
    }
    return m;
}

LieVec highest_root_vector(const LieAlgebra& g) {
    return g.basis_vec(g.e_index(g.rs.theta));
}

// ---- folded types and the public builder ------------------------------

LieAlgebra build_lie_algebra(char type, int rank) {
    switch (type) {
        case 'A':
            check(rank >= 1, "A_n needs n >= 1");
            return build_simply_laced('A', rank);
        case 'D':
            return build_simply_laced('D', rank);
        case 'E':
            return build_simply_laced('E', rank);
        case 'B': {
            check(rank >= 2, "B_n needs n >= 2 (B_1 = A_1)");
            LieAlgebra amb = build_simply_laced('D', rank + 1);
            Automorphism mu = diagram_automorphism(amb, "flip");
            auto td = fixed_subalgebra(amb, mu);
            return reify(td, "B" + std::to_string(rank));
        }
        case 'C': {
            check(rank >= 2, "C_n needs n >= 2 (C_1 = A_1)");
            LieAlgebra amb = build_simply_laced('A', 2 * rank - 1);
            Automorphism mu = diagram_automorphism(amb, "flip");
            auto td = fixed_subalgebra(amb, mu);
            return reify(td, "C" + std::to_string(rank));
        }
        case 'F': {
            check(rank == 4, "F_n needs n = 4");
            LieAlgebra amb = build_simply_laced('E', 6);
            Automorphism mu = diagram_automorphism(amb, "flip");
            auto td = fixed_subalgebra(amb, mu);
            return reify(td, "F4");
        }
        case 'G': {
            check(rank == 2, "G_n needs n = 2");
            LieAlgebra amb = build_simply_laced('D', 4);
            Automorphism mu = diagram_automorphism(amb, "triality");
            auto td = fixed_subalgebra(amb, mu);
            return reify(td, "G2");
        }
        default:
            throw std::invalid_argument("unknown type letter");
    }
}

LieAlgebra build_lie_algebra(const std::string& name) {
    check(!name.empty(), "empty algebra name");
    if (name.rfind("sl", 0) == 0) {
        int n = std::stoi(name.substr(2));
        check(n >= 2, "sl_n needs n >= 2");
        return build_lie_algebra('A', n - 1);
    }
    char t = (char)std::toupper(name[0]);
    int r = std::stoi(name.substr(1));
    return build_lie_algebra(t, r);
}

} // namespace zhualg::lie
