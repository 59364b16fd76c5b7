#include "zhualg/voa.hpp"
#include <algorithm>
#include <sstream>

namespace zhualg::voa {

namespace {

Rat frac(long n, long d) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

LieVec apply_cols(const LieAlgebra& g, const std::vector<LieVec>& cols, const LieVec& v) {
    return g.apply(cols, v);
}

// mod in [0, s)
long pos_mod(long m, long s) {
    long r = m % s;
    return r < 0 ? r + s : r;
}

Mat<Rat> invert(const Mat<Rat>& m) {
    size_t n = m.size();
    Mat<Rat> aug(n, std::vector<Rat>(2 * n, Rat(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = Rat(1);
    }
    auto piv = row_reduce(aug);
    if ((long)piv.size() != (long)n || (size_t)piv.back() >= n)
        throw std::invalid_argument("invert: singular matrix");
    Mat<Rat> out(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
    return out;
}

} // namespace

std::vector<LieVec> transpose_involution(const LieAlgebra& g) {
    std::vector<LieVec> tau(g.dim);
    for (int i = 0; i < g.rank; ++i) tau[g.h_index(i)] = g.basis_vec(g.h_index(i));
    // height recursion over positive roots (root order is by height)
    for (int r = 0; r < g.npos; ++r) {
        const auto& coords = g.rs.positive[r];
        if (g.rs.height(r) == 1) {
            int i = 0;
            while (coords[i] == 0) ++i;
            tau[g.e_index(r)] = g.basis_vec(g.f_index(r));
            tau[g.f_index(r)] = g.basis_vec(g.e_index(r));
            continue;
        }
        // find a simple i with gamma - alpha_i a positive root
        int si = -1, beta = -1;
        for (int i = 0; i < g.rank && si < 0; ++i) {
            if (coords[i] == 0) continue;
            auto c = coords;
            c[i] -= 1;
            auto it = g.rs.index.find(c);
            if (it != g.rs.index.end()) { si = i; beta = it->second; }
        }
        if (si < 0) throw std::logic_error("transpose_involution: no root decomposition");
        int se = -1;  // positive-root index of alpha_si
        {
            std::vector<long> c(g.rank, 0);
            c[si] = 1;
            se = g.rs.index.at(c);
        }
        {   // [e_si, e_beta] = N e_r
            const LieVec& b = g.br[g.e_index(se)][g.e_index(beta)];
            auto it = b.find(g.e_index(r));
            if (it == b.end() || b.size() != 1)
                throw std::logic_error("transpose_involution: bad e-bracket");
            Rat N = it->second;
            LieVec t = g.bracket(tau[g.e_index(beta)], tau[g.e_index(se)]);
            sv_scale(t, Rat(1) / N);
            tau[g.e_index(r)] = std::move(t);
        }
        {   // [f_si, f_beta] = M f_r
            const LieVec& b = g.br[g.f_index(se)][g.f_index(beta)];
            auto it = b.find(g.f_index(r));
            if (it == b.end() || b.size() != 1)
                throw std::logic_error("transpose_involution: bad f-bracket");
            Rat M = it->second;
            LieVec t = g.bracket(tau[g.f_index(beta)], tau[g.f_index(se)]);
            sv_scale(t, Rat(1) / M);
            tau[g.f_index(r)] = std::move(t);
        }
    }
    // verify: anti-automorphism and involution
    for (int i = 0; i < g.dim; ++i) {
        LieVec tti = apply_cols(g, tau, tau[i]);
        LieVec ei = g.basis_vec(i);
        if (tti != ei) throw std::logic_error("transpose_involution: tau^2 != id");
        for (int j = 0; j < g.dim; ++j) {
            LieVec lhs = apply_cols(g, tau, g.br[i][j]);
            LieVec rhs = g.bracket(tau[j], tau[i]);
            if (lhs != rhs) throw std::logic_error("transpose_involution: not an anti-automorphism");
        }
    }
    return tau;
}

SVec<Rat> SectorBasis::to_sector(const LieVec& x) const {
    std::vector<Rat> dense(g->dim, Rat(0));
    for (const auto& [i, c] : x) dense[i] = c;
    auto sol = solver->solve(dense);
    if (!sol) throw std::logic_error("SectorBasis: vector outside span");
    SVec<Rat> out;
    for (int s = 0; s < (int)sol->size(); ++s)
        if (!field_is_zero((*sol)[s])) out[s] = (*sol)[s];
    return out;
}

LieVec SectorBasis::to_ambient(const SVec<Rat>& c) const {
    LieVec out;
    for (const auto& [s, x] : c) sv_axpy(out, x, vec[s]);
    return out;
}

SectorBasis make_sector_basis(const LieAlgebra& g, const Automorphism& aut) {
    SectorBasis sb;
    sb.g = &g;
    sb.aut = &aut;
    sb.T = aut.order;
    if (sb.T == 1) {
        for (int i = 0; i < g.dim; ++i) {
            sb.vec.push_back(g.basis_vec(i));
            sb.cls.push_back(0);
        }
    } else if (sb.T == 2) {
        auto dec = lie::eigenspace_decomposition(g, aut);
        for (int j = 0; j < 2; ++j)
            for (const auto& v : dec.rational_comp[j]) {
                sb.vec.push_back(v);
                sb.cls.push_back(j);
            }
    } else {
        throw std::invalid_argument("sector basis: automorphism order > 2 not supported "
                                    "for module construction");
    }
    int n = sb.dim();
    Mat<Rat> cols(g.dim, std::vector<Rat>(n, Rat(0)));
    for (int s = 0; s < n; ++s)
        for (const auto& [i, c] : sb.vec[s]) cols[i][s] = c;
    sb.solver = std::make_shared<LinSolver<Rat>>(cols);

    auto tau_cols = transpose_involution(g);
    // diagram automorphism and transpose must commute for the contravariant
    // pairing on twisted modules to be well defined
    for (int i = 0; i < g.dim; ++i) {
        LieVec a = aut.apply_mu(apply_cols(g, tau_cols, g.basis_vec(i)));
        LieVec b = apply_cols(g, tau_cols, aut.apply_mu(g.basis_vec(i)));
        if (a != b) throw std::logic_error("sector basis: mu and tau do not commute");
    }

    sb.br.assign(n, std::vector<SVec<Rat>>(n));
    sb.form.assign(n, std::vector<Rat>(n, Rat(0)));
    sb.ad_e.assign(n, {});
    sb.tau.assign(n, {});
    sb.e_pair.assign(n, Rat(0));
    for (int s = 0; s < n; ++s) {
        for (int t = 0; t < n; ++t) {
            LieVec b = g.bracket(sb.vec[s], sb.vec[t]);
            if (!b.empty()) sb.br[s][t] = sb.to_sector(b);
            sb.form[s][t] = g.form_pair(sb.vec[s], sb.vec[t]);
        }
        LieVec ne = aut.g->bracket(aut.e, sb.vec[s]);
        if (!ne.empty()) sb.ad_e[s] = sb.to_sector(ne);
        sb.tau[s] = sb.to_sector(apply_cols(g, tau_cols, sb.vec[s]));
        sb.e_pair[s] = g.form_pair(aut.e, sb.vec[s]);
    }
    return sb;
}

void mv_axpy(ModVec& dst, const Rat& c, const ModVec& src) {
    if (field_is_zero(c)) return;
    for (const auto& [k, v] : src) {
        auto it = dst.find(k);
        if (it == dst.end()) {
            Rat t = c * v;
            if (!field_is_zero(t)) dst.emplace(k, std::move(t));
        } else {
            it->second += c * v;
            if (field_is_zero(it->second)) dst.erase(it);
        }
    }
}

void mv_scale(ModVec& v, const Rat& c) {
    if (field_is_zero(c)) { v.clear(); return; }
    for (auto& [k, x] : v) x *= c;
}

std::string mono_str(const Mono& m, const SectorBasis& sb, int S, int top_dim) {
    std::ostringstream os;
    bool first = true;
    size_t i = 0;
    while (i < m.f.size()) {
        size_t j = i;
        while (j < m.f.size() && m.f[j] == m.f[i]) ++j;
        if (!first) os << ".";
        first = false;
        auto [n, s] = m.f[i];
        os << sb.g->coord_str(sb.vec[s]) << "(";
        if (S == 1) os << -n;
        else os << rat_str(frac(-n, S));
        os << ")";
        if (j - i > 1) os << "^" << (j - i);
        i = j;
    }
    if (m.f.empty() && top_dim == 1) return "1";
    if (top_dim > 1) {
        if (!first) os << ".";
        os << "v" << m.top;
    } else if (m.f.empty()) {
        os << "1";
    }
    return os.str();
}

std::string modvec_str(const ModVec& v, const SectorBasis& sb, int S, int top_dim) {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : v) {
        Rat a = c;
        if (!first) os << (a < 0 ? " - " : " + ");
        else if (a < 0) os << "-";
        first = false;
        Rat mag = abs(a);
        std::string ms = mono_str(m, sb, S, top_dim);
        if (mag == 1) os << ms;
        else os << rat_str(mag) << "*" << ms;
    }
    return os.str();
}

ModeModule::ModeModule(const SectorBasis* sb, const Irrep* top, const Rat& level,
                       long cap_scaled, int S)
    : sb_(sb), top_(top), level_(level), cap_(cap_scaled), S_(S) {
    if (cap_ < 0) throw std::invalid_argument("ModeModule: negative depth cap");
    if (S_ != 1 && S_ != sb_->T)
        throw std::invalid_argument("ModeModule: S must be 1 or the automorphism order");
    build_basis();
    top_mat_.resize(sb_->dim());
    for (int s = 0; s < sb_->dim(); ++s) {
        if (S_ > 1 && sb_->cls[s] % S_ != 0) continue;  // zero mode never reaches the top
        top_mat_[s] = top_->action_of(sb_->vec[s]);
    }
    build_top_gram();
}

void ModeModule::build_basis() {
    basis_.assign(cap_ + 1, {});
    for (long d = 0; d <= cap_; ++d) {
        std::vector<std::pair<int, int>> shape;
        std::vector<std::vector<std::pair<int, int>>> shapes;
        // factors (n, s), nonincreasing in (n desc, s asc) order
        auto rec = [&](auto&& self, long rem, int pn, int ps) -> void {
            if (rem == 0) { shapes.push_back(shape); return; }
            for (int n = (int)std::min<long>(rem, pn); n >= 1; --n) {
                for (int s = (n == pn ? ps : 0); s < sb_->dim(); ++s) {
                    if (pos_mod(n + sb_->cls[s], S_) != 0) continue;
                    shape.emplace_back(n, s);
                    self(self, rem - n, n, s);
                    shape.pop_back();
                }
            }
        };
        rec(rec, d, (int)std::min<long>(d, cap_), 0);
        for (auto& sh : shapes)
            for (int t = 0; t < top_->dim; ++t)
                basis_[d].push_back(Mono{sh, t});
        std::sort(basis_[d].begin(), basis_[d].end());
    }
    offset_.assign(cap_ + 1, 0);
    long run = 0;
    for (long d = cap_; d >= 0; --d) {
        offset_[d] = run;
        run += (long)basis_[d].size();
    }
    total_dim_ = run;
    for (long d = 0; d <= cap_; ++d)
        for (long i = 0; i < (long)basis_[d].size(); ++i)
            index_[basis_[d][i]] = offset_[d] + i;
}

const std::vector<Mono>& ModeModule::basis_at(long d) const {
    if (d < 0 || d > cap_) throw std::invalid_argument("basis_at: depth outside cap");
    return basis_[d];
}

long ModeModule::coord_of(const Mono& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw std::invalid_argument("coord_of: unknown monomial");
    return it->second;
}

const Mono& ModeModule::mono_of(long coord) const {
    for (long d = cap_; d >= 0; --d) {
        if (coord >= offset_[d] && coord < offset_[d] + (long)basis_[d].size())
            return basis_[d][coord - offset_[d]];
    }
    throw std::invalid_argument("mono_of: coordinate out of range");
}

SVec<Rat> ModeModule::coords(const ModVec& v) const {
    SVec<Rat> out;
    for (const auto& [m, c] : v) out[(int)coord_of(m)] = c;
    return out;
}

ModVec ModeModule::from_coords(const SVec<Rat>& c) const {
    ModVec out;
    for (const auto& [i, x] : c) out[mono_of(i)] = x;
    return out;
}

void ModeModule::check_residue(int s, long m) const {
    if (S_ == 1) return;
    if (pos_mod(m - sb_->cls[s], S_) != 0)
        throw std::invalid_argument("mode/class residue mismatch: class " +
                                    std::to_string(sb_->cls[s]) + " at scaled mode " +
                                    std::to_string(m));
}

ModVec ModeModule::act(int s, long m, const ModVec& v) const {
    ModVec out;
    for (const auto& [w, c] : v) mv_axpy(out, c, act_mono(s, m, w));
    return out;
}

ModVec ModeModule::act_elem(const SVec<Rat>& a, long m, const ModVec& v) const {
    ModVec out;
    for (const auto& [s, c] : a) mv_axpy(out, c, act(s, m, v));
    return out;
}

ModVec ModeModule::vacuum_like(int top_index) const {
    if (top_index < 0 || top_index >= top_->dim)
        throw std::invalid_argument("vacuum_like: top index out of range");
    return ModVec{{Mono{{}, top_index}, Rat(1)}};
}

ModVec ModeModule::act_mono(int s, long m, const Mono& w) const {
    check_residue(s, m);
    auto key = std::make_tuple(s, m, w);
    auto hit = act_cache_.find(key);
    if (hit != act_cache_.end()) return hit->second;

    ModVec out;
    if (w.f.empty()) {
        if (m < 0) {
            long d = -m;
            if (d > cap_)
                throw TruncationError("mode module: depth " + std::to_string(d) +
                                      " exceeds cap " + std::to_string(cap_));
            Mono nm{{{(int)d, s}}, w.top};
            out[nm] = Rat(1);
        } else if (m == 0) {
            const Mat<Rat>& M = top_mat_[s];
            if (M.empty()) throw std::logic_error("act_mono: missing top matrix");
            for (int i = 0; i < top_->dim; ++i)
                if (!field_is_zero(M[i][w.top])) {
                    Rat c = M[i][w.top];
                    out[Mono{{}, i}] = c;
                }
        }
        // m > 0 annihilates the top
    } else {
        auto [n1, s1] = w.f[0];
        Mono tail{std::vector<std::pair<int, int>>(w.f.begin() + 1, w.f.end()), w.top};
        bool place = (m < 0) && (-m > n1 || (-m == n1 && s <= s1));
        if (place) {
            long d = w.depth() - m;
            if (d > cap_)
                throw TruncationError("mode module: depth " + std::to_string(d) +
                                      " exceeds cap " + std::to_string(cap_));
            Mono nm = w;
            nm.f.insert(nm.f.begin(), {(int)-m, s});
            out[nm] = Rat(1);
        } else {
            // a(m) b(-n1) = b(-n1) a(m) + [a,b](m - n1) + central
            ModVec inner = act_mono(s, m, tail);
            out = act(s1, -(long)n1, inner);
            for (const auto& [t, c] : sb_->br[s][s1])
                mv_axpy(out, c, act_mono(t, m - n1, tail));
            if (m == n1) {
                Rat cen = frac(m, S_) * sb_->form[s][s1] * level_;
                if (!field_is_zero(cen)) {
                    auto it = out.find(tail);
                    if (it == out.end()) out.emplace(tail, cen);
                    else {
                        it->second += cen;
                        if (field_is_zero(it->second)) out.erase(it);
                    }
                }
            }
        }
    }
    act_cache_.emplace(std::move(key), out);
    return out;
}

void ModeModule::build_top_gram() {
    const TriangularData& td = *top_->td;
    int dim = top_->dim;
    int P = (int)td.positive.size(), C = (int)td.cartan.size();
    int ns = (int)td.simples.size();
    auto tau_cols = transpose_involution(*sb_->g);

    std::vector<Mat<Rat>> T_s(ns);  // action of tau(F_simple), a raising operator
    for (int j = 0; j < ns; ++j) {
        LieVec tf = sb_->g->apply(tau_cols, td.positive[td.simples[j]].F);
        T_s[j] = top_->action_of(tf);
    }

    top_gram_.assign(dim, std::vector<Rat>(dim, Rat(0)));
    top_gram_[0][0] = Rat(1);
    int nlev = (int)top_->level_offset.size();
    for (int d = 1; d < nlev; ++d) {
        int lo = top_->level_offset[d];
        int hi = (d + 1 < nlev) ? top_->level_offset[d + 1] : dim;
        int lop = top_->level_offset[d - 1];
        int hip = lo;
        int Ld = hi - lo, Lp = hip - lop;
        // express each level-d basis vector over simple-F images of level d-1
        Mat<Rat> A(Ld, std::vector<Rat>(ns * Lp, Rat(0)));
        for (int j = 0; j < ns; ++j) {
            const Mat<Rat>& F = top_->act[P + C + td.simples[j]];
            for (int u = 0; u < Lp; ++u)
                for (int r = 0; r < Ld; ++r) A[r][j * Lp + u] = F[lo + r][lop + u];
        }
        for (int jj = 0; jj < Ld; ++jj) {
            std::vector<Rat> b(Ld, Rat(0));
            b[jj] = Rat(1);
            auto z = solve(A, b);
            if (!z) throw std::logic_error("top gram: level not spanned by simple lowerings");
            for (int y = lo; y < hi; ++y) {
                Rat acc(0);
                for (int j = 0; j < ns; ++j)
                    for (int u = 0; u < Lp; ++u) {
                        const Rat& zz = (*z)[j * Lp + u];
                        if (field_is_zero(zz)) continue;
                        for (int up = 0; up < Lp; ++up) {
                            const Rat& t = T_s[j][lop + up][y];
                            if (field_is_zero(t)) continue;
                            acc += zz * t * top_gram_[lop + u][lop + up];
                        }
                    }
                top_gram_[lo + jj][y] = acc;
            }
        }
    }
    // verify contravariance for every subalgebra basis element and symmetry
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (top_gram_[i][j] != top_gram_[j][i])
                throw std::logic_error("top gram: not symmetric");
    for (int k = 0; k < td.dim(); ++k) {
        LieVec X = td.basis_elem(k);
        Mat<Rat> MX = top_->action_of(X);
        Mat<Rat> MtX = top_->action_of(sb_->g->apply(tau_cols, X));
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                Rat lhs(0), rhs(0);
                for (int r = 0; r < dim; ++r) {
                    lhs += top_gram_[i][r] * MtX[r][j];
                    rhs += MX[r][i] * top_gram_[r][j];
                }
                if (lhs != rhs) throw std::logic_error("top gram: contravariance failed");
            }
    }
}

Rat ModeModule::pair_mono(const Mono& a, const Mono& b) const {
    if (a.depth() != b.depth()) return Rat(0);
    if (a.f.empty()) return top_gram_[a.top][b.top];
    auto key = std::make_pair(a, b);
    auto hit = pair_cache_.find(key);
    if (hit != pair_cache_.end()) return hit->second;
    auto [n1, s1] = a.f[0];
    Mono tail{std::vector<std::pair<int, int>>(a.f.begin() + 1, a.f.end()), a.top};
    Rat acc(0);
    for (const auto& [sp, c] : sb_->tau[s1]) {
        ModVec moved = act_mono(sp, n1, b);
        for (const auto& [m, x] : moved) acc += c * x * pair_mono(tail, m);
    }
    pair_cache_.emplace(std::move(key), acc);
    return acc;
}

Rat ModeModule::pair(const ModVec& a, const ModVec& b) const {
    Rat acc(0);
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) acc += ca * cb * pair_mono(ma, mb);
    return acc;
}

std::vector<ModVec> ModeModule::radical_at(long d) const {
    const auto& bas = basis_at(d);
    int n = (int)bas.size();
    Mat<Rat> G(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G[i][j] = pair_mono(bas[i], bas[j]);
    auto ker = kernel_basis(G);
    std::vector<ModVec> out;
    for (const auto& k : ker) {
        ModVec v;
        for (int i = 0; i < n; ++i)
            if (!field_is_zero(k[i])) v[bas[i]] = k[i];
        out.push_back(std::move(v));
    }
    return out;
}

SimpleQuotient::SimpleQuotient(const ModeModule* base) : base_(base) {
    for (long d = 0; d <= base_->cap(); ++d)
        for (const auto& v : base_->radical_at(d)) rad_.add(base_->coords(v));
    kept_.assign(base_->cap() + 1, {});
    const auto& rows = rad_.rows();
    for (long d = 0; d <= base_->cap(); ++d)
        for (const auto& m : base_->basis_at(d))
            if (rows.find((int)base_->coord_of(m)) == rows.end()) kept_[d].push_back(m);
}

ModVec SimpleQuotient::reduce(const ModVec& v) const {
    return base_->from_coords(rad_.reduce(base_->coords(v)));
}

bool SimpleQuotient::is_zero(const ModVec& v) const { return reduce(v).empty(); }

ModVec SimpleQuotient::act(int s, long m, const ModVec& v) const {
    return reduce(base_->act(s, m, v));
}

long SimpleQuotient::dim_at(long d) const { return (long)kept_.at(d).size(); }

const std::vector<Mono>& SimpleQuotient::kept_at(long d) const { return kept_.at(d); }

VacuumVoa::VacuumVoa(std::shared_ptr<const LieAlgebra> g,
                     std::shared_ptr<const Automorphism> aut,
                     const Rat& level, long cap)
    : g_(std::move(g)), aut_(std::move(aut)), level_(level), cap_(cap) {
    if (level_ == -Rat(g_->dual_coxeter))
        throw std::invalid_argument("critical level: level = -h^vee");
    sb_ = make_sector_basis(*g_, *aut_);
    td_ = std::make_shared<TriangularData>(lie::whole_algebra_triangular(*g_));
    top_ = std::make_shared<Irrep>(lie::build_irrep(*td_, std::vector<long>(td_->simples.size(), 0)));
    if (top_->dim != 1) throw std::logic_error("vacuum top must be one-dimensional");
    mod_ = std::make_unique<ModeModule>(&sb_, top_.get(), level_, cap_, 1);
}

ModVec VacuumVoa::current(const LieVec& a) const {
    return mod_->act_elem(sb_.to_sector(a), -1, vacuum());
}

ModVec VacuumVoa::vertex_core(const Mono& u, long m, const Mono& v) const {
    if (u.f.empty()) {
        if (m == -1) return ModVec{{v, Rat(1)}};
        return {};
    }
    long D = v.depth() + u.depth() - m - 1;
    if (D < 0) return {};
    if (D > cap_)
        throw TruncationError("vertex mode: result depth " + std::to_string(D) +
                              " exceeds cap " + std::to_string(cap_));
    auto key = std::make_tuple(u, m, v);
    auto hit = vtx_cache_.find(key);
    if (hit != vtx_cache_.end()) return hit->second;

    auto [n1, s1] = u.f[0];
    Mono w{std::vector<std::pair<int, int>>(u.f.begin() + 1, u.f.end()), u.top};
    ModVec out;
    // sum over a(-n1-i) (w_{m+i} v)
    for (long i = 0;; ++i) {
        if (v.depth() + w.depth() - (m + i) - 1 < 0) break;
        ModVec inner = vertex_core(w, m + i, v);
        if (!inner.empty())
            mv_axpy(out, binom(n1 + i - 1, i), mod_->act(s1, -(n1 + i), inner));
    }
    // sum over w_{m-n1-i} (a(i) v)
    Rat sign = (n1 % 2 == 0) ? Rat(-1) : Rat(1);
    for (long i = 0; i <= v.depth(); ++i) {
        ModVec av = mod_->act_mono(s1, i, v);
        if (av.empty()) continue;
        ModVec term;
        for (const auto& [mv2, c] : av) mv_axpy(term, c, vertex_core(w, m - n1 - i, mv2));
        mv_axpy(out, sign * binom(n1 + i - 1, i), term);
    }
    vtx_cache_.emplace(std::move(key), out);
    return out;
}

ModVec VacuumVoa::vertex_mode(const ModVec& u, long m, const ModVec& v) const {
    ModVec out;
    for (const auto& [mu, cu] : u)
        for (const auto& [mv, cv] : v) mv_axpy(out, cu * cv, vertex_core(mu, m, mv));
    return out;
}

const ModVec& VacuumVoa::conformal() const {
    if (omega_built_) return omega_;
    Rat kappa = 2 * (level_ + g_->dual_coxeter);
    if (field_is_zero(kappa))
        throw std::invalid_argument("conformal vector undefined at the critical level");
    Mat<Rat> invG = invert(sb_.form);
    int n = sb_.dim();
    ModVec acc;
    for (int i = 0; i < n; ++i) {
        SVec<Rat> dual;
        for (int j = 0; j < n; ++j)
            if (!field_is_zero(invG[j][i])) dual[j] = invG[j][i];
        ModVec inner = mod_->act_elem(dual, -1, mod_->vacuum_like(0));
        mv_axpy(acc, Rat(1), mod_->act(i, -1, inner));
    }
    mv_scale(acc, Rat(1) / kappa);
    omega_ = std::move(acc);
    omega_built_ = true;
    return omega_;
}

ModVec VacuumVoa::l_op(long n, const ModVec& v) const {
    return vertex_mode(conformal(), n + 1, v);
}

ModVec VacuumVoa::apply_N(const ModVec& v) const {
    ModVec out;
    for (const auto& [m, c] : v) {
        if (m.f.empty()) continue;  // N kills the vacuum
        auto [n1, s1] = m.f[0];
        Mono tail{std::vector<std::pair<int, int>>(m.f.begin() + 1, m.f.end()), m.top};
        ModVec tail_v{{tail, Rat(1)}};
        mv_axpy(out, c, mod_->act_elem(sb_.ad_e[s1], -(long)n1, tail_v));
        mv_axpy(out, c, mod_->act(s1, -(long)n1, apply_N(tail_v)));
    }
    return out;
}

ModVec VacuumVoa::binom_N(const ModVec& u, long k) const {
    ModVec b = u;
    for (long j = 1; j <= k; ++j) {
        ModVec nb = apply_N(b);
        mv_axpy(nb, Rat(1 - j), b);
        mv_scale(nb, Rat(1) / Rat(j));
        b = std::move(nb);
    }
    return b;
}

int VacuumVoa::mono_class(const Mono& m) const {
    int c = 0;
    for (auto& [n, s] : m.f) c += sb_.cls[s];
    return pos_mod(c, sb_.T);
}

std::vector<long> submodule_closure(const ModeModule& M, const std::vector<ModVec>& seeds,
                                    bool include_zero, long mode_cap) {
    SparseEchelon<Rat> ech;
    std::vector<ModVec> work;
    auto push = [&](const ModVec& v) {
        if (v.empty()) return;
        SVec<Rat> c = M.coords(v);
        if (ech.add(c)) work.push_back(v);
    };
    for (const auto& s : seeds) push(s);
    for (size_t qi = 0; qi < work.size(); ++qi) {
        ModVec v = work[qi];
        for (int s = 0; s < M.sectors().dim(); ++s) {
            for (long m = -mode_cap; m <= mode_cap; ++m) {
                if (m == 0 && !include_zero) continue;
                if (M.S() > 1 && pos_mod(m - M.sectors().cls[s], M.S()) != 0) continue;
                try {
                    push(M.act(s, m, v));
                } catch (const TruncationError&) {
                    // outside the depth window; unreachable states are not needed
                }
            }
        }
    }
    std::vector<long> dims(M.cap() + 1, 0);
    for (const auto& [piv, row] : ech.rows()) {
        (void)row;
        dims[M.mono_of(piv).depth()] += 1;
    }
    return dims;
}

namespace {

template <class ActFn>
std::vector<ModVec> omega_at_depth(const ModeModule& M, long d,
                                   const std::vector<Mono>& bas, ActFn&& act_red,
                                   const std::vector<std::vector<Mono>>& bas_by_depth) {
    int n = (int)bas.size();
    if (n == 0) return {};
    std::vector<std::vector<Rat>> rows;
    for (int s = 0; s < M.sectors().dim(); ++s) {
        for (long m = 1; m <= d; ++m) {
            if (M.S() > 1 && pos_mod(m - M.sectors().cls[s], M.S()) != 0) continue;
            const auto& target = bas_by_depth[d - m];
            std::map<Mono, int> tidx;
            for (int i = 0; i < (int)target.size(); ++i) tidx[target[i]] = i;
            Mat<Rat> block(target.size(), std::vector<Rat>(n, Rat(0)));
            bool nonzero = false;
            for (int j = 0; j < n; ++j) {
                ModVec img = act_red(s, m, ModVec{{bas[j], Rat(1)}});
                for (const auto& [mo, c] : img) {
                    auto it = tidx.find(mo);
                    if (it == tidx.end())
                        throw std::logic_error("omega basis: image outside graded basis");
                    block[it->second][j] = c;
                    nonzero = true;
                }
            }
            if (nonzero)
                for (auto& r : block) rows.push_back(std::move(r));
        }
    }
    std::vector<ModVec> out;
    if (rows.empty()) {
        for (int j = 0; j < n; ++j) out.push_back(ModVec{{bas[j], Rat(1)}});
        return out;
    }
    auto ker = kernel_basis(rows);
    for (const auto& k : ker) {
        ModVec v;
        for (int j = 0; j < n; ++j)
            if (!field_is_zero(k[j])) v[bas[j]] = k[j];
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

std::vector<std::vector<ModVec>> omega_basis(const ModeModule& M) {
    std::vector<std::vector<Mono>> bas(M.cap() + 1);
    for (long d = 0; d <= M.cap(); ++d) bas[d] = M.basis_at(d);
    std::vector<std::vector<ModVec>> out(M.cap() + 1);
    for (long d = 0; d <= M.cap(); ++d)
        out[d] = omega_at_depth(M, d, bas[d],
                                [&](int s, long m, const ModVec& v) { return M.act(s, m, v); },
                                bas);
    return out;
}

std::vector<std::vector<ModVec>> omega_basis(const SimpleQuotient& Q) {
    const ModeModule& M = Q.base();
    std::vector<std::vector<Mono>> bas(M.cap() + 1);
    for (long d = 0; d <= M.cap(); ++d) bas[d] = Q.kept_at(d);
    std::vector<std::vector<ModVec>> out(M.cap() + 1);
    for (long d = 0; d <= M.cap(); ++d)
        out[d] = omega_at_depth(M, d, bas[d],
                                [&](int s, long m, const ModVec& v) { return Q.act(s, m, v); },
                                bas);
    return out;
}

} // namespace zhualg::voa
