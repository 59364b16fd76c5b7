#include "zhualg/zhu.hpp"

namespace zhualg::zhu {

namespace {

Rat frac(long n, long d) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

} // namespace

ZhuContext::ZhuContext(std::shared_ptr<const lie::LieAlgebra> g,
                       std::shared_ptr<const lie::Automorphism> aut,
                       const Rat& level, long cap)
    : g_(std::move(g)), aut_(std::move(aut)), level_(level), cap_(cap), budget_(cap),
      V_(g_, aut_, level_, cap_),
      td0_(lie::fixed_subalgebra(*g_, *aut_)),
      g0_(lie::reify(td0_, "fixed")) {
    build_span();
}

LieVec ZhuContext::fixed_elem(int k) const { return td0_.basis_elem(k); }

std::map<std::pair<long, int>, ModVec> ZhuContext::split(const ModVec& u) const {
    std::map<std::pair<long, int>, ModVec> out;
    for (const auto& [m, c] : u) out[{m.depth(), V_.mono_class(m)}][m] = c;
    return out;
}

// Res_x x^{-1-delta-shift} Y((1+x)^{wt + N - 1 + delta + alpha/T} u, x) v for a
// (weight, class)-homogeneous u
ModVec ZhuContext::circ_piece(const ModVec& u, long wt, int alpha, const ModVec& v,
                              long shift) const {
    int T = V_.sectors().T;
    long delta = (alpha == 0) ? 1 : 0;
    Rat escalar = Rat(wt - 1 + delta) + frac(alpha, T);
    ModVec out, b = u;
    for (long j = 0;; ++j) {
        if (j > 0) {
            // b_j = (E - (j-1)) b_{j-1} / j with E = escalar + N
            ModVec nb = V_.apply_N(b);
            mv_axpy(nb, escalar - (j - 1), b);
            mv_scale(nb, Rat(1) / Rat(j));
            b = std::move(nb);
        }
        long mode = j - 1 - delta - shift;
        // every v-mono has the same depth shift; stop once all results vanish
        bool any = false;
        for (const auto& [mv2, cv] : v)
            if (mv2.depth() + wt - mode - 1 >= 0) { any = true; break; }
        if (!any) break;
        if (!b.empty()) mv_axpy(out, Rat(1), V_.vertex_mode(b, mode, v));
    }
    return out;
}

ModVec ZhuContext::star_piece(const ModVec& u, long wt, const ModVec& v) const {
    Rat escalar(wt);
    ModVec out, b = u;
    for (long j = 0;; ++j) {
        if (j > 0) {
            ModVec nb = V_.apply_N(b);
            mv_axpy(nb, escalar - (j - 1), b);
            mv_scale(nb, Rat(1) / Rat(j));
            b = std::move(nb);
        }
        long mode = j - 1;
        bool any = false;
        for (const auto& [mv2, cv] : v)
            if (mv2.depth() + wt - mode - 1 >= 0) { any = true; break; }
        if (!any) break;
        if (!b.empty()) mv_axpy(out, Rat(1), V_.vertex_mode(b, mode, v));
    }
    return out;
}

ModVec ZhuContext::circ(const ModVec& u, const ModVec& v) const {
    return circ_shift(u, v, 0);
}

ModVec ZhuContext::circ_shift(const ModVec& u, const ModVec& v, long k) const {
    ModVec out;
    for (const auto& [key, piece] : split(u))
        mv_axpy(out, Rat(1), circ_piece(piece, key.first, key.second, v, k));
    return out;
}

ModVec ZhuContext::star(const ModVec& u, const ModVec& v) const {
    ModVec out;
    for (const auto& [key, piece] : split(u)) {
        if (key.second != 0) continue;  // u *_g v = 0 off the fixed sector
        mv_axpy(out, Rat(1), star_piece(piece, key.first, v));
    }
    return out;
}

void ZhuContext::build_span() {
    const auto& M = V_.module();
    // rows u o_g v over basis monomials with wt u + wt v + delta <= budget
    for (long du = 0; du <= budget_; ++du) {
        for (const auto& um : M.basis_at(du)) {
            ModVec uv{{um, Rat(1)}};
            int alpha = V_.mono_class(um);
            long delta = (alpha == 0) ? 1 : 0;
            if (du + delta > budget_) continue;
            for (long dv = 0; dv + du + delta <= budget_; ++dv) {
                for (const auto& vm : M.basis_at(dv)) {
                    ModVec row = circ(uv, ModVec{{vm, Rat(1)}});
                    if (!row.empty()) span_.add(M.coords(row));
                }
            }
        }
    }
    // deeper current rows Res_x x^{-1-delta-k} Y((1+x)^{...} a(-1)1, x) v
    for (int s = 0; s < V_.sectors().dim(); ++s) {
        ModVec cur = M.act(s, -1, M.vacuum_like(0));
        long delta = (V_.sectors().cls[s] == 0) ? 1 : 0;
        for (long k = 1; 1 + delta + k <= budget_; ++k) {
            for (long dv = 0; 1 + dv + delta + k <= budget_; ++dv) {
                for (const auto& vm : M.basis_at(dv)) {
                    ModVec row = circ_shift(cur, ModVec{{vm, Rat(1)}}, k);
                    if (!row.empty()) span_.add(M.coords(row));
                }
            }
        }
    }
}

ModVec ZhuContext::zhu_reduce(const ModVec& v) const {
    return V_.module().from_coords(span_.reduce(V_.module().coords(v)));
}

ModVec ZhuContext::star_reduced(const ModVec& u, const ModVec& v) const {
    return zhu_reduce(star(u, v));
}

ModVec ZhuContext::i_of(const LieVec& a) const {
    SVec<Rat> sec = V_.sectors().to_sector(a);
    for (const auto& [s, c] : sec)
        if (V_.sectors().cls[s] != 0)
            throw std::invalid_argument("i(a): element not in the fixed sector");
    ModVec out = V_.module().act_elem(sec, -1, V_.module().vacuum_like(0));
    Rat ee = g_->form_pair(aut_->e, a) * level_;
    if (!field_is_zero(ee)) mv_axpy(out, ee, V_.vacuum());
    return out;
}

ModVec ZhuContext::map_I(const std::vector<LieVec>& word) const {
    if (word.empty()) return zhu_reduce(V_.vacuum());
    ModVec acc = zhu_reduce(i_of(word[0]));
    for (size_t k = 1; k < word.size(); ++k) acc = star_reduced(acc, i_of(word[k]));
    return acc;
}

ModVec ZhuContext::map_I(const uea::PBW& p) const {
    ModVec out;
    for (const auto& [w, c] : p) {
        std::vector<LieVec> word;
        for (int k : w) word.push_back(fixed_elem(k));
        mv_axpy(out, c, map_I(word));
    }
    return zhu_reduce(out);
}

ModVec ZhuContext::zhu_power(const ModVec& cls, long k) const {
    if (k <= 0) return zhu_reduce(V_.vacuum());
    ModVec acc = zhu_reduce(cls);
    for (long j = 1; j < k; ++j) acc = star_reduced(acc, cls);
    return acc;
}

std::vector<long> ZhuContext::map_I_dims(long dmax) const {
    std::vector<long> dims;
    SparseEchelon<Rat> ech;
    const auto& M = V_.module();
    std::vector<std::vector<int>> words = {{}};
    ech.add(M.coords(map_I(std::vector<LieVec>{})));
    dims.push_back(ech.rank());
    size_t lo = 0;
    for (long d = 1; d <= dmax; ++d) {
        size_t hi = words.size();
        for (size_t i = lo; i < hi; ++i) {
            int start = words[i].empty() ? 0 : words[i].back();
            for (int k = start; k < g0_.dim; ++k) {
                auto w = words[i];
                w.push_back(k);
                std::vector<LieVec> word;
                for (int b : w) word.push_back(fixed_elem(b));
                ech.add(M.coords(map_I(word)));
                words.push_back(std::move(w));
            }
        }
        lo = hi;
        dims.push_back(ech.rank());
    }
    return dims;
}

std::pair<ModVec, ModVec> ZhuContext::lie_relation(const ModVec& u, const ModVec& v) const {
    ModVec lhs = star(u, v);
    mv_axpy(lhs, Rat(-1), star(v, u));
    // Res_x Y((1+x)^{wt u + N - 1} u, x) v = sum_j (b_j)_j v
    ModVec rhs;
    for (const auto& [key, piece] : split(u)) {
        if (key.second != 0) continue;
        Rat escalar(key.first - 1);
        ModVec b = piece;
        for (long j = 0;; ++j) {
            if (j > 0) {
                ModVec nb = V_.apply_N(b);
                mv_axpy(nb, escalar - (j - 1), b);
                mv_scale(nb, Rat(1) / Rat(j));
                b = std::move(nb);
            }
            bool any = false;
            for (const auto& [mv2, cv] : v)
                if (mv2.depth() + key.first - j - 1 >= 0) { any = true; break; }
            if (!any) break;
            if (!b.empty()) mv_axpy(rhs, Rat(1), V_.vertex_mode(b, j, v));
        }
    }
    return {zhu_reduce(lhs), zhu_reduce(rhs)};
}

bool ZhuContext::verify_lie_relation(const ModVec& u, const ModVec& v) const {
    auto [lhs, rhs] = lie_relation(u, v);
    return lhs == rhs;
}

} // namespace zhualg::zhu
