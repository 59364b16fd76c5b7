#include "zhualg/twisted.hpp"
#include <sstream>

namespace zhualg::twisted {

namespace {

long pos_mod(long m, long s) {
    long r = m % s;
    return r < 0 ? r + s : r;
}

Rat scaled_rat(long n, long d) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

void drop_zero_terms(AffineElt& x) {
    for (auto it = x.terms.begin(); it != x.terms.end();)
        it = it->second.empty() ? x.terms.erase(it) : std::next(it);
}

} // namespace

AffineElt affine_term(const LieVec& a, long m_scaled, const Rat& central) {
    AffineElt x;
    if (!a.empty()) x.terms[m_scaled] = a;
    x.central = central;
    return x;
}

void check_classes(const SectorBasis& sb, const AffineElt& x) {
    for (const auto& [m, a] : x.terms) {
        auto sec = sb.to_sector(a);
        for (const auto& [s, c] : sec)
            if (pos_mod(m - sb.cls[s], sb.T) != 0)
                throw std::invalid_argument(
                    "affine element: class/index mismatch at scaled mode " +
                    std::to_string(m));
    }
}

AffineElt twisted_bracket(const SectorBasis& sb, const AffineElt& x, const AffineElt& y,
                          bool sigma_cocycle) {
    check_classes(sb, x);
    check_classes(sb, y);
    const lie::LieAlgebra& g = *sb.g;
    AffineElt out;
    for (const auto& [m, a] : x.terms)
        for (const auto& [n, b] : y.terms) {
            LieVec br = g.bracket(a, b);
            if (!br.empty()) {
                auto it = out.terms.find(m + n);
                if (it == out.terms.end()) out.terms[m + n] = br;
                else sv_axpy(it->second, Rat(1), br);
            }
            if (m + n == 0) {
                Rat c = scaled_rat(m, sb.T) * g.form_pair(a, b);
                if (sigma_cocycle) c += g.form_pair(sb.aut->e, br);
                out.central += c;
            }
        }
    drop_zero_terms(out);
    return out;
}

AffineElt iso_phi(const SectorBasis& sb, const AffineElt& x, bool to_mu) {
    check_classes(sb, x);
    AffineElt out = x;
    auto it = out.terms.find(0);
    if (it != out.terms.end()) {
        Rat c = sb.g->form_pair(sb.aut->e, it->second);
        out.central += to_mu ? -c : c;
    }
    drop_zero_terms(out);
    return out;
}

const SimpleQuotient& TwistedBundle::simple() const {
    if (!simple_) simple_ = std::make_shared<SimpleQuotient>(mod.get());
    return *simple_;
}

std::vector<long> TwistedBundle::verma_dims() const {
    std::vector<long> out;
    for (long d = 0; d <= cap; ++d) out.push_back(mod->dim_at(d));
    return out;
}

std::vector<long> TwistedBundle::simple_dims() const {
    std::vector<long> out;
    for (long d = 0; d <= cap; ++d) out.push_back(simple().dim_at(d));
    return out;
}

std::shared_ptr<TwistedBundle> build_twisted_verma(
    std::shared_ptr<const lie::LieAlgebra> g,
    std::shared_ptr<const lie::Automorphism> aut,
    const std::vector<long>& lambda, const Rat& level, long cap_scaled) {
    auto b = std::make_shared<TwistedBundle>();
    b->g = std::move(g);
    b->aut = std::move(aut);
    if (level == -Rat(b->g->dual_coxeter))
        throw std::invalid_argument("critical level: level = -h^vee");
    b->sb = std::make_shared<SectorBasis>(voa::make_sector_basis(*b->g, *b->aut));
    b->td0 = std::make_shared<lie::TriangularData>(lie::fixed_subalgebra(*b->g, *b->aut));
    if (lambda.size() != b->td0->simples.size())
        throw std::invalid_argument("lambda rank mismatch with the fixed subalgebra");
    b->top = std::make_shared<lie::Irrep>(lie::build_irrep(*b->td0, lambda));
    b->lambda = lambda;
    b->level = level;
    b->cap = cap_scaled;
    b->mod = std::make_shared<ModeModule>(b->sb.get(), b->top.get(), level, cap_scaled,
                                          b->aut->order);
    return b;
}

TwistedY0::TwistedY0(std::shared_ptr<const VacuumVoa> V,
                     std::shared_ptr<const TwistedBundle> W)
    : V_(std::move(V)), W_(std::move(W)) {
    const SectorBasis& a = V_->sectors();
    const SectorBasis& b = *W_->sb;
    if (a.dim() != b.dim() || a.cls != b.cls || a.vec != b.vec)
        throw std::invalid_argument("twisted Y0: vacuum and module sector bases differ");
    int n = a.dim();
    // binom(N, k) never vanishes as an operator once N != 0 (the shifted
    // factors N - j are invertible), but the correction sum in y0_mono only
    // consults k up to the depth of the vacuum-side tail, so the table stops
    // at the vacuum cap.
    long kmax = V_->module().cap() + 2;
    bN_.assign(n, {});
    for (int s = 0; s < n; ++s) {
        SVec<Rat> cur{{s, Rat(1)}};
        for (long k = 0; k <= kmax; ++k) {
            bN_[s].push_back(cur);
            if (cur.empty()) break; // stays zero from here on
            // b_{k+1} = (N - k) b_k / (k+1)
            SVec<Rat> nxt;
            for (const auto& [t, c] : cur) sv_axpy(nxt, c, a.ad_e[t]);
            sv_axpy(nxt, Rat(-k), cur);
            for (auto& [t, c] : nxt) c /= Rat(k + 1);
            for (auto it = nxt.begin(); it != nxt.end();)
                it = field_is_zero(it->second) ? nxt.erase(it) : std::next(it);
            cur = std::move(nxt);
        }
    }
}

int TwistedY0::state_class(const ModVec& u) const {
    int c = -1;
    for (const auto& [m, x] : u) {
        int mc = V_->mono_class(m);
        if (c == -1) c = mc;
        else if (c != mc)
            throw std::invalid_argument("twisted Y0: state is not class homogeneous");
    }
    if (c == -1) c = 0;
    return c;
}

ModVec TwistedY0::sigma_current(int s, long m_scaled, const ModVec& w) const {
    ModVec out = W_->mod->act(s, m_scaled, w);
    if (m_scaled == 0) {
        Rat c = W_->sb->e_pair[s] * W_->level;
        if (!field_is_zero(c)) voa::mv_axpy(out, -c, w);
    }
    return out;
}

ModVec TwistedY0::y0_modvec(const Mono& u, long n_scaled, const ModVec& w) const {
    ModVec out;
    for (const auto& [m, c] : w) voa::mv_axpy(out, c, y0_mono(u, n_scaled, m));
    return out;
}

ModVec TwistedY0::y0_mono(const Mono& u, long n_s, const Mono& w) const {
    int T = W_->mod->S();
    if (u.f.empty()) {
        if (n_s == -T) return ModVec{{w, Rat(1)}};
        return {};
    }
    long dw = w.depth();
    long wtu = u.depth();
    long D = dw + T * wtu - n_s - T;
    if (D < 0) return {};
    if (D > W_->cap)
        throw TruncationError("twisted mode: result depth " + std::to_string(D) +
                              " exceeds cap " + std::to_string(W_->cap));
    auto key = std::make_tuple(u, n_s, w);
    auto hit = cache_.find(key);
    if (hit != cache_.end()) return hit->second;

    auto [n0p1, sa] = u.f[0];
    long n0 = n0p1 - 1;
    Mono up{std::vector<std::pair<int, int>>(u.f.begin() + 1, u.f.end()), u.top};
    long wtup = up.depth();
    int r = V_->sectors().cls[sa];
    long l_s = dw + 1;
    l_s += pos_mod(r - l_s, T);

    ModVec out;
    // creation-split sum: binom(n0+i, i) a^sigma(l-1-n0-i) (u'_{n-l+i} w)
    for (long i = 0;; ++i) {
        long up_mode = n_s - l_s + T * i;
        if (dw + T * wtup - up_mode - T < 0) break;
        ModVec inner = y0_mono(up, up_mode, w);
        if (!inner.empty()) {
            long a_mode = l_s - T * (1 + n0 + i);
            voa::mv_axpy(out, binom(n0 + i, i), sigma_current(sa, a_mode, inner));
        }
    }
    // correction sum over (q, k) != (0, 0)
    ModVec upv{{up, Rat(1)}};
    for (long k = 0; k < (long)bN_[sa].size(); ++k) {
        for (long q = 0;; ++q) {
            if (q == 0 && k == 0) continue;
            long j = q + k - 1 - n0;
            if (j > wtup) break;
            ModVec X = V_->module().act_elem(bN_[sa][k], j, upv);
            if (!X.empty()) {
                long outer = n_s - T * (q + k);
                ModVec term;
                for (const auto& [xm, xc] : X)
                    voa::mv_axpy(term, xc, y0_mono(xm, outer, w));
                voa::mv_axpy(out, -binom(scaled_rat(l_s, T), q), term);
            }
        }
    }
    cache_.emplace(std::move(key), out);
    return out;
}

ModVec TwistedY0::y0_mode(const ModVec& u, long n_scaled, const ModVec& w) const {
    if (u.empty()) return {};
    int c = state_class(u);
    if (pos_mod(n_scaled - c, T()) != 0)
        throw std::invalid_argument("twisted Y0: class/index mismatch (class " +
                                    std::to_string(c) + ", scaled mode " +
                                    std::to_string(n_scaled) + ")");
    ModVec out;
    for (const auto& [mu, cu] : u) {
        ModVec t = y0_modvec(mu, n_scaled, w);
        voa::mv_axpy(out, cu, t);
    }
    return out;
}

ModVec TwistedY0::full_mode(const ModVec& u, long n_scaled, long logpow,
                            const ModVec& w) const {
    ModVec c = u;
    for (long j = 1; j <= logpow; ++j) {
        c = V_->apply_N(c);
        voa::mv_scale(c, Rat(-1) / Rat(j));
    }
    if (c.empty()) return {};
    return y0_mode(c, n_scaled, w);
}

ModVec TwistedY0::o_mode(const ModVec& u, const ModVec& w) const {
    long wt = -1;
    for (const auto& [m, c] : u) {
        if (wt == -1) wt = m.depth();
        else if (wt != m.depth())
            throw std::invalid_argument("o(u): state is not weight homogeneous");
    }
    if (wt == -1) return {};
    return y0_mode(u, T() * (wt - 1), w);
}

namespace {

struct SideEval {
    bool thrown = false;
    ModVec val;
};

template <class Fn>
SideEval eval_side(Fn&& f) {
    SideEval out;
    try {
        out.val = f();
    } catch (const TruncationError&) {
        out.thrown = true;
    }
    return out;
}

void tally(VerifyReport& rep, const std::string& tag, const SideEval& a, const SideEval& b) {
    if (a.thrown || b.thrown) {
        rep.excluded += 1;
        return;
    }
    if (a.val.empty() && b.val.empty()) {
        rep.trivial += 1;
        return;
    }
    rep.checked += 1;
    if (a.val != b.val) {
        rep.mismatched += 1;
        if (rep.first_mismatch.empty()) rep.first_mismatch = tag;
    }
}

} // namespace

VerifyReport verify_twisted_jacobi(const TwistedY0& Y, const ModVec& u, const ModVec& v,
                                   const ModVec& w, long prange, long wrange) {
    VerifyReport rep;
    int T = Y.T();
    int cu = Y.state_class(u);
    int cv = Y.state_class(v);
    long dwmax = 0, wtv = 0;
    for (const auto& [m, c] : w) dwmax = std::max(dwmax, m.depth());
    for (const auto& [m, c] : v) wtv = std::max(wtv, m.depth());

    for (long p = -prange; p <= prange; ++p) {
        for (long q = -wrange; q <= wrange; ++q) {
            if (pos_mod(q + cu, T) != 0) continue;
            for (long r = -wrange; r <= wrange; ++r) {
                if (pos_mod(r + cv, T) != 0) continue;
                long n = -p - 1;
                auto lhs = eval_side([&] {
                    ModVec acc;
                    for (long i = 0;; ++i) {
                        long vmode = T * (i - 1) - r;
                        if (vmode > dwmax + T * wtv - T) break;
                        ModVec inner = Y.y0_mode(v, vmode, w);
                        if (!inner.empty()) {
                            long umode = -T * (p + i + 2) - q;
                            Rat sgn = (i % 2 == 0) ? Rat(1) : Rat(-1);
                            voa::mv_axpy(acc, sgn * binom(n, i),
                                         Y.y0_mode(u, umode, inner));
                        }
                    }
                    long dwv = 0;
                    for (const auto& [m, c] : u) dwv = std::max(dwv, m.depth());
                    for (long i = 0;; ++i) {
                        long umode = T * (i - 1) - q;
                        if (umode > dwmax + T * dwv - T) break;
                        ModVec inner = Y.y0_mode(u, umode, w);
                        if (!inner.empty()) {
                            long vmode = -T * (p + i + 2) - r;
                            Rat sgn = (pos_mod(n - i, 2) == 0) ? Rat(-1) : Rat(1);
                            voa::mv_axpy(acc, sgn * binom(n, i),
                                         Y.y0_mode(v, vmode, inner));
                        }
                    }
                    return acc;
                });
                auto rhs = eval_side([&] {
                    ModVec acc;
                    Rat mq = scaled_rat(-q - T, T);  // -q/T - 1
                    for (long k = 0; k < 64; ++k) {
                        ModVec bku = Y.V().binom_N(u, k);
                        if (bku.empty()) break;
                        for (long j = 0;; ++j) {
                            long jj = j + k - 1 - p;
                            if (jj > wtv) break;
                            ModVec X = Y.V().vertex_mode(bku, jj, v);
                            if (!X.empty()) {
                                long outer = -q - r - T * (j + k + 2);
                                voa::mv_axpy(acc, binom(mq, j), Y.y0_mode(X, outer, w));
                            }
                        }
                    }
                    return acc;
                });
                std::ostringstream tag;
                tag << "jacobi window p=" << p << " q=" << rat_str(scaled_rat(q, T))
                    << " r=" << rat_str(scaled_rat(r, T));
                tally(rep, tag.str(), lhs, rhs);
            }
        }
    }
    return rep;
}

VerifyReport verify_commutator(const TwistedY0& Y, const ModVec& u, const ModVec& v,
                               const ModVec& w, long mrange) {
    VerifyReport rep;
    int T = Y.T();
    int cu = Y.state_class(u);
    int cv = Y.state_class(v);
    long wtv = 0;
    for (const auto& [m, c] : v) wtv = std::max(wtv, m.depth());
    for (long ms = -mrange; ms <= mrange; ++ms) {
        if (pos_mod(ms - cu, T) != 0) continue;
        for (long ns = -mrange; ns <= mrange; ++ns) {
            if (pos_mod(ns - cv, T) != 0) continue;
            auto lhs = eval_side([&] {
                ModVec acc = Y.y0_mode(u, ms, Y.y0_mode(v, ns, w));
                voa::mv_axpy(acc, Rat(-1), Y.y0_mode(v, ns, Y.y0_mode(u, ms, w)));
                return acc;
            });
            auto rhs = eval_side([&] {
                ModVec acc;
                for (long k = 0; k < 64; ++k) {
                    ModVec bku = Y.V().binom_N(u, k);
                    if (bku.empty()) break;
                    for (long j = 0;; ++j) {
                        if (j + k > wtv) break;
                        ModVec X = Y.V().vertex_mode(bku, j + k, v);
                        if (!X.empty()) {
                            long outer = ms + ns - T * (j + k);
                            voa::mv_axpy(acc, binom(scaled_rat(ms, T), j),
                                         Y.y0_mode(X, outer, w));
                        }
                    }
                }
                return acc;
            });
            std::ostringstream tag;
            tag << "commutator window m=" << rat_str(scaled_rat(ms, T))
                << " n=" << rat_str(scaled_rat(ns, T));
            tally(rep, tag.str(), lhs, rhs);
        }
    }
    return rep;
}

VerifyReport verify_weak_associativity(const TwistedY0& Y, const ModVec& u, const ModVec& v,
                                       const ModVec& w, long arange, long brange) {
    VerifyReport rep;
    int T = Y.T();
    int cu = Y.state_class(u);
    int cv = Y.state_class(v);
    long dwmax = 0, wtu = 0, wtv = 0;
    for (const auto& [m, c] : w) dwmax = std::max(dwmax, m.depth());
    for (const auto& [m, c] : u) wtu = std::max(wtu, m.depth());
    for (const auto& [m, c] : v) wtv = std::max(wtv, m.depth());
    // l with u(n) w = 0 for all n >= l: grading bound, then spot-checked
    long l_s = dwmax + T * (wtu - 1) + 1;
    l_s += pos_mod(cu - l_s, T);
    for (long extra = 0; extra < 2; ++extra)
        if (!Y.y0_mode(u, l_s + T * extra, w).empty())
            throw std::logic_error("weak associativity: computed l is not a truncation bound");

    for (long alpha = -arange; alpha <= arange; ++alpha) {
        for (long beta = -brange; beta <= brange; ++beta) {
            if (pos_mod(beta + cv, T) != 0) continue;
            auto lhs = eval_side([&] {
                ModVec acc;
                long mtop = l_s - T * (1 + alpha);
                for (long msv = mtop; msv >= mtop - 8 * T - dwmax - T * wtv; msv -= T) {
                    long mp = l_s - msv - T * (alpha + 2) - beta;
                    if (mp > dwmax + T * wtv - T) break;  // inner annihilates from here on
                    ModVec inner = Y.y0_mode(v, mp, w);
                    if (inner.empty()) continue;
                    long pint = (l_s - msv - T) / T;      // l - m - 1, an integer
                    voa::mv_axpy(acc, binom(Rat(pint), pint - alpha),
                                 Y.y0_mode(u, msv, inner));
                }
                return acc;
            });
            auto rhs = eval_side([&] {
                ModVec acc;
                for (long k = 0; k < 64; ++k) {
                    ModVec bku = Y.V().binom_N(u, k);
                    if (bku.empty()) break;
                    for (long q = 0;; ++q) {
                        long jj = q + k - 1 - alpha;
                        if (jj > wtv) break;
                        ModVec X = Y.V().vertex_mode(bku, jj, v);
                        if (!X.empty()) {
                            long outer = l_s - T * (q + k + 1) - beta;
                            voa::mv_axpy(acc, binom(scaled_rat(l_s, T), q),
                                         Y.y0_mode(X, outer, w));
                        }
                    }
                }
                return acc;
            });
            std::ostringstream tag;
            tag << "weak assoc window a=" << alpha << " b=" << rat_str(scaled_rat(beta, T));
            tally(rep, tag.str(), lhs, rhs);
        }
    }
    return rep;
}

VerifyReport verify_power_field(const TwistedY0& Y, const LieVec& f, long pow,
                                long depth_cap) {
    const SectorBasis& sb = *Y.W().sb;
    int T = Y.T();
    SVec<Rat> sec = sb.to_sector(f);
    if (sec.empty()) throw std::invalid_argument("power field: zero vector");
    int cf = -1;
    for (const auto& [s, c] : sec) {
        if (cf == -1) cf = sb.cls[s];
        else if (cf != sb.cls[s])
            throw std::invalid_argument("power field: vector is not class homogeneous");
    }
    if (cf % T == 0)
        throw std::invalid_argument("power field: root vector must lie outside the "
                                    "fixed sector");
    // root-vector preconditions make the modes of f commute exactly
    {
        LieVec br = sb.g->bracket(f, f);
        if (!br.empty() || !field_is_zero(sb.g->form_pair(f, f)))
            throw std::invalid_argument("power field: [f,f] or <f,f> nonzero");
    }
    const ModeModule& M = *Y.W().mod;
    long cap = Y.W().cap;
    if (depth_cap > cap) throw std::invalid_argument("power field: depth beyond module cap");
    if (pow > Y.V().cap()) throw std::invalid_argument("power field: power beyond vacuum cap");

    // f(-1)^pow |0> in V
    ModVec fpow = Y.V().vacuum();
    SVec<Rat> secv = Y.V().sectors().to_sector(f);
    for (long t = 0; t < pow; ++t) fpow = Y.V().module().act_elem(secv, -1, fpow);

    VerifyReport rep;
    for (long dw = 0; dw <= depth_cap; ++dw) {
        for (const auto& wm : M.basis_at(dw)) {
            ModVec wv{{wm, Rat(1)}};
            // windows with final depth inside [0, cap]
            for (long ns = dw + T * pow - T - cap; ns <= dw + T * pow - T; ++ns) {
                if (pos_mod(ns - pow * cf, T) != 0) continue;
                auto lhs = eval_side([&] { return Y.y0_mode(fpow, ns, wv); });
                auto rhs = eval_side([&] {
                    // multisets m_1 >= ... >= m_pow, sum = ns + T(1 - pow);
                    // modes commute, applied largest first
                    ModVec acc;
                    long target = ns + T * (1 - pow);
                    std::vector<long> pick;
                    auto rec = [&](auto&& self, long rem, long count, long maxm) -> void {
                        if (count == 0) {
                            if (rem != 0) return;
                            Rat mult = factorial(pow);
                            size_t i = 0;
                            while (i < pick.size()) {
                                size_t j = i;
                                while (j < pick.size() && pick[j] == pick[i]) ++j;
                                mult /= factorial((long)(j - i));
                                i = j;
                            }
                            ModVec cur = wv;
                            for (long t = (long)pick.size() - 1; t >= 0; --t) {
                                cur = M.act_elem(sec, pick[t], cur);
                                if (cur.empty()) return;
                            }
                            voa::mv_axpy(acc, mult, cur);
                            return;
                        }
                        // rem = m_this + (count-1 more, each >= -cap)
                        for (long m = std::min(maxm, rem + (count - 1) * cap); m >= -cap; --m) {
                            if (pos_mod(m - cf, T) != 0) continue;
                            if (m * count < rem) break;  // remaining picks can't reach
                            pick.push_back(m);
                            self(self, rem - m, count - 1, m);
                            pick.pop_back();
                        }
                    };
                    rec(rec, target, pow, dw);
                    return acc;
                });
                std::ostringstream tag;
                tag << "power field window n=" << rat_str(scaled_rat(ns, T))
                    << " w depth " << rat_str(scaled_rat(dw, T));
                tally(rep, tag.str(), lhs, rhs);
            }
        }
    }
    // the proof also relies on the modes of Y0(f(-1)1, x) commuting pairwise
    for (long dw = 0; dw <= depth_cap; ++dw) {
        for (const auto& wm : M.basis_at(dw)) {
            ModVec wv{{wm, Rat(1)}};
            for (long m2 = -cap; m2 <= dw + T; ++m2) {
                if (pos_mod(m2 - cf, T) != 0) continue;
                for (long m1 = -cap; m1 <= m2; ++m1) {
                    if (pos_mod(m1 - cf, T) != 0) continue;
                    if (dw - m1 - m2 > cap || dw - m1 - m2 < -T) continue;
                    auto lhs = eval_side(
                        [&] { return M.act_elem(sec, m1, M.act_elem(sec, m2, wv)); });
                    auto rhs = eval_side(
                        [&] { return M.act_elem(sec, m2, M.act_elem(sec, m1, wv)); });
                    std::ostringstream tag;
                    tag << "power field commute m1=" << rat_str(scaled_rat(m1, T))
                        << " m2=" << rat_str(scaled_rat(m2, T)) << " w depth "
                        << rat_str(scaled_rat(dw, T));
                    tally(rep, tag.str(), lhs, rhs);
                }
            }
        }
    }
    return rep;
}

} // namespace zhualg::twisted
