#pragma once
#include "zhualg/voa.hpp"

namespace zhualg::twisted {

using voa::ModVec;
using voa::Mono;
using voa::ModeModule;
using voa::SectorBasis;
using voa::SimpleQuotient;
using voa::VacuumVoa;
using lie::LieVec;

// Element of a twisted affinization: finite sum of a (x) t^m terms (scaled
// modes m = T * exponent) plus a central multiple of k.  Each term must be
// mu-class homogeneous with class = m mod T.
struct AffineElt {
    std::map<long, LieVec> terms;   // scaled mode -> coefficient in g
    Rat central = Rat(0);

    bool operator==(const AffineElt&) const = default;
};

AffineElt affine_term(const LieVec& a, long m_scaled, const Rat& central = Rat(0));

// Lie bracket in hat g[sigma] (cocycle m<a,b> + <e,[a,b]>) or hat g[mu]
// (cocycle m<a,b>), on class-checked elements.
AffineElt twisted_bracket(const SectorBasis& sb, const AffineElt& x, const AffineElt& y,
                          bool sigma_cocycle);

// phi: hat g[sigma] -> hat g[mu], a (x) t^m -> a(m) - delta_{m,0} <e,a> k;
// inverse direction with to_mu = false.
AffineElt iso_phi(const SectorBasis& sb, const AffineElt& x, bool to_mu);

void check_classes(const SectorBasis& sb, const AffineElt& x);

// mu-twisted generalized Verma module of level l over the top irrep F_lambda
// of g^[0] (whole g when mu is trivial), with its simple quotient machinery.
struct TwistedBundle {
    std::shared_ptr<const lie::LieAlgebra> g;
    std::shared_ptr<const lie::Automorphism> aut;
    std::shared_ptr<SectorBasis> sb;
    std::shared_ptr<lie::TriangularData> td0;
    std::shared_ptr<lie::Irrep> top;
    std::shared_ptr<ModeModule> mod;
    std::vector<long> lambda;
    Rat level;
    long cap = 0;
    mutable std::shared_ptr<SimpleQuotient> simple_;

    const SimpleQuotient& simple() const;
    std::vector<long> verma_dims() const;
    std::vector<long> simple_dims() const;
};

std::shared_ptr<TwistedBundle> build_twisted_verma(
    std::shared_ptr<const lie::LieAlgebra> g,
    std::shared_ptr<const lie::Automorphism> aut,
    const std::vector<long>& lambda, const Rat& level, long cap_scaled);

// sigma-twisted vertex operator machinery on a TwistedBundle: modes of
// Y_0(u, x) for states u of the vacuum VOA, computed by the twisted iterate.
// e-corrections enter only here; the underlying module is plain mu-twisted.
class TwistedY0 {
public:
    TwistedY0(std::shared_ptr<const VacuumVoa> V, std::shared_ptr<const TwistedBundle> W);

    const VacuumVoa& V() const { return *V_; }
    const TwistedBundle& W() const { return *W_; }
    int T() const { return W_->mod->S(); }

    // u must be mu-class homogeneous; n_scaled must match its class mod T
    ModVec y0_mode(const ModVec& u, long n_scaled, const ModVec& w) const;
    // coefficient of x^{-n-1} (log x)^j in the full field Y(u, x):
    // Y(u, x) = Y_0(x^{-N} u, x)
    ModVec full_mode(const ModVec& u, long n_scaled, long logpow, const ModVec& w) const;
    // o(u) = u_{wt u - 1} for weight-homogeneous u
    ModVec o_mode(const ModVec& u, const ModVec& w) const;

    int state_class(const ModVec& u) const;   // throws if not homogeneous

private:
    std::shared_ptr<const VacuumVoa> V_;
    std::shared_ptr<const TwistedBundle> W_;
    std::vector<std::vector<SVec<Rat>>> bN_;  // binom(ad e, k) of each sector elem
    mutable std::map<std::tuple<Mono, long, Mono>, ModVec> cache_;

    ModVec y0_mono(const Mono& u, long n_scaled, const Mono& w) const;
    ModVec y0_modvec(const Mono& u, long n_scaled, const ModVec& w) const;
    // current mode with the sigma zero-mode correction
    ModVec sigma_current(int s, long m_scaled, const ModVec& w) const;
};

struct VerifyReport {
    long checked = 0;     // windows evaluated and compared
    long trivial = 0;     // windows where all sides vanish by grading
    long excluded = 0;    // windows contaminated by the depth cap, skipped
    long mismatched = 0;
    std::string first_mismatch;
    bool ok() const { return mismatched == 0 && checked > 0; }
};

// coefficient-level twisted Jacobi identity on (u, v, w) over all windows
// |p| <= prange, |q|,|r| <= wrange (scaled, residue-stepped)
VerifyReport verify_twisted_jacobi(const TwistedY0& Y, const ModVec& u, const ModVec& v,
                                   const ModVec& w, long prange, long wrange);

// commutator form: [u_m, v_n] w = sum binom(m, j) ((binom(N,k)u)(j+k) v)_{m+n-j-k} w
VerifyReport verify_commutator(const TwistedY0& Y, const ModVec& u, const ModVec& v,
                               const ModVec& w, long mrange);

// weak associativity with l computed from (u, w); windows |alpha| <= arange,
// |beta| <= brange (scaled)
VerifyReport verify_weak_associativity(const TwistedY0& Y, const ModVec& u, const ModVec& v,
                                       const ModVec& w, long arange, long brange);

// mode-level identity Y_0(f(-1)^{pow} 1, x) = Y_0(f(-1)1, x)^{pow} for a root
// vector f outside the fixed sector (throws otherwise); checked on every
// basis vector up to depth_cap and every window mode
VerifyReport verify_power_field(const TwistedY0& Y, const LieVec& f, long pow,
                                long depth_cap);

} // namespace zhualg::twisted
