#pragma once
#include "zhualg/irrep.hpp"
#include "zhualg/errors.hpp"
#include <compare>
#include <memory>
#include <tuple>

namespace zhualg::voa {

using lie::LieAlgebra;
using lie::Automorphism;
using lie::TriangularData;
using lie::Irrep;
using lie::LieVec;

// Transpose anti-involution: tau(e_i) = f_i, tau(f_i) = e_i, tau|_h = id,
// tau[x,y] = [tau y, tau x].  Column images over the Chevalley basis.
std::vector<LieVec> transpose_involution(const LieAlgebra& g);

// mu-eigenbasis of g with rational coordinates (order of mu at most 2; the
// trivial case is the Chevalley basis itself).  All module-layer tables are
// expressed in these coordinates.
struct SectorBasis {
    const LieAlgebra* g = nullptr;
    const Automorphism* aut = nullptr;
    int T = 1;
    std::vector<LieVec> vec;                  // sector basis elements, class 0 first
    std::vector<int> cls;                     // mu-eigenvalue exponent per element
    std::vector<std::vector<SVec<Rat>>> br;   // [s][t] -> sector coords of [b_s, b_t]
    Mat<Rat> form;                            // invariant form on sector elements
    std::vector<SVec<Rat>> ad_e;              // sector coords of [e, b_s]
    std::vector<SVec<Rat>> tau;               // sector coords of tau(b_s)
    std::vector<Rat> e_pair;                  // <e, b_s>

    int dim() const { return (int)vec.size(); }
    SVec<Rat> to_sector(const LieVec& x) const;
    LieVec to_ambient(const SVec<Rat>& c) const;

    std::shared_ptr<LinSolver<Rat>> solver;
};

SectorBasis make_sector_basis(const LieAlgebra& g, const Automorphism& aut);

// PBW monomial a_1(-n_1/S)...a_k(-n_k/S) v_top with scaled mode entries
// (n, sector), sorted n descending then sector ascending, acting on the
// top-irrep basis vector `top`.
struct Mono {
    std::vector<std::pair<int, int>> f;
    int top = 0;
    auto operator<=>(const Mono&) const = default;
    long depth() const {
        long d = 0;
        for (auto& [n, s] : f) d += n;
        return d;
    }
};

using ModVec = std::map<Mono, Rat>;

void mv_axpy(ModVec& dst, const Rat& c, const ModVec& src);
void mv_scale(ModVec& v, const Rat& c);
std::string mono_str(const Mono& m, const SectorBasis& sb, int S, int top_dim);
std::string modvec_str(const ModVec& v, const SectorBasis& sb, int S, int top_dim);

// Level-l smooth module U(hat g[mu]_-) (x) F for the (possibly trivially)
// mu-twisted affinization, truncated at a scaled depth cap.  Modes are
// integers divided by S (S = 1 untwisted, S = T for mu-twisted modules).
// All arithmetic is exact; computations that would leave the cap throw
// TruncationError instead of silently truncating.
class ModeModule {
public:
    ModeModule(const SectorBasis* sb, const Irrep* top, const Rat& level,
               long cap_scaled, int S);

    int S() const { return S_; }
    long cap() const { return cap_; }
    int top_dim() const { return top_->dim; }
    const SectorBasis& sectors() const { return *sb_; }
    const Irrep& top() const { return *top_; }
    const Rat& level() const { return level_; }

    // a_s(m/S) v; m is the scaled mode.  Residue m = cls(s) mod S is enforced
    // when S > 1.
    ModVec act(int s, long m, const ModVec& v) const;
    ModVec act_mono(int s, long m, const Mono& w) const;
    // same for a general coefficient vector over the sector basis
    ModVec act_elem(const SVec<Rat>& a, long m, const ModVec& v) const;

    ModVec vacuum_like(int top_index = 0) const;   // depth-0 basis vector

    const std::vector<Mono>& basis_at(long d) const;
    long dim_at(long d) const { return (long)basis_at(d).size(); }
    long total_dim() const { return total_dim_; }
    // global coordinates, deeper depth first (depth cap..0)
    long coord_of(const Mono& m) const;
    const Mono& mono_of(long coord) const;
    SVec<Rat> coords(const ModVec& v) const;
    ModVec from_coords(const SVec<Rat>& c) const;

    // contravariant pairing w.r.t. the transpose anti-involution
    Rat pair_mono(const Mono& a, const Mono& b) const;
    Rat pair(const ModVec& a, const ModVec& b) const;
    // radical of the pairing restricted to depth d, as vectors
    std::vector<ModVec> radical_at(long d) const;

    const Mat<Rat>& top_gram() const { return top_gram_; }

private:
    const SectorBasis* sb_;
    const Irrep* top_;
    Rat level_;
    long cap_;
    int S_;

    std::vector<std::vector<Mono>> basis_;
    std::map<Mono, long> index_;
    std::vector<long> offset_;
    long total_dim_ = 0;

    Mat<Rat> top_gram_;                       // contravariant w.r.t. ambient tau
    std::vector<Mat<Rat>> top_mat_;           // zero-mode action per sector elem

    mutable std::map<std::tuple<int, long, Mono>, ModVec> act_cache_;
    mutable std::map<std::pair<Mono, Mono>, Rat> pair_cache_;

    void build_basis();
    void build_top_gram();
    void check_residue(int s, long m) const;
};

// Graded quotient of a ModeModule by the radical of the contravariant
// pairing; for a (generalized) Verma module this is the simple quotient.
class SimpleQuotient {
public:
    explicit SimpleQuotient(const ModeModule* base);

    const ModeModule& base() const { return *base_; }
    ModVec reduce(const ModVec& v) const;
    bool is_zero(const ModVec& v) const;
    ModVec act(int s, long m, const ModVec& v) const;
    long dim_at(long d) const;
    // reduced-module basis at depth d (monos surviving the quotient)
    const std::vector<Mono>& kept_at(long d) const;

private:
    const ModeModule* base_;
    SparseEchelon<Rat> rad_;
    std::vector<std::vector<Mono>> kept_;
};

// Untwisted vacuum module V_g(0, l) of level l with state-field machinery.
// The automorphism only supplies sigma-data (e, mu-coloring of the sector
// basis for the Zhu layer); the module itself is the plain vacuum module.
class VacuumVoa {
public:
    VacuumVoa(std::shared_ptr<const LieAlgebra> g,
              std::shared_ptr<const Automorphism> aut,
              const Rat& level, long cap);

    const LieAlgebra& algebra() const { return *g_; }
    const Automorphism& automorphism() const { return *aut_; }
    const SectorBasis& sectors() const { return sb_; }
    const ModeModule& module() const { return *mod_; }
    const Rat& level() const { return level_; }
    long cap() const { return cap_; }

    ModVec vacuum() const { return mod_->vacuum_like(0); }
    // current state a(-1)|0> for a in ambient coordinates
    ModVec current(const LieVec& a) const;

    // u_m v for states u, v (integer modes; weights are depths here)
    ModVec vertex_mode(const ModVec& u, long m, const ModVec& v) const;

    // Sugawara conformal vector; requires level != -h_vee
    const ModVec& conformal() const;
    ModVec l_op(long n, const ModVec& v) const;    // L(n) = omega_{n+1}

    // derivation N = ad e extended to V, N|0> = 0
    ModVec apply_N(const ModVec& v) const;
    // binom(N, k) u
    ModVec binom_N(const ModVec& u, long k) const;

    // mu-class of a monomial (sum of factor classes mod T); -1 if mixed v
    int mono_class(const Mono& m) const;

private:
    std::shared_ptr<const LieAlgebra> g_;
    std::shared_ptr<const Automorphism> aut_;
    SectorBasis sb_;
    std::shared_ptr<TriangularData> td_;
    std::shared_ptr<Irrep> top_;
    std::unique_ptr<ModeModule> mod_;
    Rat level_;
    long cap_;
    mutable ModVec omega_;
    mutable bool omega_built_ = false;
    mutable std::map<std::tuple<Mono, long, Mono>, ModVec> vtx_cache_;

    ModVec vertex_core(const Mono& u, long m, const Mono& v) const;
};

// Smallest submodule of M (resp. of its quotient) containing the seeds and
// closed under all single modes a_s(m) with |m| <= mode_cap; zero modes are
// included when include_zero is set.  Returns per-depth dimensions of the
// closure (index = scaled depth).
std::vector<long> submodule_closure(const ModeModule& M,
                                    const std::vector<ModVec>& seeds,
                                    bool include_zero, long mode_cap);

// Highest-weight-type subspace: vectors killed by every strictly positive
// single mode.  Returned per scaled depth.
std::vector<std::vector<ModVec>> omega_basis(const ModeModule& M);
std::vector<std::vector<ModVec>> omega_basis(const SimpleQuotient& Q);

} // namespace zhualg::voa
