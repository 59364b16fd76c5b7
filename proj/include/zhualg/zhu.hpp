#pragma once
#include "zhualg/voa.hpp"
#include "zhualg/uea.hpp"

namespace zhualg::zhu {

using voa::VacuumVoa;
using voa::ModVec;
using voa::Mono;
using lie::LieVec;

// sigma-twisted Zhu machinery on the vacuum module V_g(0, l), sigma = mu exp(ad e).
// Elements of the Zhu algebra are represented by canonical reduced vectors of V
// modulo the computed O_sigma(V) span (deepest-monomial pivots, shallow
// canonical representatives).
class ZhuContext {
public:
    ZhuContext(std::shared_ptr<const lie::LieAlgebra> g,
               std::shared_ptr<const lie::Automorphism> aut,
               const Rat& level, long cap);

    const VacuumVoa& V() const { return V_; }
    const lie::LieAlgebra& algebra() const { return *g_; }
    const lie::Automorphism& automorphism() const { return *aut_; }
    const lie::TriangularData& fixed_td() const { return td0_; }
    const lie::LieAlgebra& fixed_algebra() const { return g0_; }
    const Rat& level() const { return level_; }
    long cap() const { return cap_; }

    // ambient element of the fixed-subalgebra basis element k (reified order)
    LieVec fixed_elem(int k) const;

    // u o_g v and u *_g v (u, v in V); class and weight decompositions are
    // handled internally, truncation past the cap throws
    ModVec circ(const ModVec& u, const ModVec& v) const;
    ModVec star(const ModVec& u, const ModVec& v) const;
    // Res_x x^{-1-delta-k} Y((1+x)^{wt u + N - 1 + delta + alpha/T} u, x) v
    ModVec circ_shift(const ModVec& u, const ModVec& v, long k) const;

    // canonical representative modulo the O_sigma(V) span
    ModVec zhu_reduce(const ModVec& v) const;
    bool is_zero_class(const ModVec& v) const { return zhu_reduce(v).empty(); }
    ModVec star_reduced(const ModVec& u, const ModVec& v) const;

    // [g] = g(-1)1 + l <e, g> 1 for g in g^[0]
    ModVec i_of(const LieVec& a) const;
    // I(g_1 ... g_n) = i(g_1) * ... * i(g_n), reduced after each step
    ModVec map_I(const std::vector<LieVec>& word) const;
    ModVec map_I(const uea::PBW& p) const;
    ModVec zhu_power(const ModVec& cls, long k) const;

    // dimension of span{map_I(m) : deg m <= d} inside the reduced module
    std::vector<long> map_I_dims(long dmax) const;

    // u * v - v * u  vs  Res_x Y((1+x)^{wt u + N - 1} u, x) v, both reduced;
    // returns the pair (lhs, rhs)
    std::pair<ModVec, ModVec> lie_relation(const ModVec& u, const ModVec& v) const;
    bool verify_lie_relation(const ModVec& u, const ModVec& v) const;

    int span_rank() const { return span_.rank(); }
    long row_budget() const { return budget_; }

private:
    std::shared_ptr<const lie::LieAlgebra> g_;
    std::shared_ptr<const lie::Automorphism> aut_;
    Rat level_;
    long cap_;
    long budget_;
    VacuumVoa V_;
    lie::TriangularData td0_;
    lie::LieAlgebra g0_;
    SparseEchelon<Rat> span_;

    void build_span();
    // homogeneous piece (weight, class) contributions
    ModVec circ_piece(const ModVec& u, long wt, int alpha, const ModVec& v, long shift) const;
    ModVec star_piece(const ModVec& u, long wt, const ModVec& v) const;
    std::map<std::pair<long, int>, ModVec> split(const ModVec& u) const;
};

} // namespace zhualg::zhu
