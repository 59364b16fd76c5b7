#pragma once
#include "zhualg/liealg.hpp"
#include <map>
#include <string>
#include <vector>

namespace zhualg::uea {

// Word over basis indices; normal form is nondecreasing (PBW order:
// e's before h's before f's, following the basis order of the algebra).
using Word = std::vector<int>;
using PBW = std::map<Word, Rat>;

class UEA {
public:
    explicit UEA(const lie::LieAlgebra& g) : g_(&g) {}
    const lie::LieAlgebra& algebra() const { return *g_; }

    PBW normalize(const PBW& raw) const;  // straightens arbitrary words
    PBW multiply(const PBW& x, const PBW& y) const;
    PBW commutator(const PBW& x, const PBW& y) const;
    static PBW scalar(const Rat& c) { return c == 0 ? PBW{} : PBW{{Word{}, c}}; }
    PBW letter(int basis_index) const { return PBW{{Word{basis_index}, Rat(1)}}; }

    struct IdealResult {
        bool member = false;
        PBW remainder;     // canonical form modulo the bounded span
        int span_rank = 0;
    };
    // Membership of x in span{m1 * gen * m2 : deg m1 + deg gen + deg m2 <= cap}.
    IdealResult ideal_membership_bounded(const PBW& x, const std::vector<PBW>& gens,
                                         int cap) const;

    std::string to_string(const PBW& x) const;
    PBW parse(const std::string& text) const;

private:
    const lie::LieAlgebra* g_;
    mutable std::map<Word, PBW> straighten_cache_;
    PBW straighten(const Word& w) const;
};

} // namespace zhualg::uea
