#pragma once
#include "zhualg/linalg.hpp"
#include "zhualg/rational.hpp"
#include <string>
#include <vector>
#include <map>

namespace zhualg::lie {

// Sparse element in the Chevalley basis coordinates of a LieAlgebra.
using LieVec = SVec<Rat>;

struct RootSystem {
    int rank = 0;
    Mat<Rat> gram;                          // (alpha_i, alpha_j), long roots have norm 2
    std::vector<std::vector<long>> cartan;  // cartan[i][j] = <alpha_j, alpha_i^vee>
    std::vector<std::vector<long>> positive; // coords in simple basis, (height, lex) order
    std::map<std::vector<long>, int> index;  // positive root coords -> position
    int theta = -1;                          // index of the highest root

    long height(int r) const;
    Rat norm(const std::vector<long>& coords) const;   // (beta, beta)
    bool is_positive_root(const std::vector<long>& c) const { return index.count(c) != 0; }
};

// Chevalley-basis presentation.  Basis order: e_gamma for positive roots in
// root order, then h_1..h_rank (simple coroots), then f_gamma.
class LieAlgebra {
public:
    std::string type;   // "A1", "C2", ...
    int rank = 0;
    int npos = 0;
    int dim = 0;
    RootSystem rs;
    std::vector<std::string> labels;
    std::vector<std::vector<LieVec>> br;   // br[i][j] = [b_i, b_j]
    Mat<Rat> form;                         // normalized invariant form, (theta,theta)=2
    Rat dual_coxeter;

    int e_index(int r) const { return r; }
    int h_index(int i) const { return npos + i; }
    int f_index(int r) const { return npos + rank + r; }
    bool is_e(int b) const { return b < npos; }
    bool is_h(int b) const { return b >= npos && b < npos + rank; }
    bool is_f(int b) const { return b >= npos + rank; }

    LieVec basis_vec(int i) const { return LieVec{{i, Rat(1)}}; }
    LieVec bracket(const LieVec& x, const LieVec& y) const;
    Rat form_pair(const LieVec& x, const LieVec& y) const;
    std::vector<LieVec> ad(const LieVec& x) const;     // column images ad(x) b_i
    LieVec apply(const std::vector<LieVec>& cols, const LieVec& v) const;

    // Killing form on two elements (trace form), used for normalization checks.
    Rat killing(const LieVec& x, const LieVec& y) const;

    int label_index(const std::string& label) const;   // accepts aliases e,h,f,e_theta,...
    std::string coord_str(const LieVec& v) const;
};

// type in {'A','B','C','D','E','F','G'}.
LieAlgebra build_lie_algebra(char type, int rank);
LieAlgebra build_lie_algebra(const std::string& name);   // "A2", "sl2", "D4", ...

struct Automorphism {
    const LieAlgebra* g = nullptr;
    std::vector<int> perm;           // diagram permutation on simple indices
    int order = 1;                   // T = order of mu
    std::vector<LieVec> mu;          // mu(b_i) columns
    LieVec e;                        // nilpotent element of g^[0] (may be zero)
    std::vector<LieVec> ad_e;        // ad(e) columns
    int nilindex = 1;                // least N with ad(e)^N = 0
    std::vector<LieVec> sigma;       // mu * exp(ad e) columns

    LieVec apply_mu(const LieVec& v) const { return g->apply(mu, v); }
    LieVec apply_sigma(const LieVec& v) const { return g->apply(sigma, v); }
    LieVec apply_ad_e(const LieVec& v) const { return g->apply(ad_e, v); }
};

// perm must preserve the Cartan matrix; e must be mu-fixed and nilpotent.
Automorphism diagram_automorphism(const LieAlgebra& g, const std::vector<int>& perm,
                                  const LieVec& e = {});
// kind in {"id", "flip", "triality"}.
Automorphism diagram_automorphism(const LieAlgebra& g, const std::string& kind,
                                  const LieVec& e = {});

struct EigenDecomposition {
    int T = 1;
    std::vector<std::vector<std::vector<Cyc>>> comp;  // comp[j] = basis of the zeta^j eigenspace
    std::vector<int> dims;
    // For T <= 2 every eigenvector is rational; converted view.
    std::vector<std::vector<LieVec>> rational_comp;
};

EigenDecomposition eigenspace_decomposition(const LieAlgebra& g, const Automorphism& aut);

// Least m with (ad e)^m v = 0.
int ad_e_block_size(const Automorphism& aut, const LieVec& v);

LieVec highest_root_vector(const LieAlgebra& g);

} // namespace zhualg::lie
