#pragma once
#include "zhualg/liealg.hpp"
#include <memory>

namespace zhualg::lie {

// Triangular decomposition data for a reductive subalgebra of an ambient
// LieAlgebra, given by explicit root vectors.  Covers two cases with one code
// path: the whole algebra (trivial automorphism) and the fixed subalgebra of
// a diagram automorphism.
struct TriangularData {
    const LieAlgebra* ambient = nullptr;

    struct Root {
        std::vector<Rat> tuple;       // values on the cartan basis
        std::vector<long> coords;     // expansion over simple restricted roots
        long height = 0;
        LieVec E, F;                  // normalized: [E, F] = H, root(H) = 2
        LieVec H;                     // coroot
    };

    std::vector<LieVec> cartan;       // basis of the Cartan subalgebra
    std::vector<Root> positive;       // (height, lex) order
    std::vector<int> simples;         // indices into positive
    int theta0 = -1;                  // index of the highest root
    std::vector<std::vector<long>> cartan_ints;  // A0[i][j] = beta_j(H_{beta_i})

    // subalgebra basis order: E_0..E_{p-1}, cartan, F_0..F_{p-1}
    int dim() const { return 2 * (int)positive.size() + (int)cartan.size(); }
    LieVec basis_elem(int k) const;
    std::vector<Rat> resolve(const LieVec& v) const;   // coords over basis_elem order
    bool contains(const LieVec& v) const;

    Rat form_pair_sub(int i, int j) const;             // ambient form on basis elems

    // root value beta(h) for h in the cartan span
    Rat root_value(const Root& r, const LieVec& h) const;

    // Weyl dimension of the irreducible with highest weight lambda
    // (fundamental-weight coordinates over `simples`).
    Rat weyl_dim(const std::vector<long>& lambda) const;

    // <lambda, beta^vee> for a positive root index
    Rat pair_coroot(const std::vector<long>& lambda, int pos_idx) const;

    std::shared_ptr<LinSolver<Rat>> solver;            // over subalgebra basis columns
};

TriangularData whole_algebra_triangular(const LieAlgebra& g);
TriangularData fixed_subalgebra(const LieAlgebra& g, const Automorphism& aut);

// Standalone Chevalley-style presentation of the subalgebra described by td.
LieAlgebra reify(const TriangularData& td, const std::string& type_label);

// e_{theta^0}: highest-root vector of the fixed subalgebra, in ambient coords.
LieVec highest_root_vector_fixed(const LieAlgebra& g, const Automorphism& aut);

} // namespace zhualg::lie
