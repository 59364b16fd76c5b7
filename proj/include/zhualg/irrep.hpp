#pragma once
#include "zhualg/triangular.hpp"

namespace zhualg::lie {

// Finite-dimensional irreducible highest-weight module over the subalgebra
// described by a TriangularData.  Built by lowering from the highest-weight
// vector and quotienting by the contravariant-form radical level by level.
struct Irrep {
    const TriangularData* td = nullptr;
    std::vector<long> lambda;               // fundamental coordinates over td->simples
    int dim = 0;

    // basis bookkeeping
    std::vector<int> level_of;              // lowering depth per basis vector
    std::vector<std::vector<Rat>> weight;   // weight tuple per basis vector (values on td->cartan)
    std::vector<int> level_offset;          // first basis index per level

    // action matrices for every subalgebra basis element, td basis order
    std::vector<Mat<Rat>> act;

    // contravariant Gram matrix, <v_lambda, v_lambda> = 1; block-diagonal by level
    Mat<Rat> gram;

    // action of an arbitrary subalgebra element (ambient coordinates)
    Mat<Rat> action_of(const LieVec& x) const;
    std::vector<Rat> apply(const Mat<Rat>& m, const std::vector<Rat>& v) const;

    // Casimir of the invariant form restricted to the subalgebra
    Mat<Rat> casimir() const;
};

Irrep build_irrep(const TriangularData& td, const std::vector<long>& lambda);

} // namespace zhualg::lie
