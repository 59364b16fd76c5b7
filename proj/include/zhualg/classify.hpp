#pragma once
#include "zhualg/twisted.hpp"

namespace zhualg::classify {

using lie::LieVec;
using twisted::TwistedBundle;
using twisted::TwistedY0;
using voa::ModVec;

// polynomial helpers over Q, coefficients ascending
using Poly = std::vector<Rat>;
Poly poly_trim(Poly p);
Poly poly_derivative(const Poly& p);
Poly poly_mod(Poly a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);
bool poly_is_constant(const Poly& p);
// monic minimal polynomial of a square matrix
Poly matrix_minpoly(const Mat<Rat>& m);
bool minpoly_squarefree(const Mat<Rat>& m);

struct WeightInfo {
    std::vector<long> lambda;   // fundamental coordinates over the fixed subalgebra
    Rat pairing;                // lambda(h_theta) resp. lambda(h_theta0)
    bool admissible = false;    // pairing <= level
};

struct Classification {
    bool uses_theta0 = false;   // highest root of g lies outside the fixed sector
    Rat level;
    std::vector<WeightInfo> weights;   // box enumeration, admissible flag set

    std::vector<std::vector<long>> admissible_list() const;
};

// e_theta when it lies in the fixed sector, else e_theta0 of g^[0]
LieVec theta_element(const lie::LieAlgebra& g, const lie::Automorphism& aut,
                     bool& uses_theta0);

// coordinates of a Cartan element over the simple coroots of td
std::vector<Rat> coroot_coords(const lie::TriangularData& td, const LieVec& h);

Classification classify_weights(const lie::LieAlgebra& g, const lie::Automorphism& aut,
                                const Rat& level);

// Omega of the simple quotient with its zero-mode action matrices
struct OmegaSpace {
    const TwistedBundle* W = nullptr;
    std::vector<ModVec> basis;          // quotient representatives, all depths
    std::vector<long> dims_by_depth;
    Mat<Rat> action_of(const LieVec& a) const;   // zero-mode action matrix
    int dim() const { return (int)basis.size(); }

    std::shared_ptr<LinSolver<Rat>> coords_solver;
    SVec<Rat> qcoords(const ModVec& v) const;    // helper: quotient coordinates
};

OmegaSpace omega_space(const TwistedBundle& W);

struct ModuleCertificate {
    std::vector<long> lambda;
    bool admissible = false;
    long omega_dim = 0;
    bool top_only = true;          // Omega concentrated in depth 0
    bool epower_zero = false;      // action of e_X^{pow} vanishes on Omega
    bool casimir_squarefree = false;
    bool weight_split = false;     // integral weight-space decomposition fills Omega
    bool semisimple() const { return casimir_squarefree && weight_split; }
};

// pow = level + 1; eX = e_theta resp. e_theta0
ModuleCertificate certify_simple_module(const TwistedBundle& W, const LieVec& eX, long pow);

// same e-power matrix, but routed through the sigma-twisted field machinery
// (o-modes of i(eX) in the sigma realization); both paths must agree
Mat<Rat> epower_via_sigma(const TwistedY0& Y, const OmegaSpace& om, const LieVec& eX,
                          long pow, const Rat& level);

} // namespace zhualg::classify
