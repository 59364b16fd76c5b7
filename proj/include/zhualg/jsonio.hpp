#pragma once
#include "zhualg/twisted.hpp"
#include "json.hpp"
#include <string>

namespace zhualg::jsonio {

using nlohmann::json;

// rationals always travel as "num/den" strings
json rat_json(const Rat& r);
Rat rat_from_json(const json& j);

json lievec_json(const lie::LieAlgebra& g, const lie::LieVec& v);

// basis labels, structure constants as (i, j, k, numerator, denominator)
json algebra_json(const lie::LieAlgebra& g);
json automorphism_json(const lie::Automorphism& aut);  // perm array, order, e
json eigen_json(const lie::EigenDecomposition& dec);

// [{index, monomial, coeff}] over the module coordinate order
json modvec_json(const voa::ModVec& v, const voa::ModeModule& M);

// {identity_name, instance, lhs, rhs, equal}
json equality_report_json(const std::string& identity, const std::string& instance,
                          const std::string& lhs, const std::string& rhs, bool equal);
// window-count report sharing the same envelope
json verify_report_json(const std::string& identity, const std::string& instance,
                        const twisted::VerifyReport& rep);

std::string dims_csv(const std::vector<long>& dims);                 // depth,dim
std::string twisted_dims_csv(const std::vector<long>& dims, int T);  // numerator,T,dim

// canonical bytes: 2-space indent, sorted keys, trailing newline
std::string dump(const json& j);

// path "-" or empty writes to stdout
void write_artifact(const std::string& out_path, const std::string& content);

} // namespace zhualg::jsonio
