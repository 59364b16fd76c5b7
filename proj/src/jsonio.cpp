#include "zhualg/jsonio.hpp"
#include <fstream>
#include <iostream>
#include <sstream>

namespace zhualg::jsonio {

json rat_json(const Rat& r) { return rat_str(r); }

Rat rat_from_json(const json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    throw std::invalid_argument("expected a rational string");
}

json lievec_json(const lie::LieAlgebra& g, const lie::LieVec& v) {
    json out = json::object();
    for (const auto& [i, c] : v) out[g.labels[i]] = rat_json(c);
    return out;
}

json algebra_json(const lie::LieAlgebra& g) {
    json out;
    out["type"] = g.type;
    out["rank"] = g.rank;
    out["dim"] = g.dim;
    out["labels"] = g.labels;
    out["dual_coxeter"] = rat_json(g.dual_coxeter);
    json sc = json::array();
    for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j)
            for (const auto& [k, c] : g.br[i][j])
                sc.push_back(json::array(
                    {i, j, k, (long)c.get_num().get_si(), (long)c.get_den().get_si()}));
    out["structure_constants"] = sc;
    json fm = json::array();
    for (int i = 0; i < g.dim; ++i)
        for (int j = i; j < g.dim; ++j)
            if (!field_is_zero(g.form[i][j]))
                fm.push_back(json::array({i, j, rat_json(g.form[i][j])}));
    out["form"] = fm;
    return out;
}

json automorphism_json(const lie::Automorphism& aut) {
    json out;
    out["perm"] = aut.perm;
    out["order"] = aut.order;
    out["nilindex"] = aut.nilindex;
    out["e"] = lievec_json(*aut.g, aut.e);
    return out;
}

json eigen_json(const lie::EigenDecomposition& dec) {
    json out;
    out["order"] = dec.T;
    out["dims"] = dec.dims;
    return out;
}

json modvec_json(const voa::ModVec& v, const voa::ModeModule& M) {
    json out = json::array();
    for (const auto& [m, c] : v) {
        json t;
        t["index"] = M.coord_of(m);
        t["monomial"] = voa::mono_str(m, M.sectors(), M.S(), M.top_dim());
        t["coeff"] = rat_json(c);
        out.push_back(std::move(t));
    }
    return out;
}

json equality_report_json(const std::string& identity, const std::string& instance,
                          const std::string& lhs, const std::string& rhs, bool equal) {
    json out;
    out["identity_name"] = identity;
    out["instance"] = instance;
    out["lhs"] = lhs;
    out["rhs"] = rhs;
    out["equal"] = equal;
    return out;
}

json verify_report_json(const std::string& identity, const std::string& instance,
                        const twisted::VerifyReport& rep) {
    json out;
    out["identity_name"] = identity;
    out["instance"] = instance;
    out["checked"] = rep.checked;
    out["trivial"] = rep.trivial;
    out["excluded"] = rep.excluded;
    out["mismatched"] = rep.mismatched;
    out["equal"] = rep.ok();
    if (!rep.first_mismatch.empty()) out["first_mismatch"] = rep.first_mismatch;
    return out;
}

std::string dims_csv(const std::vector<long>& dims) {
    std::ostringstream os;
    os << "depth,dim\n";
    for (size_t d = 0; d < dims.size(); ++d) os << d << "," << dims[d] << "\n";
    return os.str();
}

std::string twisted_dims_csv(const std::vector<long>& dims, int T) {
    std::ostringstream os;
    os << "numerator,T,dim\n";
    for (size_t d = 0; d < dims.size(); ++d) os << d << "," << T << "," << dims[d] << "\n";
    return os.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_artifact(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output path: " + out_path);
    f << content;
}

} // namespace zhualg::jsonio
