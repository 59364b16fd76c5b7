#include "zhualg/jsonio.hpp"
#include "zhualg/twisted.hpp"
#include "doctest.h"
#include <cstdio>
#include <fstream>

using namespace zhualg;
using jsonio::json;

TEST_CASE("rational round trip") {
    for (const Rat& r : {Rat(0), Rat(5), Rat(-7, 3), Rat(22, 7)}) {
        json j = jsonio::rat_json(r);
        CHECK(jsonio::rat_from_json(j) == r);
    }
    CHECK(jsonio::rat_json(Rat(-7, 3)).get<std::string>() == "-7/3");
}

TEST_CASE("algebra payload reparses to the same structure constants") {
    auto g = lie::build_lie_algebra("A2");
    json j = jsonio::algebra_json(g);
    CHECK(j["dim"] == 8);
    CHECK(j["rank"] == 2);
    CHECK(j["type"].get<std::string>() == "A2");
    // structure constant tuples reproduce the bracket table
    for (const auto& t : j["structure_constants"]) {
        int i = t[0], k = t[1], idx = t[2];
        long num = t[3], den = t[4];
        auto it = g.br[i][k].find(idx);
        REQUIRE(it != g.br[i][k].end());
        CHECK(it->second == Rat(num, den));
    }
    // and every nonzero bracket entry is listed
    size_t count = 0;
    for (int i = 0; i < g.dim; ++i)
        for (int k = 0; k < g.dim; ++k) count += g.br[i][k].size();
    CHECK(j["structure_constants"].size() == count);
    // serialization is deterministic
    CHECK(jsonio::dump(j) == jsonio::dump(jsonio::algebra_json(g)));
    CHECK(jsonio::dump(j).back() == '\n');
}

TEST_CASE("automorphism and eigen payloads") {
    auto g = lie::build_lie_algebra("A2");
    auto aut = lie::diagram_automorphism(g, "flip", {});
    json a = jsonio::automorphism_json(aut);
    CHECK(a["order"] == 2);
    CHECK(a["nilindex"] == 1);
    CHECK(a["e"].empty());
    auto dec = lie::eigenspace_decomposition(g, aut);
    json e = jsonio::eigen_json(dec);
    CHECK(e["order"] == 2);
    CHECK(e["dims"] == json::array({3, 5}));
}

TEST_CASE("module vectors serialize with readable monomials") {
    auto gp = std::make_shared<lie::LieAlgebra>(lie::build_lie_algebra("A1"));
    auto ap = std::make_shared<lie::Automorphism>(lie::diagram_automorphism(*gp, "id", {}));
    voa::VacuumVoa V(gp, ap, Rat(1), 2);
    voa::ModVec v = V.current(gp->basis_vec(0));
    voa::mv_axpy(v, Rat(-1, 2), V.vacuum());
    json j = jsonio::modvec_json(v, V.module());
    REQUIRE(j.size() == 2);
    for (const auto& row : j) {
        CHECK(row.contains("index"));
        CHECK(row.contains("monomial"));
        CHECK(row.contains("coeff"));
    }
    // empty vector is the empty array
    CHECK(jsonio::modvec_json(voa::ModVec{}, V.module()).empty());
}

TEST_CASE("report envelopes") {
    json eq = jsonio::equality_report_json("little1", "l=2 k=1", "lhs", "rhs", true);
    CHECK(eq["identity_name"] == "little1");
    CHECK(eq["equal"] == true);
    twisted::VerifyReport rep;
    rep.checked = 10;
    rep.trivial = 2;
    rep.excluded = 3;
    json vr = jsonio::verify_report_json("jacobi", "A1", rep);
    CHECK(vr["equal"] == true);
    CHECK(vr["checked"] == 10);
    CHECK(!vr.contains("first_mismatch"));
    rep.mismatched = 1;
    rep.first_mismatch = "p=0";
    json vr2 = jsonio::verify_report_json("jacobi", "A1", rep);
    CHECK(vr2["equal"] == false);
    CHECK(vr2["first_mismatch"] == "p=0");
}

TEST_CASE("csv emitters") {
    CHECK(jsonio::dims_csv({1, 3, 9}) == "depth,dim\n0,1\n1,3\n2,9\n");
    CHECK(jsonio::twisted_dims_csv({1, 5, 18}, 2) ==
          "numerator,T,dim\n0,2,1\n1,2,5\n2,2,18\n");
}

TEST_CASE("artifacts go to files or fail loudly") {
    const char* path = "jsonio_roundtrip_tmp.json";
    json j;
    j["b"] = 1;
    j["a"] = 2;
    jsonio::write_artifact(path, jsonio::dump(j));
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    CHECK(content == jsonio::dump(j));
    // keys are emitted in sorted order regardless of insertion order
    CHECK(content.find("\"a\"") < content.find("\"b\""));
    std::remove(path);
    CHECK_THROWS_AS(jsonio::write_artifact("/no_such_dir_zhualg/x.json", "{}"),
                    std::invalid_argument);
}
