#include <catch2/catch.hpp>

#include "schema_check.hpp"
#include "tracelab/io.hpp"
#include "tracelab/serialize.hpp"
#include "tracelab/trace_rules.hpp"

using namespace tracelab;

namespace {
Json load_schema(const std::string& name) {
    return Json::parse(read_file(std::string(TRACELAB_SOURCE_DIR) + "/schemas/" + name));
}
} // namespace

TEST_CASE("pair json round trips through matrix_from_json and matches its schema") {
    auto pair = build_generators(
        make_ypiece_cusped(TraceValue::rational(Rat(5, 2)), TraceValue::rational(Rat(3))));
    Json j = pair_json(pair);
    CHECK(matrix_from_json(j["tu"]) == pair.tu);
    CHECK(matrix_from_json(j["tv"]) == pair.tv);
    CHECK(tlt::schema_errors(j, load_schema("pair.schema.json")).empty());
}

TEST_CASE("witness json is canonical, byte-stable and schema-valid") {
    ClusterWitness w = build_witness(9, 2, 2);
    Json j = witness_json(w);
    CHECK(j.dump() == witness_json(w).dump());
    CHECK(j["values"].size() == 3);
    std::string err = tlt::schema_errors(j, load_schema("witness.schema.json"));
    INFO(err);
    CHECK(err.empty());
}

TEST_CASE("growth report json matches its schema, including the null gap") {
    auto rep = cluster_report({}, Int(10));
    Json j = growth_report_json(rep);
    CHECK(j["gap_estimate"].is_null());
    CHECK(tlt::schema_errors(j, load_schema("growth_report.schema.json")).empty());

    std::vector<TraceValue> values = {TraceValue::rational(Rat(2)),
                                      TraceValue::rational(Rat(5, 2))};
    Json j2 = growth_report_json(cluster_report(values, Int(5)));
    CHECK(j2["gap_estimate"] == "1/2");
    CHECK(tlt::schema_errors(j2, load_schema("growth_report.schema.json")).empty());
}

TEST_CASE("integrality json matches its schema") {
    auto rep = integrality_of_values(
        {TraceValue::rational(Rat(5, 2)), TraceValue::symbolic(IntPoly({-2, 1}))});
    Json j = integrality_json(rep);
    CHECK(tlt::schema_errors(j, load_schema("integrality.schema.json")).empty());
}

TEST_CASE("schema validator actually rejects malformed documents") {
    Json schema = load_schema("witness.schema.json");
    Json bad = Json::object();
    bad["a"] = "9";
    CHECK_FALSE(tlt::schema_errors(bad, schema).empty());
    ClusterWitness w = build_witness(9, 2, 1);
    Json j = witness_json(w);
    j["n"] = "not-an-integer";
    CHECK_FALSE(tlt::schema_errors(j, schema).empty());
}

TEST_CASE("gen-traces csv serialization") {
    auto res = generate_trace_set(
        make_ypiece_cusped(TraceValue::rational(Rat(3)), TraceValue::rational(Rat(2))), Rat(12), 1);
    CHECK(gen_traces_csv(res) ==
          "value_num,value_den,rule_chain\n"
          "2,1,seed\n"
          "3,1,seed\n"
          "7,1,lambda_mu[k=1,m=1]\n"
          "8,1,nu[n=2]\n"
          "12,1,lambda_mu[k=2,m=1]\n");
}

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    std::string long_input(1000, 'x');
    CHECK(sha256_hex(long_input).size() == 64);
}
