#pragma once

#include <json.hpp>

#include "tracelab/cluster.hpp"
#include "tracelab/trace_rules.hpp"
#include "tracelab/growth.hpp"
#include "tracelab/word_enum.hpp"
#include "tracelab/ypiece.hpp"

namespace tracelab {

// Canonical JSON forms. Big integers are decimal strings, rationals are
// "p/q" strings; key order is fixed (insertion order of ordered_json) so
// identical inputs serialize to identical bytes.

using Json = nlohmann::ordered_json;

inline Json matrix_json(const MoebiusTransform& t) {
    Json j;
    j["a"] = rat_string(t.a());
    j["b"] = rat_string(t.b());
    j["c"] = rat_string(t.c());
    j["d"] = rat_string(t.d());
    return j;
}

inline MoebiusTransform matrix_from_json(const Json& j) {
    return MoebiusTransform(parse_rational(j.at("a").get<std::string>()),
                            parse_rational(j.at("b").get<std::string>()),
                            parse_rational(j.at("c").get<std::string>()),
                            parse_rational(j.at("d").get<std::string>()));
}

inline Json pair_json(const GeneratorPair& pair) {
    YPieceSpec spec = spec_of_pair(pair);
    Json j;
    j["spec"]["tx"] = spec.tx.str();
    j["spec"]["ty"] = spec.ty.str();
    j["spec"]["tz"] = spec.tz.str();
    j["spec"]["x_elliptic"] = spec.x_elliptic;
    j["tu"] = matrix_json(pair.tu);
    j["tv"] = matrix_json(pair.tv);
    j["epsilon"] = pair.epsilon;
    j["parabolic_product"] = matrix_json(pair.parabolic_product);
    j["tu_class"] = element_type_name(classify(pair.tu));
    j["tv_class"] = element_type_name(classify(pair.tv));
    return j;
}

inline Json witness_json(const ClusterWitness& w) {
    Json j;
    j["a"] = w.a.get_str();
    j["b"] = w.b.get_str();
    j["p"] = w.p.get_str();
    j["d_exp"] = w.d_exp;
    j["n"] = w.n;
    j["below_geometric_regime"] = w.below_geometric_regime;
    j["f"] = w.f;
    Json us = Json::array(), vs = Json::array(), ms = Json::array(), vals = Json::array();
    for (const auto& x : w.u) us.push_back(x.get_str());
    for (const auto& x : w.v) vs.push_back(x.get_str());
    for (const auto& x : w.m) ms.push_back(x.get_str());
    for (const auto& q : w.values) vals.push_back(rat_string(q));
    j["u"] = std::move(us);
    j["v"] = std::move(vs);
    j["m"] = std::move(ms);
    j["values"] = std::move(vals);
    return j;
}

inline Json growth_report_json(const GrowthReport& rep) {
    Json j;
    j["range_max"] = rep.range_max.get_str();
    j["total"] = rep.total;
    j["in_range"] = rep.in_range;
    Json bins = Json::object(), cum = Json::object();
    for (const auto& [n, c] : rep.bins) bins[n.get_str()] = c;
    for (const auto& [n, c] : rep.cumulative) cum[n.get_str()] = c;
    j["bins"] = std::move(bins);
    j["cumulative"] = std::move(cum);
    j["bc_bound_estimate"] = rep.bc_bound_estimate;
    if (rep.gap)
        j["gap_estimate"] = rat_string(*rep.gap);
    else if (rep.gap_float)
        j["gap_estimate"] = rep.gap_float->str(20);
    else
        j["gap_estimate"] = nullptr;
    j["linear_fit"]["C"] = rat_string(rep.linear_c);
    j["linear_fit"]["D"] = rep.linear_d;
    return j;
}

inline Json integrality_json(const IntegralityReport& rep) {
    Json j;
    j["all_integer"] = rep.all_integer;
    j["squares_all_integer"] = rep.squares_all_integer;
    Json v = Json::array();
    for (const auto& viol : rep.violations) {
        Json e;
        e["trace"] = rat_string(viol.trace);
        e["witness_word"] = viol.witness_word;
        e["word_length"] = viol.word_length;
        v.push_back(std::move(e));
    }
    j["violations"] = std::move(v);
    j["not_checkable"] = rep.not_checkable;
    return j;
}

inline std::string gen_traces_csv(const TraceSetResult& result) {
    std::ostringstream out;
    out << "value_num,value_den,rule_chain\n";
    for (const auto& t : result.traces)
        out << t.value.get_num().get_str() << ',' << t.value.get_den().get_str() << ','
            << t.rule_chain << '\n';
    return out.str();
}

} // namespace tracelab
