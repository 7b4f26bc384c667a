// tracelab: construct Y-piece generator pairs, generate trace sets via the
// containment rules, measure clustering/growth, run the counterexample
// checks, build unit-interval cluster witnesses, and enumerate group
// traces as an independent oracle.
//
// Exit codes: 0 ok, 2 usage/parse, 3 domain/regime, 4 budget exhausted.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>

#include "tracelab/io.hpp"
#include "tracelab/serialize.hpp"
#include "tracelab/svg.hpp"
#include "tracelab/trace_rules.hpp"

namespace tl = tracelab;
using tl::Json;
using tl::Rat;

namespace {

constexpr const char* kVersion = "tracelab 0.1.0";

struct Output {
    std::optional<std::string> path;
    bool manifest = false;

    void emit(const std::string& data, const Json& params, const std::string& command) const {
        if (!path) {
            std::cout << data;
            return;
        }
        tl::write_file(*path, data);
        if (manifest) {
            Json m;
            m["tool"] = kVersion;
            m["command"] = command;
            m["parameters"] = params;
            m["precision_bits"] = static_cast<long>(tl::BigFloat::default_precision());
            m["determinism"] = "outputs are a pure function of the parameters above";
            m["outputs"][*path] = tl::sha256_hex(data);
            tl::write_file(*path + ".manifest.json", m.dump(2) + "\n");
        }
    }
};

Rat parse_rat_flag(const std::string& s) {
    return tl::parse_rational(s); // throws ParseError -> exit 2
}

std::vector<tl::TraceValue> load_values(const std::string& path) {
    std::string text = tl::read_file(path);
    std::vector<tl::TraceValue> values;
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        Json j = Json::parse(text);
        if (!j.contains("values")) throw tl::ParseError("json input has no values array");
        for (const auto& v : j["values"])
            values.push_back(tl::TraceValue::rational(tl::parse_rational(v.get<std::string>())));
        return values;
    }
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) return values;
    int ncol = -1, dcol = -1, col = 0;
    std::istringstream head(line);
    std::string name;
    while (std::getline(head, name, ',')) {
        if (name == "value_num" || name == "trace_numerator") ncol = col;
        if (name == "value_den" || name == "trace_denominator") dcol = col;
        ++col;
    }
    if (ncol < 0 || dcol < 0) throw tl::ParseError("csv needs value_num/value_den or trace_* columns");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::vector<std::string> cells;
        std::string cell;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (static_cast<int>(cells.size()) <= std::max(ncol, dcol))
            throw tl::ParseError("short csv row: " + line);
        tl::Int n(cells[ncol]), d(cells[dcol]);
        values.push_back(tl::TraceValue::rational(tl::make_rat(n, d)));
    }
    return values;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact trace-set experiments for two-generator Fuchsian groups"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    int threads = 1;
    long precision_bits = 256;
    if (const char* env = std::getenv("TRACELAB_PRECISION_BITS")) precision_bits = std::atol(env);
    app.add_option("--threads", threads, "worker threads (default 1, for reproducibility)")
        ->capture_default_str();
    app.add_option("--precision-bits", precision_bits, "BigFloat precision (default 256)");

    std::function<void()> run;

    // ---- build-ypiece ----------------------------------------------------
    auto* cmd_build = app.add_subcommand("build-ypiece", "canonical generator pair for Y(tx, ty, 0)");
    {
        auto tx = std::make_shared<std::string>();
        auto ty = std::make_shared<std::string>();
        auto elliptic = std::make_shared<bool>(false);
        auto svg_path = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto manifest = std::make_shared<bool>(false);
        cmd_build->add_option("--tx", *tx, "first boundary trace (p/q or decimal)")->required();
        cmd_build->add_option("--ty", *ty, "second boundary trace")->default_val("2");
        cmd_build->add_flag("--elliptic", *elliptic, "allow tx in [0,2) as an elliptic fixed point");
        cmd_build->add_flag("--json", "print the pair as JSON (default)");
        cmd_build->add_option("--svg", *svg_path, "write isometric circles and axes as SVG");
        cmd_build->add_option("--out,-o", *out, "write JSON here instead of stdout");
        cmd_build->add_flag("--manifest", *manifest, "write a run manifest next to --out");
        cmd_build->callback([=, &run]() { run = [=]() {
            auto spec = tl::make_ypiece_cusped(tl::TraceValue::rational(parse_rat_flag(*tx)),
                                               tl::TraceValue::rational(parse_rat_flag(*ty)),
                                               *elliptic);
            auto pair = tl::build_generators(spec);
            Json params{{"tx", *tx}, {"ty", *ty}, {"elliptic", *elliptic}};
            if (!svg_path->empty())
                tl::write_file(*svg_path, tl::svg_circles(tl::pair_figure(pair.tu, pair.tv)));
            Output o{out->empty() ? std::nullopt : std::make_optional(*out), *manifest};
            o.emit(tl::pair_json(pair).dump(2) + "\n", params, "build-ypiece");
        }; });
    }

    // ---- gen-traces ------------------------------------------------------
    auto* cmd_gen = app.add_subcommand("gen-traces", "closure of the containment rules under a cap");
    {
        auto tx = std::make_shared<std::string>();
        auto ty = std::make_shared<std::string>();
        auto elliptic = std::make_shared<bool>(false);
        auto cap = std::make_shared<std::string>("50");
        auto budget = std::make_shared<int>(2);
        auto out = std::make_shared<std::string>();
        auto manifest = std::make_shared<bool>(false);
        cmd_gen->add_option("--tx", *tx)->required();
        cmd_gen->add_option("--ty", *ty)->default_val("2");
        cmd_gen->add_flag("--elliptic", *elliptic);
        cmd_gen->add_option("--cap", *cap, "largest trace kept")->capture_default_str();
        cmd_gen->add_option("--budget", *budget, "max rule applications per trace")->capture_default_str();
        cmd_gen->add_option("--out,-o", *out);
        cmd_gen->add_flag("--manifest", *manifest);
        cmd_gen->callback([=, &run]() { run = [=]() {
            auto spec = tl::make_ypiece_cusped(tl::TraceValue::rational(parse_rat_flag(*tx)),
                                               tl::TraceValue::rational(parse_rat_flag(*ty)),
                                               *elliptic);
            auto result = tl::generate_trace_set(spec, parse_rat_flag(*cap), *budget);
            if (result.truncated)
                std::cerr << "note: rule budget exhausted before closure (output truncated)\n";
            Json params{{"tx", *tx}, {"ty", *ty}, {"elliptic", *elliptic}, {"cap", *cap}, {"budget", *budget}};
            Output o{out->empty() ? std::nullopt : std::make_optional(*out), *manifest};
            o.emit(tl::gen_traces_csv(result), params, "gen-traces");
        }; });
    }

    // ---- cluster-stats ---------------------------------------------------
    auto* cmd_stats = app.add_subcommand("cluster-stats", "bin/cumulative/B-C/gap report over traces");
    {
        auto input = std::make_shared<std::string>();
        auto tx = std::make_shared<std::string>();
        auto ty = std::make_shared<std::string>();
        auto cap = std::make_shared<std::string>("50");
        auto budget = std::make_shared<int>(2);
        auto range = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto manifest = std::make_shared<bool>(false);
        cmd_stats->add_option("--input", *input, "CSV (value_num/value_den) or witness JSON");
        cmd_stats->add_option("--tx", *tx, "generate traces from this seed instead of --input");
        cmd_stats->add_option("--ty", *ty)->default_val("2");
        cmd_stats->add_option("--cap", *cap)->capture_default_str();
        cmd_stats->add_option("--budget", *budget)->capture_default_str();
        cmd_stats->add_option("--range", *range, "max bin index (default: ceil of largest trace)");
        cmd_stats->add_option("--out,-o", *out);
        cmd_stats->add_flag("--manifest", *manifest);
        cmd_stats->callback([=, &run]() { run = [=]() {
            std::vector<tl::TraceValue> values;
            if (!input->empty()) {
                values = load_values(*input);
            } else if (!tx->empty()) {
                auto spec = tl::make_ypiece_cusped(tl::TraceValue::rational(parse_rat_flag(*tx)),
                                                   tl::TraceValue::rational(parse_rat_flag(*ty)));
                for (auto& t : tl::generate_trace_set(spec, parse_rat_flag(*cap), *budget).traces)
                    values.push_back(tl::TraceValue::rational(t.value));
            } else {
                throw tl::UsageError("cluster-stats needs --input or --tx");
            }
            tl::Int range_max(0);
            if (!range->empty()) {
                range_max = tl::Int(*range);
            } else {
                for (const auto& v : values) {
                    tl::Int c = tl::ceil_rat(v.rat());
                    if (c > range_max) range_max = c;
                }
            }
            auto rep = tl::cluster_report(values, range_max);
            Json params{{"input", *input}, {"tx", *tx}, {"ty", *ty},
                        {"cap", *cap},     {"budget", *budget}, {"range", range_max.get_str()}};
            Output o{out->empty() ? std::nullopt : std::make_optional(*out), *manifest};
            o.emit(tl::growth_report_json(rep).dump(2) + "\n", params, "cluster-stats");
        }; });
    }

    // ---- counterexample --------------------------------------------------
    auto* cmd_cx = app.add_subcommand("counterexample", "S_n union counting in the a > b^2 regime");
    {
        auto a = std::make_shared<std::string>();
        auto b = std::make_shared<std::string>();
        auto levels = std::make_shared<int>(3);
        auto cap = std::make_shared<long long>(1000);
        auto out = std::make_shared<std::string>();
        auto manifest = std::make_shared<bool>(false);
        cmd_cx->add_option("--a", *a)->required();
        cmd_cx->add_option("--b", *b)->required();
        cmd_cx->add_option("--levels", *levels, "check S_0..S_levels")->capture_default_str();
        cmd_cx->add_option("--cap", *cap, "value cap N")->capture_default_str();
        cmd_cx->add_option("--out,-o", *out);
        cmd_cx->add_flag("--manifest", *manifest);
        cmd_cx->callback([=, &run]() { run = [=]() {
            tl::Int ia(*a), ib(*b);
            Json j;
            j["a"] = ia.get_str();
            j["b"] = ib.get_str();
            j["levels"] = *levels;
            j["cap"] = *cap;
            Json per = Json::array();
            for (int n = 0; n <= *levels; ++n) {
                auto fam = tl::sn_family(ia, ib, n, Rat(static_cast<long>(*cap)));
                Json e;
                e["level"] = n;
                e["count"] = static_cast<long>(fam.elements.size());
                per.push_back(std::move(e));
            }
            j["per_level"] = std::move(per);
            auto uc = tl::union_sn_count_bound(ia, ib, *levels, *cap);
            j["union"]["actual_count"] = uc.actual_count;
            j["union"]["bound"] = tl::rat_string(uc.bound);
            j["union"]["within_bound"] = Rat(static_cast<long>(uc.actual_count)) <= uc.bound;
            Json ineq = Json::array();
            bool all_ok = true;
            for (int n = 0; n <= *levels; ++n) {
                auto det = tl::counterexample_inequality_detail(ia, ib, n);
                Json e;
                e["level"] = n;
                e["power_ok"] = det.power_ok;
                e["analytic_ok"] = det.analytic_ok;
                e["enumerated"] = det.enumerated;
                e["enumeration_ok"] = det.enumeration_ok;
                all_ok = all_ok && det.power_ok && det.analytic_ok && det.enumeration_ok;
                ineq.push_back(std::move(e));
            }
            j["inequalities"] = std::move(ineq);
            j["all_checks_pass"] = all_ok && Rat(static_cast<long>(uc.actual_count)) <= uc.bound;
            Json params{{"a", *a}, {"b", *b}, {"levels", *levels}, {"cap", *cap}};
            Output o{out->empty() ? std::nullopt : std::make_optional(*out), *manifest};
            o.emit(j.dump(2) + "\n", params, "counterexample");
        }; });
    }

    // ---- construct-cluster -------------------------------------------------
    auto* cmd_cl = app.add_subcommand("construct-cluster", "unit-interval cluster witness (B-C refutation)");
    {
        auto a = std::make_shared<std::string>();
        auto b = std::make_shared<std::string>();
        auto n = std::make_shared<int>(0);
        auto refute = std::make_shared<int>(0);
        auto out = std::make_shared<std::string>();
        auto manifest = std::make_shared<bool>(false);
        cmd_cl->add_option("--a", *a)->required();
        cmd_cl->add_option("--b", *b)->required();
        auto* nopt = cmd_cl->add_option("--n", *n, "witness size (n+1 values)");
        auto* ropt = cmd_cl->add_option("--refute-bc", *refute, "target bound B to refute");
        nopt->excludes(ropt);
        cmd_cl->add_option("--out,-o", *out);
        cmd_cl->add_flag("--manifest", *manifest);
        cmd_cl->callback([=, &run]() { run = [=]() {
            tl::Int ia(*a), ib(*b);
            tl::ClusterWitness w;
            if (*refute > 0)
                w = tl::refute_bc(ia, ib, *refute);
            else if (*n > 0)
                w = tl::build_witness(ia, ib, *n);
            else
                throw tl::UsageError("construct-cluster needs --n or --refute-bc");
            Json params{{"a", *a}, {"b", *b}, {"n", *n}, {"refute_bc", *refute}};
            Output o{out->empty() ? std::nullopt : std::make_optional(*out), *manifest};
            o.emit(tl::witness_json(w).dump(2) + "\n", params, "construct-cluster");
        }; });
    }

    // ---- enumerate ---------------------------------------------------------
    auto* cmd_enum = app.add_subcommand("enumerate", "census of reduced-word traces (free reduction only)");
    {
        auto gen_file = std::make_shared<std::string>();
        auto modular = std::make_shared<bool>(false);
        auto max_len = std::make_shared<int>(0);
        auto node_budget = std::make_shared<long long>(10'000'000);
        auto out = std::make_shared<std::string>();
        auto manifest = std::make_shared<bool>(false);
        cmd_enum->add_option("--gen-file", *gen_file, "pair JSON from build-ypiece");
        cmd_enum->add_flag("--modular", *modular, "use S = [[0,-1],[1,0]], T = [[1,1],[0,1]]");
        cmd_enum->add_option("--max-len", *max_len, "maximum reduced word length")->required();
        cmd_enum->add_option("--node-budget", *node_budget)->capture_default_str();
        cmd_enum->add_option("--out,-o", *out);
        cmd_enum->add_flag("--manifest", *manifest);
        cmd_enum->callback([=, &run, &threads]() { run = [=, &threads]() {
            if (*max_len < 1) throw tl::UsageError("--max-len must be >= 1");
            tl::MoebiusTransform tu, tv;
            if (*modular) {
                tu = tl::MoebiusTransform(Rat(0), Rat(-1), Rat(1), Rat(0));
                tv = tl::MoebiusTransform(Rat(1), Rat(1), Rat(0), Rat(1));
            } else if (!gen_file->empty()) {
                Json j = Json::parse(tl::read_file(*gen_file));
                tu = tl::matrix_from_json(j.at("tu"));
                tv = tl::matrix_from_json(j.at("tv"));
            } else {
                throw tl::UsageError("enumerate needs --modular or --gen-file");
            }
            tl::EnumOptions opt;
            opt.node_budget = *node_budget;
            opt.threads = threads;
            auto census = tl::enumerate_traces(tu, tv, *max_len, opt);
            Json params{{"gen_file", *gen_file}, {"modular", *modular},
                        {"max_len", *max_len},   {"node_budget", *node_budget}};
            Output o{out->empty() ? std::nullopt : std::make_optional(*out), *manifest};
            o.emit(tl::census_to_csv(census), params, "enumerate");
        }; });
    }

    // ---- check-arithmetic ----------------------------------------------------
    auto* cmd_arith = app.add_subcommand("check-arithmetic", "trace integrality over a census sample");
    {
        auto census_path = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto manifest = std::make_shared<bool>(false);
        cmd_arith->add_option("--census", *census_path, "census CSV from enumerate")->required();
        cmd_arith->add_option("--out,-o", *out);
        cmd_arith->add_flag("--manifest", *manifest);
        cmd_arith->callback([=, &run]() { run = [=]() {
            auto census = tl::census_from_csv(tl::read_file(*census_path));
            auto rep = tl::integrality_census(census);
            Json params{{"census", *census_path}};
            Output o{out->empty() ? std::nullopt : std::make_optional(*out), *manifest};
            o.emit(tl::integrality_json(rep).dump(2) + "\n", params, "check-arithmetic");
        }; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        tl::BigFloat::set_default_precision(precision_bits);
        if (threads < 1) throw tl::UsageError("--threads must be >= 1");
        if (run) run();
    } catch (const tl::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tl::BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const tl::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
