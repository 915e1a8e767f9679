// Command-line front end: seeded suite verification, single evaluations,
// alpha sweeps, and replay of recorded instances.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hhf/harness.hpp"

namespace {

double json_double(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null())
        return std::numeric_limits<double>::quiet_NaN();
    return j[key].get<double>();
}

hhf::InstanceInfo instance_from_json(const nlohmann::json& j) {
    hhf::InstanceInfo in;
    in.eq = j.at("eq").get<std::string>();
    in.f_spec = j.at("f").get<std::string>();
    if (j.contains("g") && !j["g"].is_null()) in.g_spec = j["g"].get<std::string>();
    in.a = j.at("a").get<double>();
    in.b = j.at("b").get<double>();
    in.alpha = json_double(j, "alpha");
    in.q = json_double(j, "q");
    in.p = json_double(j, "p");
    in.x = json_double(j, "x");
    if (j.contains("seed") && !j["seed"].is_null())
        in.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("index") && !j["index"].is_null()) in.index = j["index"].get<long>();
    return in;
}

std::vector<double> parse_alpha_range(const std::string& spec) {
    // lo:hi:step
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(std::stod(tok));
    if (parts.size() != 3 || !(parts[2] > 0.0))
        throw CLI::ValidationError("--alphas", "expected lo:hi:step with step > 0");
    std::vector<double> out;
    for (double a = parts[0]; a <= parts[1] + 1e-12 * parts[2]; a += parts[2])
        out.push_back(a);
    return out;
}

void write_or_print(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

// Replays one recorded instance; returns false on verdict mismatch. Records
// carry the tolerances they were judged with, so boundary verdicts reproduce.
bool replay_one(const nlohmann::json& rec, const hhf::QuadConfig& quad,
                hhf::VerdictTol tol) {
    const nlohmann::json& inst_json = rec.contains("instance") ? rec["instance"] : rec;
    const hhf::InstanceInfo in = instance_from_json(inst_json);
    if (rec.contains("atol") && rec["atol"].is_number())
        tol.atol = rec["atol"].get<double>();
    if (rec.contains("rtol") && rec["rtol"].is_number())
        tol.rtol = rec["rtol"].get<double>();
    const hhf::InequalityReport rerun = hhf::eval_equation(in, quad, tol);
    std::cout << hhf::report_json(rerun);
    if (rec.contains("verdict")) {
        const std::string expected = rec["verdict"].get<std::string>();
        if (expected != hhf::to_string(rerun.verdict)) {
            std::cerr << "replay: verdict mismatch (recorded " << expected << ", got "
                      << hhf::to_string(rerun.verdict) << ")\n";
            return false;
        }
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification lab for weighted midpoint inequalities "
                 "under Riemann-Liouville fractional integrals"};
    app.require_subcommand(1);

    hhf::VerdictTol tol;
    hhf::QuadConfig quad;

    // verify
    auto* verify = app.add_subcommand("verify", "run a seeded verification suite");
    std::string suite = "all";
    int n = 50;
    std::uint64_t seed = 0;
    std::string out_path;
    verify->add_option("--suite", suite, "suite id")
        ->check(CLI::IsMember(hhf::suite_names()));
    verify->add_option("--n", n, "instances per suite")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--atol", tol.atol, "verdict absolute tolerance");
    verify->add_option("--rtol", tol.rtol, "verdict relative tolerance");
    verify->add_option("--out", out_path, "output JSON path (stdout if omitted)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "alpha sweep of one bound, CSV output");
    std::string bound, f_spec, g_spec = "one", alphas_spec, csv_path;
    double a = 0.0, b = 1.0, q_opt = 2.0;
    sweep->add_option("--bound", bound, "bound id")
        ->required()
        ->check(CLI::IsMember({"thm24", "thm25", "thm26"}));
    sweep->add_option("--f", f_spec, "function spec")->required();
    sweep->add_option("--g", g_spec, "weight spec");
    sweep->add_option("--a", a, "interval left endpoint")->required();
    sweep->add_option("--b", b, "interval right endpoint")->required();
    sweep->add_option("--alphas", alphas_spec, "lo:hi:step")->required();
    sweep->add_option("--q", q_opt, "exponent q for thm25/thm26");
    sweep->add_option("--out", csv_path, "output CSV path (stdout if omitted)");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate one identity or bound");
    hhf::InstanceInfo ein;
    eval->add_option("--eq", ein.eq, "equation id")
        ->required()
        ->check(CLI::IsMember({"hh", "fejer", "hh-frac", "fejer-frac", "lemma23",
                               "kirmaci-id", "kirmaci-1", "kirmaci-2", "thm24", "thm25",
                               "thm26", "eq0"}));
    eval->add_option("--f", ein.f_spec, "function spec")->required();
    eval->add_option("--g", ein.g_spec, "weight spec");
    eval->add_option("--a", ein.a, "interval left endpoint")->required();
    eval->add_option("--b", ein.b, "interval right endpoint")->required();
    eval->add_option("--alpha", ein.alpha, "fractional order");
    eval->add_option("--q", ein.q, "exponent q");
    eval->add_option("--p", ein.p, "exponent p");
    eval->add_option("--x", ein.x, "evaluation point for eq0");

    // replay
    auto* replay = app.add_subcommand("replay", "re-run a recorded instance");
    std::string record_path;
    replay->add_option("--record", record_path, "recorded report or instance JSON")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) {
            const hhf::InstanceConfig cfg = hhf::InstanceConfig::defaults(seed);
            const hhf::SuiteReport rep = hhf::run_suite(suite, n, cfg, tol, quad);
            write_or_print(out_path, hhf::suite_report_json(rep));
            if (!out_path.empty())
                std::cout << "suite " << rep.suite << ": " << rep.pass << " pass, "
                          << rep.fail << " fail, " << rep.inconclusive
                          << " inconclusive -> " << out_path << "\n";
            return 0;
        }
        if (*sweep) {
            const hhf::Interval iv(a, b);
            const hhf::FunctionModel f = hhf::build_function(f_spec);
            const hhf::WeightModel g = hhf::parse_weight(g_spec, iv);
            const std::string csv = hhf::sweep_alpha(f, g, iv, parse_alpha_range(alphas_spec),
                                                     bound, quad, tol, q_opt);
            write_or_print(csv_path, csv);
            return 0;
        }
        if (*eval) {
            std::cout << hhf::report_json(hhf::eval_equation(ein, quad, tol));
            return 0;
        }
        if (*replay) {
            std::ifstream in(record_path);
            if (!in) throw std::runtime_error("cannot open record: " + record_path);
            nlohmann::json rec = nlohmann::json::parse(in);
            bool ok = true;
            if (rec.contains("results")) {
                for (const auto& r : rec["results"]) ok = replay_one(r, quad, tol) && ok;
            } else {
                ok = replay_one(rec, quad, tol);
            }
            return ok ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
