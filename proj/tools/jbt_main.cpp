#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "jbt/peirce.hpp"
#include "jbt/serialization.hpp"
#include "jbt/verification.hpp"

namespace {

using jbt::Json;

struct RunConfig {
    std::string spec_path;
    std::string op_desc;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int budget = 0;  ///< 0 = command default
    double tol = 1e-8;
    std::string out_path;
    std::string format = "json";
    bool strict = false;
};

/// Writes JSON (or raw text) to --out or stdout. dump(2) keeps output
/// byte-identical across runs with the same inputs.
void emit_text(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw jbt::InvalidInput("cannot open output file: " + cfg.out_path);
    out << text;
}

void emit_json(const RunConfig& cfg, const Json& j) { emit_text(cfg, j.dump(2) + "\n"); }

jbt::SpaceRef load_space(const RunConfig& cfg) {
    if (cfg.spec_path.empty()) throw jbt::InvalidInput("--spec is required for this command");
    return jbt::build_space(jbt::load_spec_file(cfg.spec_path));
}

/// Operator descriptions are JSON, passed inline or as a file path.
Json load_op_desc(const RunConfig& cfg) {
    if (cfg.op_desc.empty()) throw jbt::InvalidInput("--op is required for radius");
    if (!cfg.op_desc.empty() && cfg.op_desc.front() == '{') {
        Json j = Json::parse(cfg.op_desc, nullptr, false);
        if (j.is_discarded()) throw jbt::InvalidInput("inline --op is not valid JSON");
        return j;
    }
    std::ifstream in(cfg.op_desc);
    if (!in) throw jbt::InvalidInput("cannot open operator file: " + cfg.op_desc);
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) throw jbt::InvalidInput("operator file is not valid JSON");
    return j;
}

int cmd_describe(const RunConfig& cfg) {
    jbt::SpaceRef space = load_space(cfg);
    Json out;
    out["schema_version"] = 1;
    out["spec"] = jbt::spec_to_json(space->spec);
    out["dim"] = space->dim;
    out["commutative"] = jbt::is_commutative(space);
    Json basis = Json::array();
    for (const jbt::Mat& b : space->basis) basis.push_back(jbt::matrix_to_json(b));
    out["basis"] = basis;
    Json trips = Json::array();
    for (int k = 0; k < space->dim; ++k) {
        jbt::RangeTripotent r =
            jbt::range_tripotent(jbt::Element{space, jbt::Vec::Unit(space->dim, k)});
        Json t;
        t["basis_index"] = k;
        t["zero"] = r.zero;
        if (!r.zero) {
            jbt::PeirceSystem ps = jbt::peirce(r.tripotent, cfg.tol);
            t["coords"] = jbt::coords_to_json(r.tripotent.x);
            t["complete"] = jbt::is_complete_tripotent(ps);
            t["minimal"] = jbt::is_minimal_tripotent(ps);
            t["unitary"] = jbt::is_unitary_tripotent(r.tripotent, cfg.tol);
            t["peirce_ranks"] = Json::array({ps.rank2, ps.rank1, ps.rank0});
        }
        trips.push_back(t);
    }
    out["tripotents"] = trips;
    emit_json(cfg, out);
    return 0;
}

int cmd_verify_paper(const RunConfig& cfg) {
    // The battery has its own canonical seed; --seed still overrides.
    std::uint64_t seed = cfg.seed_given ? cfg.seed : 7;
    std::vector<jbt::verify::CheckResult> checks = jbt::verify::run_battery(seed);
    bool all_pass = true;
    Json arr = Json::array();
    for (const auto& c : checks) {
        Json j;
        j["name"] = c.name;
        j["expected"] = c.expected;
        j["got"] = c.got;
        j["tol"] = c.tol;
        j["pass"] = c.pass;
        arr.push_back(j);
        all_pass = all_pass && c.pass;
    }
    Json out;
    out["schema_version"] = 1;
    out["seed"] = seed;
    out["checks"] = arr;
    out["all_pass"] = all_pass;
    emit_json(cfg, out);
    return all_pass ? 0 : 1;
}

int cmd_radius(const RunConfig& cfg) {
    jbt::SpaceRef space = load_space(cfg);
    jbt::RealLinearOperator op = jbt::operator_from_json(space, load_op_desc(cfg));
    jbt::OptimizerBudget budget;
    if (cfg.budget > 0) budget.starts = cfg.budget;
    if (cfg.format == "csv") {
        int n_points = budget.starts;
        std::vector<jbt::Complex> pts = jbt::numerical_range_sample(op, n_points, cfg.seed);
        emit_text(cfg, jbt::range_to_csv(pts));
        return 0;
    }
    jbt::RadiusEstimate est = jbt::numerical_radius(op, cfg.seed, budget);
    emit_json(cfg, jbt::radius_to_json(est, cfg.seed, budget));
    if (cfg.strict && !est.converged) return 3;
    return 0;
}

int cmd_index(const RunConfig& cfg) {
    jbt::SpaceRef space = load_space(cfg);
    int n_random = cfg.budget > 0 ? cfg.budget : 20;
    jbt::OptimizerBudget budget{12, 120};
    jbt::IndexEstimate est = jbt::numerical_index_estimate(space, cfg.seed, n_random, budget);
    emit_json(cfg, jbt::index_to_json(est, cfg.seed, budget));
    return 0;
}

int cmd_report(const RunConfig& cfg) {
    jbt::SpaceRef space = load_space(cfg);
    jbt::CommutativityReport rep = jbt::commutativity_report(space, cfg.tol, cfg.seed);
    emit_json(cfg, jbt::report_to_json(rep));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-dimensional JB*-triple computations"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--spec", cfg.spec_path, "space spec JSON file");
    auto* seed_opt = app.add_option("--seed", cfg.seed, "RNG seed (default 0)");
    app.add_option("--budget", cfg.budget,
                   "work budget: optimizer starts (radius), random operators (index), "
                   "sample points (radius --format csv)")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol", cfg.tol, "algebraic tolerance (default 1e-8)")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", cfg.out_path, "output file (default stdout)");
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--strict", cfg.strict, "exit 3 on optimizer non-convergence");

    auto* describe = app.add_subcommand("describe", "dimension, basis, tripotent inventory");
    auto* verify = app.add_subcommand("verify-paper", "run the full verification battery");
    auto* radius = app.add_subcommand("radius", "numerical radius of an operator");
    radius->add_option("--op", cfg.op_desc, "operator description (JSON file or inline)");
    auto* index = app.add_subcommand("index", "numerical index estimate of a space");
    auto* report = app.add_subcommand("report", "commutativity characterization report");
    for (auto* sub : {describe, verify, radius, index, report}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cfg.seed_given = seed_opt->count() > 0;
    if (cfg.format == "csv" && !radius->parsed()) {
        std::fprintf(stderr, "error: --format csv is only available for radius\n");
        return 2;
    }

    try {
        if (describe->parsed()) return cmd_describe(cfg);
        if (verify->parsed()) return cmd_verify_paper(cfg);
        if (radius->parsed()) return cmd_radius(cfg);
        if (index->parsed()) return cmd_index(cfg);
        if (report->parsed()) return cmd_report(cfg);
    } catch (const jbt::InvalidInput& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const jbt::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
