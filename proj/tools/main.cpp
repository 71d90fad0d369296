#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edgecode/placement.hpp"
#include "edgecode/sweep.hpp"

namespace fs = std::filesystem;
using namespace edgecode;

namespace {

int fail(const std::vector<std::string>& errors) {
    for (const std::string& e : errors) std::cerr << "error: " << e << '\n';
    return 2;
}

void dump_assignment(const RunConfig& cfg, const SweepRow& row, const fs::path& out_dir) {
    SystemParams params = cfg.system;
    if (row.sweep_var == "k") {
        params.k = static_cast<std::int64_t>(row.value);
        params.r = params.k;
    } else {
        params.beta = row.value;
    }
    const AssignmentMatrix m =
        row.design.scheme == Scheme::MdsR
            ? batch_assignment(params.k, params.e, row.design.Ro, row.design.Ri)
            : cyclic_assignment(params.k, params.e, row.design.Ro, row.design.Ri);
    std::ofstream f(out_dir / ("assignment_" + row.scheme + ".csv"));
    f << to_csv(m);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coded distributed linear inference latency sweeps"};

    std::string config_path, sweep_var, schemes_csv, decoder = "both", out_dir = ".";
    std::uint64_t seed = 0;
    std::int64_t trials = 0;
    bool has_seed = false, has_trials = false, dump = false, warn_col = false;

    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--seed", seed, "master seed")->each([&](const std::string&) { has_seed = true; });
    app.add_option("--trials", trials, "Monte Carlo trials per estimate")
        ->each([&](const std::string&) { has_trials = true; });
    app.add_option("--sweep", sweep_var, "sweep axis")->check(CLI::IsMember({"k", "beta"}));
    app.add_option("--schemes", schemes_csv,
                   "comma-separated: rateless_ir,mds_ir,mds_r,lower_bound,local");
    app.add_option("--decoder", decoder, "decoding placement")
        ->check(CLI::IsMember({"user", "edge", "both"}));
    app.add_option("--out", out_dir, "output directory");
    app.add_flag("--dump-assignment", dump, "write assignment_<scheme>.csv for the first sweep point");
    app.add_flag("--warn-binary-mds", warn_col,
                 "append a binary_mds_warn column flagging rates that need nonexistent binary MDS codes");

    CLI11_PARSE(app, argc, argv);

    std::vector<std::string> errors;
    RunConfig cfg = default_config();
    if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) return fail({"cannot open config: " + config_path});
        std::stringstream buf;
        buf << f.rdbuf();
        cfg = parse_config_json(buf.str(), errors);
    }
    if (has_seed) cfg.mc.seed = seed;
    if (has_trials) cfg.mc.trials = trials;
    if (!sweep_var.empty()) {
        if (sweep_var != cfg.sweep_var) cfg.sweep_values.clear();
        cfg.sweep_var = sweep_var;
    }
    if (!schemes_csv.empty()) {
        cfg.schemes.clear();
        cfg.include_bound = false;
        cfg.include_local = false;
        std::stringstream ss(schemes_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok == "rateless_ir")
                cfg.schemes.push_back(Scheme::RatelessIr);
            else if (tok == "mds_ir")
                cfg.schemes.push_back(Scheme::MdsIr);
            else if (tok == "mds_r")
                cfg.schemes.push_back(Scheme::MdsR);
            else if (tok == "lower_bound")
                cfg.include_bound = true;
            else if (tok == "local")
                cfg.include_local = true;
            else
                errors.push_back("unknown scheme: " + tok);
        }
    }
    if (decoder == "user")
        cfg.decoders = {DecoderSide::User};
    else if (decoder == "edge")
        cfg.decoders = {DecoderSide::Edge};
    else
        cfg.decoders = {DecoderSide::User, DecoderSide::Edge};
    cfg.warn_binary_mds_column = warn_col;

    const std::vector<std::string> validation = validate_config(cfg);
    errors.insert(errors.end(), validation.begin(), validation.end());
    if (!errors.empty()) return fail(errors);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) return fail({"cannot create output directory: " + out_dir});

    try {
        for (const DecoderSide side : cfg.decoders) {
            const SweepResult result = run_sweep(cfg, side);
            for (const SweepRow& row : result.rows)
                if (row.binary_mds_warn)
                    std::cerr << "warning: " << row.scheme << " at " << row.sweep_var << "="
                              << format_double(row.value) << " (" << decoder_name(row.decoder)
                              << ") uses Ro=" << row.param2
                              << ", which requires a nonexistent nontrivial binary MDS code; "
                                 "the reported latency is a lower bound\n";
            const fs::path csv_path =
                fs::path(out_dir) / ("sweep_" + cfg.sweep_var + "_" + decoder_name(side) + ".csv");
            std::ofstream f(csv_path);
            f << sweep_to_csv(result, cfg.warn_binary_mds_column);
            std::cout << "wrote " << csv_path.string() << '\n';

            if (dump) {
                for (const Scheme s : cfg.schemes)
                    for (const SweepRow& row : result.rows)
                        if (row.has_design && row.scheme == scheme_name(s)) {
                            dump_assignment(cfg, row, out_dir);
                            break;
                        }
                dump = false;  // first decoder side only
            }
        }
    } catch (const std::exception& ex) {
        return fail({ex.what()});
    }
    return 0;
}
