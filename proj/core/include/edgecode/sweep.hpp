#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgecode/model.hpp"
#include "edgecode/search.hpp"

namespace edgecode {

/// Full experiment description: system constants, enabled schemes,
/// sweep axis, and Monte Carlo settings.
struct RunConfig {
    SystemParams system;
    std::vector<Scheme> schemes = {Scheme::RatelessIr, Scheme::MdsIr, Scheme::MdsR};
    bool include_bound = true;
    bool include_local = true;
    LtConfig lt_user{210, 1e-4, 1e-5, 0};
    LtConfig lt_edge{220, 1e-2, 1e-5, 0};
    McConfig mc;
    std::string sweep_var = "k";
    std::vector<double> sweep_values;  // empty: default grid for the axis
    std::vector<DecoderSide> decoders = {DecoderSide::User, DecoderSide::Edge};
    bool warn_binary_mds_column = false;
};

/// Section VII defaults: e=5, u=10, k=r=10^4, mu=0.6, beta=30 ms,
/// nu=100 Mbit/s, f_cpu=2.7 GHz, n_e=50, n_u=2, q=2, 5*10^4 trials.
RunConfig default_config();

/// Applies defaults for missing keys and collects every violation rather
/// than stopping at the first.
std::vector<std::string> validate_config(RunConfig& config);

/// Parses the JSON run configuration (top-level keys: system, schemes,
/// sweep, mc). Parse and semantic problems are appended to errors.
RunConfig parse_config_json(const std::string& text, std::vector<std::string>& errors);

/// One CSV row of a sweep.
struct SweepRow {
    std::string sweep_var;
    double value = 0;
    std::string scheme;
    DecoderSide decoder = DecoderSide::User;
    LatencyBreakdown latency;
    double ci95_norm = 0;
    std::string param1, param2, param3;
    bool binary_mds_warn = false;
    bool has_design = false;  // scheme rows carry the winning design
    SchemeDesign design;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

/// Runs every sweep point for one decoder side: per-scheme optimized
/// designs, the matching converse bound, and the local-computation
/// baseline, in deterministic row order.
SweepResult run_sweep(const RunConfig& config, DecoderSide side);

/// Exact 13-column schema (plus the optional warn column):
/// sweep_var,value,scheme,decoder,comp_s,dec_s,comm_s,total_s,total_norm,
/// param1,param2,param3,ci95_norm.
std::string sweep_to_csv(const SweepResult& result, bool warn_column);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

}  // namespace edgecode
