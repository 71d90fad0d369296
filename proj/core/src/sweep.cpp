#include "edgecode/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "edgecode/bounds.hpp"
#include "edgecode/latency.hpp"

namespace edgecode {

using nlohmann::json;

RunConfig default_config() { return RunConfig{}; }

namespace {

std::vector<double> default_sweep_values(const std::string& var) {
    std::vector<double> v;
    if (var == "k") {
        for (int k = 5000; k <= 15000; k += 1000) v.push_back(k);
    } else {
        for (int ms = 10; ms <= 80; ms += 10) v.push_back(ms * 1e-3);
    }
    return v;
}

bool parse_scheme(const std::string& name, Scheme& out) {
    for (const Scheme s : {Scheme::RatelessIr, Scheme::MdsIr, Scheme::MdsR})
        if (name == scheme_name(s)) {
            out = s;
            return true;
        }
    return false;
}

}  // namespace

std::vector<std::string> validate_config(RunConfig& config) {
    std::vector<std::string> errs = config.system.validate();
    if (config.sweep_var != "k" && config.sweep_var != "beta")
        errs.push_back("sweep var must be 'k' or 'beta'");
    else if (config.sweep_values.empty())
        config.sweep_values = default_sweep_values(config.sweep_var);
    for (const double v : config.sweep_values) {
        if (config.sweep_var == "k" && (v < 1 || v != std::floor(v)))
            errs.push_back("k sweep values must be positive integers");
        if (config.sweep_var == "beta" && v <= 0) errs.push_back("beta sweep values must be > 0");
    }
    if (config.schemes.empty() && !config.include_bound && !config.include_local)
        errs.push_back("nothing to run: no schemes, bound, or baseline enabled");
    if (config.mc.trials < 1) errs.push_back("mc.trials must be >= 1");
    if (config.mc.coarse_trials < 1) errs.push_back("mc.coarse_trials must be >= 1");
    if (config.mc.shortlist < 1) errs.push_back("mc.shortlist must be >= 1");
    if (config.decoders.empty()) errs.push_back("no decoder side enabled");
    for (const LtConfig* lt : {&config.lt_user, &config.lt_edge}) {
        if (lt->gamma < 1) errs.push_back("soliton gamma must be >= 1");
        if (!(lt->zeta > 0.0) || !(lt->zeta < 1.0)) errs.push_back("soliton zeta must be in (0,1)");
        if (!(lt->Pf > 0.0) || !(lt->Pf < 1.0)) errs.push_back("Pf must be in (0,1)");
    }
    return errs;
}

RunConfig parse_config_json(const std::string& text, std::vector<std::string>& errors) {
    RunConfig cfg = default_config();
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& ex) {
        errors.push_back(std::string("config parse error: ") + ex.what());
        return cfg;
    }
    if (!j.is_object()) {
        errors.push_back("config root must be a JSON object");
        return cfg;
    }
    try {
        if (j.contains("system")) {
            const json& s = j["system"];
            if (s.contains("e")) cfg.system.e = s["e"].get<int>();
            if (s.contains("u")) cfg.system.u = s["u"].get<int>();
            if (s.contains("k")) cfg.system.k = s["k"].get<std::int64_t>();
            if (s.contains("r")) cfg.system.r = s["r"].get<std::int64_t>();
            if (s.contains("mu")) {
                if (s["mu"].is_string()) {
                    const std::string m = s["mu"].get<std::string>();
                    const auto slash = m.find('/');
                    if (slash == std::string::npos)
                        cfg.system.mu = rational_from_double(std::stod(m));
                    else
                        cfg.system.mu = Rational(std::stoll(m.substr(0, slash)),
                                                 std::stoll(m.substr(slash + 1)));
                } else {
                    cfg.system.mu = rational_from_double(s["mu"].get<double>());
                }
            }
            if (s.contains("beta")) cfg.system.beta = s["beta"].get<double>();
            if (s.contains("nu")) cfg.system.nu = s["nu"].get<double>();
            if (s.contains("f_cpu")) cfg.system.f_cpu = s["f_cpu"].get<double>();
            if (s.contains("n_e")) cfg.system.n_e = s["n_e"].get<int>();
            if (s.contains("n_u")) cfg.system.n_u = s["n_u"].get<int>();
            if (s.contains("q")) cfg.system.q = s["q"].get<int>();
        }
        if (j.contains("schemes")) {
            const json& s = j["schemes"];
            if (s.contains("enabled")) {
                cfg.schemes.clear();
                cfg.include_bound = false;
                cfg.include_local = false;
                for (const auto& name : s["enabled"]) {
                    const auto n = name.get<std::string>();
                    Scheme sch;
                    if (parse_scheme(n, sch))
                        cfg.schemes.push_back(sch);
                    else if (n == "lower_bound")
                        cfg.include_bound = true;
                    else if (n == "local")
                        cfg.include_local = true;
                    else
                        errors.push_back("unknown scheme: " + n);
                }
            }
            if (s.contains("rateless")) {
                const json& r = s["rateless"];
                if (r.contains("pf")) cfg.lt_user.Pf = cfg.lt_edge.Pf = r["pf"].get<double>();
                if (r.contains("phi_prime"))
                    cfg.lt_user.phi_prime = cfg.lt_edge.phi_prime =
                        r["phi_prime"].get<std::int64_t>();
                if (r.contains("user")) {
                    if (r["user"].contains("gamma")) cfg.lt_user.gamma = r["user"]["gamma"].get<std::int64_t>();
                    if (r["user"].contains("zeta")) cfg.lt_user.zeta = r["user"]["zeta"].get<double>();
                }
                if (r.contains("edge")) {
                    if (r["edge"].contains("gamma")) cfg.lt_edge.gamma = r["edge"]["gamma"].get<std::int64_t>();
                    if (r["edge"].contains("zeta")) cfg.lt_edge.zeta = r["edge"]["zeta"].get<double>();
                }
            }
        }
        if (j.contains("sweep")) {
            const json& s = j["sweep"];
            if (s.contains("var")) cfg.sweep_var = s["var"].get<std::string>();
            if (s.contains("values")) {
                cfg.sweep_values.clear();
                for (const auto& v : s["values"]) cfg.sweep_values.push_back(v.get<double>());
            }
        }
        if (j.contains("mc")) {
            const json& m = j["mc"];
            if (m.contains("trials")) cfg.mc.trials = m["trials"].get<std::int64_t>();
            if (m.contains("coarse_trials")) cfg.mc.coarse_trials = m["coarse_trials"].get<std::int64_t>();
            if (m.contains("shortlist")) cfg.mc.shortlist = m["shortlist"].get<int>();
            if (m.contains("seed")) cfg.mc.seed = m["seed"].get<std::uint64_t>();
            if (m.contains("threads")) cfg.mc.threads = m["threads"].get<unsigned>();
            if (m.contains("rate_axis_points")) cfg.mc.rate_axis_points = m["rate_axis_points"].get<int>();
            if (m.contains("p_axis_points")) cfg.mc.p_axis_points = m["p_axis_points"].get<int>();
            if (m.contains("decode_cost_samples"))
                cfg.mc.decode_cost_samples = m["decode_cost_samples"].get<int>();
        }
    } catch (const std::exception& ex) {
        errors.push_back(std::string("config error: ") + ex.what());
    }
    return cfg;
}

std::string format_double(double v) {
    char buf[40];
    for (const int prec : {15, 16, 17}) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

SweepResult run_sweep(const RunConfig& config, DecoderSide side) {
    SweepResult result;
    for (const double value : config.sweep_values) {
        SystemParams params = config.system;
        if (config.sweep_var == "k") {
            params.k = static_cast<std::int64_t>(value);
            params.r = params.k;  // square model matrix along the k axis
        } else {
            params.beta = value;
        }
        const double psi_s = psi(params);
        const LtConfig& lt = side == DecoderSide::User ? config.lt_user : config.lt_edge;

        for (const Scheme scheme : config.schemes) {
            const DesignEstimate est = optimize_design(params, scheme, side, config.mc, lt);
            SweepRow row;
            row.sweep_var = config.sweep_var;
            row.value = value;
            row.scheme = scheme_name(scheme);
            row.decoder = side;
            row.latency = est.latency;
            row.ci95_norm = est.ci95_norm;
            row.param1 = scheme == Scheme::MdsR ? std::to_string(est.design.xi)
                                                : std::to_string(est.design.p);
            row.param2 = est.design.Ro.str();
            row.param3 = est.design.Ri.str();
            row.binary_mds_warn = est.binary_mds_warn;
            row.has_design = true;
            row.design = est.design;
            result.rows.push_back(std::move(row));
        }
        if (config.include_bound) {
            const BoundEstimate b = side == DecoderSide::User
                                        ? tau_u_lower(params, config.mc.trials, config.mc.seed,
                                                      config.mc.threads)
                                        : tau_e_lower(params, config.mc.trials, config.mc.seed,
                                                      config.mc.threads);
            SweepRow row;
            row.sweep_var = config.sweep_var;
            row.value = value;
            row.scheme = "lower_bound";
            row.decoder = side;
            row.latency = make_breakdown(b.comp_mean, 0.0, b.comm_mean, psi_s);
            row.ci95_norm = b.ci95 / psi_s;
            result.rows.push_back(std::move(row));
        }
        if (config.include_local) {
            SweepRow row;
            row.sweep_var = config.sweep_var;
            row.value = value;
            row.scheme = "local";
            row.decoder = side;
            row.latency = make_breakdown(psi_s, 0.0, 0.0, psi_s);
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

std::string sweep_to_csv(const SweepResult& result, bool warn_column) {
    std::ostringstream os;
    os << "sweep_var,value,scheme,decoder,comp_s,dec_s,comm_s,total_s,total_norm,"
          "param1,param2,param3,ci95_norm";
    if (warn_column) os << ",binary_mds_warn";
    os << '\n';
    for (const SweepRow& r : result.rows) {
        os << r.sweep_var << ',' << format_double(r.value) << ',' << r.scheme << ','
           << decoder_name(r.decoder) << ',' << format_double(r.latency.comp) << ','
           << format_double(r.latency.dec) << ',' << format_double(r.latency.comm) << ','
           << format_double(r.latency.total) << ',' << format_double(r.latency.normalized) << ','
           << r.param1 << ',' << r.param2 << ',' << r.param3 << ',' << format_double(r.ci95_norm);
        if (warn_column) os << ',' << (r.binary_mds_warn ? 1 : 0);
        os << '\n';
    }
    return os.str();
}

}  // namespace edgecode
