#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "edgecode/fountain.hpp"
#include "edgecode/model.hpp"

namespace edgecode {

/// Monte Carlo and grid-density knobs for the design search.
struct McConfig {
    std::int64_t trials = 50'000;        // final estimates
    std::int64_t coarse_trials = 2'000;  // stage-1 shortlisting
    int shortlist = 10;
    std::uint64_t seed = 12345;
    unsigned threads = 0;
    int rate_axis_points = 9;  // subsample density per rate axis
    int p_axis_points = 5;
    int decode_cost_samples = 200;
};

/// Robust-Soliton configuration of the Rateless-IR scheme for one decoder
/// placement.
struct LtConfig {
    std::int64_t gamma = 210;
    double zeta = 1e-4;
    double Pf = 1e-5;
    std::int64_t phi_prime = 0;  // 0: use the (2*mu - 1)*k default
};

/// Mean inactivation-decoding cost of k+phi' robust-Soliton rows.
struct LtCostModel {
    double matrix_mean = 0;
    double pervec_mean = 0;
    double inactivated_mean = 0;
};

LtCostModel estimate_lt_decode_cost(std::int64_t k, std::int64_t phi_prime, std::int64_t gamma,
                                    double zeta, int samples, std::uint64_t seed);

/// A design evaluated at one parameter point.
struct DesignEstimate {
    SchemeDesign design;
    LatencyBreakdown latency;
    double ci95_norm = 0;
    bool binary_mds_warn = false;  // Ro implies a nonexistent binary MDS code
};

/// Monte Carlo (Rateless-IR / MDS-IR) or closed-form (MDS-R) latency of a
/// single design. Straggling draws come from (seed, trial) substreams
/// shared with the converse bounds, so dominance checks are
/// realization-coupled. lt_cost is required for Rateless-IR with Ro < 1.
DesignEstimate evaluate_design(const SystemParams& params, const SchemeDesign& design,
                               DecoderSide side, std::int64_t trials, std::uint64_t seed,
                               unsigned threads = 0, const LtCostModel* lt_cost = nullptr);

/// Grid search over every feasible design triplet with common random
/// numbers across candidates. Rateless-IR / MDS-IR run a two-stage search
/// (coarse trials to shortlist, full trials on the shortlist); MDS-R is
/// evaluated in closed form on the full feasible grid, including the
/// decodability constraint C(e,1/Ri) - C(e-xi,1/Ri) >= Ro*C(e,1/Ri).
/// Throws if no design is feasible.
DesignEstimate optimize_design(const SystemParams& params, Scheme scheme, DecoderSide side,
                               const McConfig& mc, const LtConfig& lt);

/// Robust-Soliton parameter selection: among grid points whose
/// failure_bound(k, phi', q, Omega) <= Pf, the one minimizing the mean
/// decode-operation count for the given decoder placement. Throws if no
/// grid point satisfies the constraint.
struct SolitonChoice {
    std::int64_t gamma = 0;
    double zeta = 0;
    double bound = 0;
    double mean_ops = 0;
};

SolitonChoice optimize_soliton(std::int64_t k, std::int64_t phi_prime, int q, double Pf,
                               const std::vector<std::pair<std::int64_t, double>>& grid,
                               DecoderSide side, int u, int samples, std::uint64_t seed);

/// Default Rateless-IR overhead: k+phi' = 2*mu*k.
std::int64_t default_phi_prime(const SystemParams& params);

/// True when an [n1, k] binary MDS code other than repetition, single
/// parity check, or the trivial code would be required.
bool nontrivial_binary_mds(std::int64_t n1, std::int64_t k);

}  // namespace edgecode
