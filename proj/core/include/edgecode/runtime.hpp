#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "edgecode/model.hpp"
#include "edgecode/placement.hpp"
#include "edgecode/rng.hpp"

namespace edgecode {

/// Straggling times: i.i.d. exponential with mean beta, one per EN.
struct StragglerDraw {
    std::vector<double> lambdas;
};

StragglerDraw draw_stragglers(double beta, int e, Rng& rng);

/// Products completed per EN at time t:
/// D_j = min(floor((t - lambda_j)^+ / delta), rows_per_en).
std::vector<std::int64_t> products_done(std::span<const double> lambdas, double t, double delta,
                                        std::int64_t rows_per_en);

/// One realized computation phase.
struct ComputationOutcome {
    double Lc = 0;                               // computation latency
    std::int64_t P = 0;                          // total products at Lc
    std::int64_t distinct = 0;                   // distinct rows computed at Lc
    int M = 0;                                   // ENs with lambda_j < Lc
    std::vector<std::int32_t> diversities;       // per coded row (1..n1), all completions
    std::vector<std::int32_t> retained;          // 1-based indices kept by the scheme
    std::vector<std::int32_t> retained_diversity;  // diversity used for transmission
};

/// Runs the computation phase to the scheme's stopping time.
/// Rateless-IR stops at >= k+phi' distinct and >= p total products and
/// retains the k+phi' distinct rows of highest diversity (ties to lowest
/// index); MDS-IR stops at >= k distinct and >= p total and retains all;
/// MDS-R stops when xi ENs have finished their queues and keeps only the
/// products (and copies) held by those ENs.
/// Throws if the stopping predicate cannot hold even at t = infinity.
ComputationOutcome run_computation(const AssignmentMatrix& assignment, const StragglerDraw& draw,
                                   const SchemeDesign& design, double delta);

/// Shape of a cyclic-shift assignment; lets per-trial statistics be
/// computed in O(e * blocks) without materializing the matrix.
struct CyclicGeometry {
    int e = 0;
    std::int64_t n1 = 0;
    std::int64_t m1 = 0;
    std::int64_t rows_per_en = 0;
    std::int64_t full_blocks = 0;
    std::int64_t partial_rows = 0;

    static CyclicGeometry make(std::int64_t k, int e, const Rational& Ro, const Rational& Ri);
};

/// Aggregates of one trial needed by the latency accounting.
struct TrialStats {
    double Lc = 0;
    std::int64_t P = 0;
    std::int64_t distinct = 0;
    int M = 0;
    double sum_inv_retained = 0;  // sum over retained rows of 1/M_i
};

/// Event-exact trial for the irregular-repetition schemes on the cyclic
/// assignment. retain_top == 0 keeps every computed distinct row (MDS-IR);
/// otherwise the retain_top rows of highest diversity (Rateless-IR).
TrialStats cyclic_trial(const CyclicGeometry& g, std::span<const double> lambdas, double delta,
                        std::int64_t distinct_target, std::int64_t p, std::int64_t retain_top);

/// Same trial evaluated at several total-product thresholds p at once;
/// the distinct-target first-hit is shared across them. out must have
/// ps.size() entries.
void cyclic_trial_multi(const CyclicGeometry& g, std::span<const double> lambdas, double delta,
                        std::int64_t distinct_target, std::span<const std::int64_t> ps,
                        std::int64_t retain_top, std::span<TrialStats> out);

}  // namespace edgecode
