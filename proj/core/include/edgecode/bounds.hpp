#pragma once

#include <cstdint>
#include <span>

#include "edgecode/model.hpp"

namespace edgecode {

/// Lemma-4 coefficient: b^2/a when a/b is an integer, else
/// (ceil(a/b)*b - a)/floor(a/b) + (a - b*floor(a/b))/ceil(a/b).
/// Monotonically decreasing in a, increasing in b, continuous across the
/// branch points. Requires a >= b > 0.
double f_bound(double a, double b);

/// Lemma 1: earliest t with sum_j min(floor((t-lambda_j)^+/delta), mu_k) >= p.
/// The cap mu_k is the storage bound mu*k and stays real-valued. Errors if
/// p exceeds e*mu_k.
double lc_lower(std::span<const double> lambdas, std::int64_t p, double delta, const Rational& mu_k);

/// Lemma 2: scheme-independent downlink bound for user-side decoding given
/// p computed products; alpha * f_bound(p, k) with alpha = u*log2(q)/nu.
/// Requires p >= k.
double ldu_lower(std::int64_t p, std::int64_t k, int u, int q, double nu);

/// Lemma 3: downlink bound for EN-side decoding, u*k*log2(q)/(nu*e).
double lde_lower(std::int64_t k, int u, int q, double nu, int e);

/// Monte Carlo estimate with a normal-approximation 95% half-width.
struct BoundEstimate {
    double mean = 0;
    double ci95 = 0;
    double comp_mean = 0;  // computation part at the per-trial argmin
    double comm_mean = 0;  // communication part at the per-trial argmin
};

/// Theorem 1: E over straggling draws of
///   min_{p in {k..e*mu*k}} [ lc_lower(Lambda, p) + ldu_lower(p) ].
/// The inner minimization is exact over the integer range (ascending event
/// scan; provably equivalent to the full scan via Lemma-4 monotonicity).
BoundEstimate tau_u_lower(const SystemParams& params, std::int64_t trials, std::uint64_t seed,
                          unsigned threads = 0);

/// Theorem 2: E[lc_lower(Lambda, k)] + u*k*log2(q)/(nu*e).
BoundEstimate tau_e_lower(const SystemParams& params, std::int64_t trials, std::uint64_t seed,
                          unsigned threads = 0);

/// Exact inner minimization of Theorem 1 for one straggling draw; the
/// optional outputs receive the computation/communication parts at the
/// inner argmin. Exposed for the full-scan equivalence test.
double tau_u_inner_min(std::span<const double> lambdas, const SystemParams& params,
                       double* comp_out = nullptr, double* comm_out = nullptr);

/// Stream tag for straggling draws; shared by schemes and bounds so that
/// dominance checks run on common random numbers.
inline constexpr std::uint64_t kLambdaStreamTag = 0x4c414d;

}  // namespace edgecode
