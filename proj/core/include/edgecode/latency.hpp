#pragma once

#include <cstdint>
#include <span>

#include "edgecode/mds.hpp"
#include "edgecode/model.hpp"

namespace edgecode {

/// Downlink latency when users decode: each product i is zero-forced to
/// M_i users in parallel, products sent in sequence:
/// (u*log2(q)/nu) * sum over retained rows of 1/M_i. Rejects any M_i = 0.
double comm_user(std::span<const std::int32_t> retained_diversities, int u, int q, double nu);

/// Same latency from a precomputed sum of 1/M_i.
double comm_user_from_sum(double sum_inverse_diversity, int u, int q, double nu);

/// Downlink latency when ENs decode and M of them transmit:
/// u*k*log2(q)/(nu*M). Rejects M = 0.
double comm_edge(std::int64_t k, int u, int q, double nu, int M);

/// (N_a + N_m) / (cores * f_cpu).
double decode_latency(double n_adds, double n_mults, int cores, double f_cpu);

/// MDS-R closed forms (waiting for the xi-th EN to finish).
/// E[L_c] = beta*(h(e) - h(e-xi)) + k/(e*Ro*Ri) * delta.
double mdsr_expected_Lc(int xi, int e, double beta, std::int64_t k, const Rational& Ro,
                        const Rational& Ri, double delta);

/// Number of coded rows with spatial diversity m among the xi finished ENs:
/// C(xi,m)*C(e-xi, 1/Ri - m) * n1 / C(e, 1/Ri) inside the support window.
std::int64_t mdsr_g(int m, int xi, int e, const Rational& Ri, std::int64_t n1);

/// Fraction of distinct coded rows held only by the e-xi stragglers:
/// C(e-xi, 1/Ri) / C(e, 1/Ri).
double mdsr_F(int xi, int e, const Rational& Ri);

/// Harmonic number h(i) = sum_{j<=i} 1/j.
double harmonic(int i);

/// Full MDS-R latency breakdown from the Appendix-A closed forms.
/// Pure replication (Ro = 1) has zero decoding latency.
LatencyBreakdown mdsr_totals(const SchemeDesign& design, const SystemParams& params,
                             DecoderSide side);

}  // namespace edgecode
