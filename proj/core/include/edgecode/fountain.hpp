#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "edgecode/rng.hpp"

namespace edgecode {

/// Probability vector over encoding-row degrees 1..k (omega[d-1] = P(d)).
struct DegreeDistribution {
    std::vector<double> omega;

    std::int64_t k() const { return static_cast<std::int64_t>(omega.size()); }
    double mean_degree() const;
};

/// Robust Soliton distribution parameterized by the spike location gamma
/// (= k/R in Luby's notation) and the failure parameter zeta:
///   rho(1) = 1/k, rho(d) = 1/(d(d-1)) for d >= 2,
///   tau(d) = 1/(d*gamma) for d < gamma, tau(gamma) = ln(k/(gamma*zeta))/gamma,
/// normalized over 1..k. The spike term is clamped at zero so the mass
/// vector stays nonnegative for extreme (gamma, zeta).
DegreeDistribution robust_soliton(std::int64_t k, std::int64_t gamma, double zeta);

/// One binary LT encoding row: the set of information symbols it XORs.
/// Indices are 0-based, distinct, sorted.
struct EncodingRow {
    std::vector<std::int32_t> neighbors;
};

/// Draws encoding rows: degree from the distribution, neighbor set uniform
/// without replacement. Builds the degree CDF once.
class RowSampler {
  public:
    explicit RowSampler(const DegreeDistribution& dist);
    EncodingRow operator()(Rng& rng) const;

  private:
    std::int64_t k_;
    std::vector<double> cdf_;
};

/// Single-shot convenience wrapper around RowSampler.
EncodingRow sample_row(const DegreeDistribution& dist, Rng& rng);

/// Cost of one inactivation decode over GF(2).
/// matrix_ops_add counts coefficient-level additions on the generator
/// structure (done once per decode, independent of how many right-hand-side
/// vectors are processed); per_vector_ops_add counts the symbol additions
/// replayed for each decoded vector. Multiplications are identically zero
/// over GF(2).
struct DecodeCost {
    std::uint64_t matrix_ops_add = 0;
    std::uint64_t per_vector_ops_add = 0;
    bool success = false;
};

/// Maximum-likelihood decoding of the binary system spanned by `rows`:
/// peeling while degree-1 rows exist, inactivating the unresolved symbol of
/// highest degree (ties to the lowest index) whenever the ripple empties,
/// dense elimination of the inactivated block, then back-substitution.
/// success == true iff the rows span rank k. Failure is a result, not an
/// error.
DecodeCost inactivation_decode(std::span<const EncodingRow> rows, std::int64_t k);

/// Value-level operation replayed per decoded vector.
struct ValueOp {
    enum class Kind : std::uint8_t {
        RowXorRow,   // y[dst] ^= y[src]         (1 addition per vector)
        SymFromRow,  // w[dst]  = y[src]          (copy, free)
        SymXorSym,   // w[dst] ^= w[src]          (1 addition per vector)
    };
    Kind kind;
    std::int32_t dst;
    std::int32_t src;
};

/// Decode plus the recorded per-vector schedule, for oracle replay tests.
struct TracedDecode {
    DecodeCost cost;
    std::vector<ValueOp> ops;
    std::int64_t inactivated = 0;
};

TracedDecode inactivation_decode_traced(std::span<const EncodingRow> rows, std::int64_t k);

/// Upper bound on the ML decoding failure probability of a q-ary LT code
/// after receiving k+phi symbols:
///   min(1, sum_{i=1}^{k} C(k,i) (q-1)^(i-1) * bracket(i)^(k+phi)),
///   bracket(i) = 1/q + (q-1)/q * sum_d Omega_d h_d(i;k)/h_d(0;k).
/// Krawtchouk ratios are computed by a stable three-term recurrence and the
/// terms are assembled in the log domain, so the bound is usable at k ~ 1e4.
double failure_bound(std::int64_t k, std::int64_t phi, int q, const DegreeDistribution& dist);

/// Krawtchouk polynomial h_zeta(xi; sigma) over GF(q) by the defining
/// alternating sum in exact integer arithmetic (sigma <= 64). Test oracle
/// for the recurrence used in failure_bound.
__int128 krawtchouk_exact(int zeta, int xi, int sigma, int q);

/// Ratios h_d(xi;k)/h_d(0;k) for d = 0..k via the three-term recurrence.
std::vector<double> krawtchouk_ratios(std::int64_t k, std::int64_t xi, int q);

}  // namespace edgecode
