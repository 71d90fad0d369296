#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgecode/rational.hpp"

namespace edgecode {

enum class Scheme { RatelessIr = 0, MdsIr = 1, MdsR = 2 };
enum class DecoderSide { User = 0, Edge = 1 };

const char* scheme_name(Scheme s);
const char* decoder_name(DecoderSide d);

/// Physical and system constants shared by every module.
///
/// mu is kept as an exact rational: the storage constraint
/// k/(Ro*Ri*e) <= mu*k decides design feasibility and must not be subject
/// to floating-point representation of values like 0.6.
struct SystemParams {
    int e = 5;                   // edge node count
    int u = 10;                  // user count, e <= u
    std::int64_t k = 10'000;     // rows of W
    std::int64_t r = 10'000;     // columns of W
    Rational mu{3, 5};           // per-EN storage fraction, coded rows <= mu*k
    double beta = 0.03;          // straggling mean, seconds
    double nu = 1e8;             // transmission rate, bit/s
    double f_cpu = 2.7e9;        // clock frequency, Hz
    int n_e = 50;                // EN cores
    int n_u = 2;                 // user cores
    int q = 2;                   // field order

    /// Storage cap per EN in coded rows (mu*k), exact.
    Rational storage_cap() const { return mu * Rational(k); }
    /// e*mu*k as an exact rational (upper end of the feasible totals range).
    Rational e_mu_k() const { return Rational(e) * mu * Rational(k); }

    std::vector<std::string> validate() const;
    bool is_valid() const { return validate().empty(); }
};

/// Time for one EN to compute a single product c_i^T X:
/// u*(r-1) additions and u*r multiplications at 1/(n_e*f_cpu) each.
double delta(const SystemParams& p);

/// Local computation latency: time for one user to compute Wx alone,
/// k*(2r-1) operations on n_u cores. Normalization unit for reported totals.
double psi(const SystemParams& p);

/// A scheme identifier plus its design triplet. p is the total-product
/// threshold (Rateless-IR / MDS-IR); xi the EN-wait count (MDS-R).
struct SchemeDesign {
    Scheme scheme = Scheme::RatelessIr;
    Rational Ro{1};              // outer (straggler-code) rate, k/n1
    Rational Ri{1};              // replication rate, n1/n
    std::int64_t p = 0;          // RatelessIR/MdsIR stopping threshold
    int xi = 0;                  // MdsR EN-wait count
    std::int64_t phi_prime = 0;  // RatelessIR fixed overhead
    std::int64_t gamma = 0;      // robust-Soliton spike location
    double zeta = 0.0;           // robust-Soliton failure parameter
    double Pf = 0.0;             // RatelessIR target failure probability

    /// Distinct coded rows k/Ro. Throws if not an integer.
    std::int64_t n1(std::int64_t k) const;
    /// Total replicated coded rows k/(Ro*Ri). Throws if not an integer.
    std::int64_t n_total(std::int64_t k) const;
    /// Distinct products required by the stopping rule: k+phi' for an LT
    /// outer code, k otherwise (pure repetition sets phi' to zero).
    std::int64_t distinct_target(std::int64_t k) const;

    std::vector<std::string> validate(const SystemParams& params) const;
    std::string str() const;
};

/// Per-phase latencies in seconds; total = comp + dec + comm,
/// normalized = total / psi.
struct LatencyBreakdown {
    double comp = 0;
    double dec = 0;
    double comm = 0;
    double total = 0;
    double normalized = 0;
};

LatencyBreakdown make_breakdown(double comp, double dec, double comm, double psi_seconds);

}  // namespace edgecode
