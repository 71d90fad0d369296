#include "edgecode/latency.hpp"

#include <cmath>
#include <stdexcept>

#include "edgecode/placement.hpp"

namespace edgecode {

double comm_user(std::span<const std::int32_t> retained_diversities, int u, int q, double nu) {
    double s = 0;
    for (const std::int32_t m : retained_diversities) {
        if (m <= 0) throw std::invalid_argument("comm_user: retained product with zero diversity");
        s += 1.0 / m;
    }
    return comm_user_from_sum(s, u, q, nu);
}

double comm_user_from_sum(double sum_inverse_diversity, int u, int q, double nu) {
    return u * std::log2(static_cast<double>(q)) / nu * sum_inverse_diversity;
}

double comm_edge(std::int64_t k, int u, int q, double nu, int M) {
    if (M <= 0) throw std::invalid_argument("comm_edge: M must be >= 1");
    return static_cast<double>(u) * static_cast<double>(k) * std::log2(static_cast<double>(q)) /
           (nu * M);
}

double decode_latency(double n_adds, double n_mults, int cores, double f_cpu) {
    if (n_adds < 0 || n_mults < 0) throw std::invalid_argument("decode_latency: negative counts");
    return (n_adds + n_mults) / (cores * f_cpu);
}

double harmonic(int i) {
    double h = 0;
    for (int j = 1; j <= i; ++j) h += 1.0 / j;
    return h;
}

double mdsr_expected_Lc(int xi, int e, double beta, std::int64_t k, const Rational& Ro,
                        const Rational& Ri, double delta) {
    if (xi < 1 || xi > e) throw std::invalid_argument("mdsr_expected_Lc: xi outside [1, e]");
    const Rational rows = Rational(k) / (Ro * Ri * Rational(e));
    return beta * (harmonic(e) - harmonic(e - xi)) + rows.as_double() * delta;
}

std::int64_t mdsr_g(int m, int xi, int e, const Rational& Ri, std::int64_t n1) {
    const Rational inv = Ri.inverse();
    if (!inv.is_integer()) throw std::invalid_argument("mdsr_g: 1/Ri must be an integer");
    const int copies = static_cast<int>(inv.num);
    const std::int64_t lo = std::max<std::int64_t>(0, copies + xi - e);
    const std::int64_t hi = std::min<std::int64_t>(copies, xi);
    if (m < lo || m > hi) return 0;
    const std::int64_t denom = binomial(e, copies);
    const std::int64_t numer = binomial(xi, m) * binomial(e - xi, copies - m) * n1;
    if (numer % denom != 0)
        throw std::invalid_argument("mdsr_g: C(e, 1/Ri) must divide the batch layout");
    return numer / denom;
}

double mdsr_F(int xi, int e, const Rational& Ri) {
    const Rational inv = Ri.inverse();
    if (!inv.is_integer()) throw std::invalid_argument("mdsr_F: 1/Ri must be an integer");
    const int copies = static_cast<int>(inv.num);
    if (copies > e - xi) return 0.0;
    return static_cast<double>(binomial(e - xi, copies)) /
           static_cast<double>(binomial(e, copies));
}

LatencyBreakdown mdsr_totals(const SchemeDesign& design, const SystemParams& params,
                             DecoderSide side) {
    const std::int64_t n1 = design.n1(params.k);
    const double d = delta(params);
    const double comp = mdsr_expected_Lc(design.xi, params.e, params.beta, params.k, design.Ro,
                                         design.Ri, d);

    double dec = 0;
    if (design.Ro != Rational(1)) {
        const double F = mdsr_F(design.xi, params.e, design.Ri);
        const OpCounts ops = bm_ops(params.k, design.Ro, F);
        dec = side == DecoderSide::User
                  ? decode_latency(ops.adds, ops.mults, params.n_u, params.f_cpu)
                  : decode_latency(params.u * ops.adds, params.u * ops.mults, params.n_e,
                                   params.f_cpu);
    }

    double comm;
    if (side == DecoderSide::User) {
        double s = 0;
        for (int m = 1; m <= params.e; ++m) {
            const std::int64_t g = mdsr_g(m, design.xi, params.e, design.Ri, n1);
            if (g > 0) s += static_cast<double>(g) / m;
        }
        comm = comm_user_from_sum(s, params.u, params.q, params.nu);
    } else {
        comm = comm_edge(params.k, params.u, params.q, params.nu, design.xi);
    }
    return make_breakdown(comp, dec, comm, psi(params));
}

}  // namespace edgecode
