#include "edgecode/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "edgecode/parallel.hpp"
#include "edgecode/rng.hpp"
#include "edgecode/runtime.hpp"

namespace edgecode {

double f_bound(double a, double b) {
    if (!(b > 0) || a < b) throw std::invalid_argument("f_bound: need a >= b > 0");
    const double ratio = a / b;
    const double rounded = std::round(ratio);
    if (std::abs(a - rounded * b) <= 1e-9 * b) return b * b / (rounded * b);
    const double fl = std::floor(ratio), ce = std::ceil(ratio);
    return (ce * b - a) / fl + (a - b * fl) / ce;
}

double ldu_lower(std::int64_t p, std::int64_t k, int u, int q, double nu) {
    if (p < k) throw std::invalid_argument("ldu_lower: p must be >= k");
    const double alpha = u * std::log2(static_cast<double>(q)) / nu;
    return alpha * f_bound(static_cast<double>(p), static_cast<double>(k));
}

double lde_lower(std::int64_t k, int u, int q, double nu, int e) {
    if (e < 1) throw std::invalid_argument("lde_lower: e must be >= 1");
    return static_cast<double>(u) * static_cast<double>(k) *
           std::log2(static_cast<double>(q)) / (nu * e);
}

namespace {

constexpr int kMaxEns = 16;

// Capped progress state for Lemma 1. The per-EN cap mu_k may be
// fractional: counts run to floor(mu_k)+1, with the last step contributing
// only the fractional remainder to the product sum.
struct CapState {
    std::int64_t c[kMaxEns];
    int e;
    std::int64_t cap_floor;
    double cap_value;  // mu_k as a real
    std::int64_t cap_index;

    double value() const {
        double s = 0;
        for (int j = 0; j < e; ++j)
            s += c[j] > cap_floor ? cap_value : static_cast<double>(c[j]);
        return s;
    }
};

CapState progress_at(std::span<const double> lambdas, double t, double delta,
                     std::int64_t cap_floor, double cap_value, std::int64_t cap_index) {
    CapState s;
    s.e = static_cast<int>(lambdas.size());
    s.cap_floor = cap_floor;
    s.cap_value = cap_value;
    s.cap_index = cap_index;
    for (int j = 0; j < s.e; ++j) {
        const double busy = t - lambdas[static_cast<std::size_t>(j)];
        s.c[j] = busy <= 0 ? 0
                           : std::min<std::int64_t>(
                                 static_cast<std::int64_t>(std::floor(busy / delta)), cap_index);
    }
    return s;
}

struct LcLowerResult {
    double t = 0;
    CapState state{};
};

LcLowerResult lc_lower_state(std::span<const double> lambdas, std::int64_t p, double delta,
                             const Rational& mu_k) {
    const int e = static_cast<int>(lambdas.size());
    if (e > kMaxEns) throw std::invalid_argument("lc_lower: too many ENs");
    const double cap_value = mu_k.as_double();
    const std::int64_t cap_floor = mu_k.num / mu_k.den;
    const std::int64_t cap_index = cap_floor + (mu_k.is_integer() ? 0 : 1);
    if (static_cast<double>(p) > cap_value * e + 1e-9)
        throw std::invalid_argument("lc_lower: p exceeds e*mu*k, unattainable");

    LcLowerResult res;
    if (p <= 0) {
        res.state = progress_at(lambdas, 0, delta, cap_floor, cap_value, cap_index);
        for (int j = 0; j < e; ++j) res.state.c[j] = 0;
        return res;
    }

    double lo = 0, hi = 0;
    for (int j = 0; j < e; ++j) hi = std::max(hi, lambdas[static_cast<std::size_t>(j)]);
    hi += static_cast<double>(cap_index) * delta + delta;

    auto ok = [&](const CapState& s) { return s.value() >= static_cast<double>(p); };
    CapState s{};
    for (int it = 0; it < 100 && hi - lo > 0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        s = progress_at(lambdas, mid, delta, cap_floor, cap_value, cap_index);
        (ok(s) ? hi : lo) = mid;
    }
    s = progress_at(lambdas, hi, delta, cap_floor, cap_value, cap_index);

    auto event_time = [&](const CapState& st) {
        double t = -1;
        for (int j = 0; j < e; ++j)
            if (st.c[j] >= 1)
                t = std::max(t, lambdas[static_cast<std::size_t>(j)] +
                                    static_cast<double>(st.c[j]) * delta);
        return t;
    };
    double t_star = event_time(s);
    for (;;) {
        CapState prev = s;
        bool any = false;
        for (int j = 0; j < e; ++j)
            if (prev.c[j] >= 1 &&
                lambdas[static_cast<std::size_t>(j)] + static_cast<double>(prev.c[j]) * delta ==
                    t_star) {
                prev.c[j] -= 1;
                any = true;
            }
        if (!any || !ok(prev)) break;
        s = prev;
        t_star = event_time(s);
    }
    res.t = t_star;
    res.state = s;
    return res;
}

}  // namespace

double lc_lower(std::span<const double> lambdas, std::int64_t p, double delta,
                const Rational& mu_k) {
    return lc_lower_state(lambdas, p, delta, mu_k).t;
}

double tau_u_inner_min(std::span<const double> lambdas, const SystemParams& params,
                       double* comp_out, double* comm_out) {
    const double d = delta(params);
    const Rational mu_k = params.storage_cap();
    const Rational emk = params.e_mu_k();
    const std::int64_t p_max = emk.num / emk.den;
    const std::int64_t k = params.k;
    const double alpha = params.u * std::log2(static_cast<double>(params.q)) / params.nu;

    LcLowerResult at_k = lc_lower_state(lambdas, k, d, mu_k);
    CapState s = at_k.state;
    double t = at_k.t;
    std::int64_t p_cur = std::min<std::int64_t>(static_cast<std::int64_t>(s.value() + 1e-9), p_max);
    double best_comp = t;
    double best_comm = alpha * f_bound(static_cast<double>(p_cur), static_cast<double>(k));
    double best = best_comp + best_comm;
    const double comm_floor = alpha * f_bound(static_cast<double>(p_max), static_cast<double>(k));

    // Ascending event scan; within one event time the largest feasible p
    // dominates (Lemma 4), and once the computation part alone exceeds
    // best minus the smallest possible communication addend, no later p
    // can improve the minimum.
    while (p_cur < p_max) {
        double t_next = std::numeric_limits<double>::infinity();
        for (int j = 0; j < s.e; ++j)
            if (s.c[j] < s.cap_index)
                t_next = std::min(t_next, lambdas[static_cast<std::size_t>(j)] +
                                              static_cast<double>(s.c[j] + 1) * d);
        if (!std::isfinite(t_next) || t_next + comm_floor >= best) break;
        for (int j = 0; j < s.e; ++j)
            if (s.c[j] < s.cap_index &&
                lambdas[static_cast<std::size_t>(j)] + static_cast<double>(s.c[j] + 1) * d ==
                    t_next)
                s.c[j] += 1;
        t = t_next;
        const auto reach = std::min<std::int64_t>(static_cast<std::int64_t>(s.value() + 1e-9), p_max);
        if (reach > p_cur) {
            p_cur = reach;
            const double comm = alpha * f_bound(static_cast<double>(p_cur), static_cast<double>(k));
            if (t + comm < best) {
                best = t + comm;
                best_comp = t;
                best_comm = comm;
            }
        }
    }
    if (comp_out) *comp_out = best_comp;
    if (comm_out) *comm_out = best_comm;
    return best;
}

namespace {

struct Moments {
    double sum = 0, sum_sq = 0, comp = 0, comm = 0;
};

BoundEstimate run_mc(const SystemParams& params, std::int64_t trials, std::uint64_t seed,
                     unsigned threads, bool user_side) {
    const double d_comm_edge = lde_lower(params.k, params.u, params.q, params.nu, params.e);
    const Rational mu_k = params.storage_cap();
    const double dlt = delta(params);

    const std::size_t chunk = 2048;
    const std::size_t n_chunks = (static_cast<std::size_t>(trials) + chunk - 1) / chunk;
    std::vector<Moments> acc(n_chunks);

    parallel_chunks(
        static_cast<std::size_t>(trials), chunk,
        [&](std::size_t ci, std::size_t begin, std::size_t end) {
            Moments m;
            std::vector<double> lambdas(static_cast<std::size_t>(params.e));
            for (std::size_t i = begin; i < end; ++i) {
                Rng rng = Rng::substream(seed, kLambdaStreamTag, i);
                for (auto& l : lambdas) l = rng.exponential(params.beta);
                double v;
                if (user_side) {
                    double comp = 0, comm = 0;
                    v = tau_u_inner_min(lambdas, params, &comp, &comm);
                    m.comp += comp;
                    m.comm += comm;
                } else {
                    const double comp = lc_lower(lambdas, params.k, dlt, mu_k);
                    m.comp += comp;
                    v = comp + d_comm_edge;
                }
                m.sum += v;
                m.sum_sq += v * v;
            }
            acc[ci] = m;
        },
        threads);

    Moments total;
    for (const Moments& m : acc) {
        total.sum += m.sum;
        total.sum_sq += m.sum_sq;
        total.comp += m.comp;
        total.comm += m.comm;
    }
    BoundEstimate est;
    const auto n = static_cast<double>(trials);
    est.mean = total.sum / n;
    const double var = std::max(0.0, total.sum_sq / n - est.mean * est.mean);
    est.ci95 = 1.96 * std::sqrt(var / n);
    est.comp_mean = total.comp / n;
    est.comm_mean = user_side ? total.comm / n : d_comm_edge;
    return est;
}

}  // namespace

BoundEstimate tau_u_lower(const SystemParams& params, std::int64_t trials, std::uint64_t seed,
                          unsigned threads) {
    if (trials < 1) throw std::invalid_argument("tau_u_lower: trials must be >= 1");
    return run_mc(params, trials, seed, threads, true);
}

BoundEstimate tau_e_lower(const SystemParams& params, std::int64_t trials, std::uint64_t seed,
                          unsigned threads) {
    if (trials < 1) throw std::invalid_argument("tau_e_lower: trials must be >= 1");
    return run_mc(params, trials, seed, threads, false);
}

}  // namespace edgecode
