#include "edgecode/runtime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace edgecode {

StragglerDraw draw_stragglers(double beta, int e, Rng& rng) {
    if (beta <= 0) throw std::invalid_argument("draw_stragglers: beta must be > 0");
    StragglerDraw d;
    d.lambdas.resize(static_cast<std::size_t>(e));
    for (auto& l : d.lambdas) l = rng.exponential(beta);
    return d;
}

std::vector<std::int64_t> products_done(std::span<const double> lambdas, double t, double delta,
                                        std::int64_t rows_per_en) {
    if (t < 0 || delta <= 0) throw std::invalid_argument("products_done: need t >= 0, delta > 0");
    std::vector<std::int64_t> d(lambdas.size());
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        const double busy = t - lambdas[j];
        if (busy <= 0) {
            d[j] = 0;
            continue;
        }
        d[j] = std::min<std::int64_t>(static_cast<std::int64_t>(std::floor(busy / delta)), rows_per_en);
    }
    return d;
}

namespace {

std::int64_t derive_k(const SchemeDesign& design, std::int64_t n1) {
    const Rational k = design.Ro * Rational(n1);
    if (!k.is_integer()) throw std::invalid_argument("run_computation: Ro * n1 is not an integer");
    return k.num;
}

}  // namespace

ComputationOutcome run_computation(const AssignmentMatrix& assignment, const StragglerDraw& draw,
                                   const SchemeDesign& design, double delta) {
    const int e = assignment.cols;
    const std::int64_t n1 = assignment.n1;
    const std::int64_t rows_per_en = assignment.rows;
    if (static_cast<int>(draw.lambdas.size()) != e)
        throw std::invalid_argument("run_computation: draw size != EN count");
    if (delta <= 0) throw std::invalid_argument("run_computation: delta must be > 0");

    const std::int64_t k = derive_k(design, n1);
    const bool mdsr = design.scheme == Scheme::MdsR;
    const std::int64_t v_target = mdsr ? 0 : design.distinct_target(k);
    const std::int64_t p_target = mdsr ? 0 : design.p;

    // Reachability of the stopping set at t = infinity.
    if (mdsr) {
        if (design.xi < 1 || design.xi > e)
            throw std::runtime_error("unreachable stopping set: xi outside [1, e]");
    } else {
        std::vector<std::int8_t> seen(static_cast<std::size_t>(n1), 0);
        std::int64_t reachable = 0;
        for (const std::int32_t idx : assignment.entries)
            if (!seen[static_cast<std::size_t>(idx - 1)]) {
                seen[static_cast<std::size_t>(idx - 1)] = 1;
                ++reachable;
            }
        if (v_target > reachable || p_target > static_cast<std::int64_t>(assignment.entries.size()))
            throw std::runtime_error("unreachable stopping set: targets exceed the assignment");
    }

    std::vector<std::int32_t> div(static_cast<std::size_t>(n1), 0);
    std::vector<std::int64_t> done(static_cast<std::size_t>(e), 0);
    std::int64_t P = 0, distinct = 0;
    int finished = 0;
    double Lc = std::numeric_limits<double>::quiet_NaN();

    auto next_time = [&](int j) {
        return done[static_cast<std::size_t>(j)] >= rows_per_en
                   ? std::numeric_limits<double>::infinity()
                   : draw.lambdas[static_cast<std::size_t>(j)] +
                         static_cast<double>(done[static_cast<std::size_t>(j)] + 1) * delta;
    };

    auto predicate = [&] {
        return mdsr ? finished >= design.xi : (distinct >= v_target && P >= p_target);
    };

    for (;;) {
        double t0 = std::numeric_limits<double>::infinity();
        for (int j = 0; j < e; ++j) t0 = std::min(t0, next_time(j));
        if (!std::isfinite(t0)) throw std::runtime_error("unreachable stopping set");
        // Complete every product landing exactly at t0 before testing.
        for (int j = 0; j < e; ++j) {
            if (next_time(j) != t0) continue;
            const std::int64_t q = done[static_cast<std::size_t>(j)]++;
            const std::int32_t row = assignment.at(q, j);
            if (div[static_cast<std::size_t>(row - 1)]++ == 0) ++distinct;
            ++P;
            if (done[static_cast<std::size_t>(j)] == rows_per_en) ++finished;
        }
        if (predicate()) {
            Lc = t0;
            break;
        }
    }

    ComputationOutcome out;
    out.Lc = Lc;
    out.P = P;
    out.distinct = distinct;
    out.diversities = div;
    for (int j = 0; j < e; ++j)
        if (draw.lambdas[static_cast<std::size_t>(j)] < Lc) ++out.M;

    if (mdsr) {
        // Only products held by the finished ENs are collected.
        std::vector<std::int32_t> divf(static_cast<std::size_t>(n1), 0);
        for (int j = 0; j < e; ++j) {
            if (done[static_cast<std::size_t>(j)] < rows_per_en) continue;
            for (std::int64_t q = 0; q < rows_per_en; ++q)
                ++divf[static_cast<std::size_t>(assignment.at(q, j) - 1)];
        }
        for (std::int64_t i = 0; i < n1; ++i)
            if (divf[static_cast<std::size_t>(i)] > 0) {
                out.retained.push_back(static_cast<std::int32_t>(i + 1));
                out.retained_diversity.push_back(divf[static_cast<std::size_t>(i)]);
            }
    } else if (design.scheme == Scheme::MdsIr) {
        for (std::int64_t i = 0; i < n1; ++i)
            if (div[static_cast<std::size_t>(i)] > 0) {
                out.retained.push_back(static_cast<std::int32_t>(i + 1));
                out.retained_diversity.push_back(div[static_cast<std::size_t>(i)]);
            }
    } else {
        // Discard rule: keep the v_target distinct rows of highest spatial
        // diversity, ties broken toward the lowest index.
        std::vector<std::vector<std::int32_t>> bucket(static_cast<std::size_t>(e) + 1);
        for (std::int64_t i = 0; i < n1; ++i)
            if (div[static_cast<std::size_t>(i)] > 0)
                bucket[static_cast<std::size_t>(div[static_cast<std::size_t>(i)])].push_back(
                    static_cast<std::int32_t>(i + 1));
        std::int64_t need = v_target;
        for (int m = e; m >= 1 && need > 0; --m)
            for (const std::int32_t idx : bucket[static_cast<std::size_t>(m)]) {
                if (need-- == 0) break;
                out.retained.push_back(idx);
                out.retained_diversity.push_back(m);
            }
    }
    return out;
}

CyclicGeometry CyclicGeometry::make(std::int64_t k, int e, const Rational& Ro, const Rational& Ri) {
    const Rational m1r = Rational(k) / (Ro * Rational(e));
    const Rational rper = Rational(k) / (Ro * Ri * Rational(e));
    if (!m1r.is_integer() || !rper.is_integer() || m1r.num < 1 || rper.num < 1)
        throw std::invalid_argument("CyclicGeometry: non-integral shape");
    CyclicGeometry g;
    g.e = e;
    g.m1 = m1r.num;
    g.n1 = m1r.num * e;
    g.rows_per_en = rper.num;
    g.full_blocks = g.rows_per_en / g.m1;
    g.partial_rows = g.rows_per_en % g.m1;
    return g;
}

namespace {

constexpr int kMaxEns = 16;

struct DenseState {
    std::int64_t d[kMaxEns];
};

inline void progress_at(const CyclicGeometry& g, std::span<const double> lambdas, double delta,
                        double t, DenseState& s) {
    for (int j = 0; j < g.e; ++j) {
        const double busy = t - lambdas[static_cast<std::size_t>(j)];
        s.d[j] = busy <= 0 ? 0
                           : std::min<std::int64_t>(
                                 static_cast<std::int64_t>(std::floor(busy / delta)), g.rows_per_en);
    }
}

// Block-coverage thresholds for one column class; returns the number of
// thresholds written (full blocks + optional partial block).
inline int thresholds(const CyclicGeometry& g, const DenseState& s, int col, std::int64_t* t) {
    int nb = 0;
    for (std::int64_t b = 0; b < g.full_blocks; ++b) {
        const int j = static_cast<int>((col - b % g.e + g.e) % g.e);
        t[nb++] = std::clamp<std::int64_t>(s.d[j] - b * g.m1, 0, g.m1);
    }
    if (g.partial_rows > 0) {
        const int j = static_cast<int>((col - g.full_blocks % g.e + g.e) % g.e);
        t[nb++] = std::clamp<std::int64_t>(s.d[j] - g.full_blocks * g.m1, 0, g.partial_rows);
    }
    return nb;
}

inline std::int64_t distinct_of(const CyclicGeometry& g, const DenseState& s) {
    std::int64_t v = 0;
    std::int64_t th[kMaxEns + 1];
    for (int col = 0; col < g.e; ++col) {
        const int nb = thresholds(g, s, col, th);
        std::int64_t best = 0;
        for (int b = 0; b < nb; ++b) best = std::max(best, th[b]);
        v += best;
    }
    return v;
}

inline std::int64_t total_of(const CyclicGeometry& g, const DenseState& s) {
    std::int64_t p = 0;
    for (int j = 0; j < g.e; ++j) p += s.d[j];
    return p;
}

}  // namespace

namespace {

struct SnapResult {
    double t = 0;
    DenseState state{};
};

// Exact first-hit of a monotone predicate on D(t): bisection to bracket,
// then snap to the triggering completion event and walk back while the
// predicate holds without the events landing exactly at that time. All
// downstream statistics are computed from the integer state, never by
// re-flooring the snapped time.
template <typename Pred>
SnapResult first_hit(const CyclicGeometry& g, std::span<const double> lambdas, double delta,
                     Pred ok) {
    SnapResult res;
    double lo = 0, hi = 0;
    for (int j = 0; j < g.e; ++j) hi = std::max(hi, lambdas[static_cast<std::size_t>(j)]);
    hi += static_cast<double>(g.rows_per_en) * delta + delta;

    DenseState s;
    for (int it = 0; it < 100 && hi - lo > 0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        progress_at(g, lambdas, delta, mid, s);
        (ok(s) ? hi : lo) = mid;
    }
    progress_at(g, lambdas, delta, hi, s);

    auto event_time = [&](const DenseState& st) {
        double t = -1;
        for (int j = 0; j < g.e; ++j)
            if (st.d[j] >= 1)
                t = std::max(t, lambdas[static_cast<std::size_t>(j)] +
                                    static_cast<double>(st.d[j]) * delta);
        return t;
    };
    double t_star = event_time(s);
    for (;;) {
        DenseState prev = s;
        bool any = false;
        for (int j = 0; j < g.e; ++j)
            if (prev.d[j] >= 1 &&
                lambdas[static_cast<std::size_t>(j)] + static_cast<double>(prev.d[j]) * delta ==
                    t_star) {
                prev.d[j] -= 1;
                any = true;
            }
        if (!any || !ok(prev)) break;
        s = prev;
        t_star = event_time(s);
    }
    res.t = std::max(t_star, 0.0);
    res.state = s;
    return res;
}

TrialStats stats_from_state(const CyclicGeometry& g, std::span<const double> lambdas,
                            const DenseState& s, double t_star, std::int64_t retain_top) {
    TrialStats st;
    st.Lc = t_star;
    st.P = total_of(g, s);
    st.distinct = distinct_of(g, s);
    for (int j = 0; j < g.e; ++j)
        if (lambdas[static_cast<std::size_t>(j)] < t_star) ++st.M;

    // Diversity histogram from per-column sorted coverage thresholds.
    std::int64_t hist[kMaxEns + 1] = {0};
    std::int64_t th[kMaxEns + 1];
    for (int col = 0; col < g.e; ++col) {
        const int nb = thresholds(g, s, col, th);
        std::sort(th, th + nb, std::greater<>());
        for (int v = 0; v < nb; ++v) {
            const std::int64_t upper = th[v];
            const std::int64_t lower = v + 1 < nb ? th[v + 1] : 0;
            hist[v + 1] += upper - lower;
        }
    }
    if (retain_top <= 0) {
        for (int m = 1; m <= kMaxEns; ++m)
            if (hist[m] > 0) st.sum_inv_retained += static_cast<double>(hist[m]) / m;
    } else {
        std::int64_t need = retain_top;
        for (int m = kMaxEns; m >= 1 && need > 0; --m) {
            const std::int64_t take = std::min(hist[m], need);
            st.sum_inv_retained += static_cast<double>(take) / m;
            need -= take;
        }
    }
    return st;
}

}  // namespace

void cyclic_trial_multi(const CyclicGeometry& g, std::span<const double> lambdas, double delta,
                        std::int64_t distinct_target, std::span<const std::int64_t> ps,
                        std::int64_t retain_top, std::span<TrialStats> out) {
    if (g.e > kMaxEns) throw std::invalid_argument("cyclic_trial: too many ENs");
    if (static_cast<int>(lambdas.size()) != g.e)
        throw std::invalid_argument("cyclic_trial: lambda size mismatch");
    if (out.size() != ps.size()) throw std::invalid_argument("cyclic_trial: output size mismatch");
    for (const std::int64_t p : ps)
        if (distinct_target > g.n1 || p > g.rows_per_en * g.e)
            throw std::runtime_error("unreachable stopping set: targets exceed the assignment");

    SnapResult at_v;
    bool have_v = false;
    if (distinct_target > 0) {
        at_v = first_hit(g, lambdas, delta,
                         [&](const DenseState& s) { return distinct_of(g, s) >= distinct_target; });
        have_v = true;
    }
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::int64_t p = ps[i];
        if (p <= 0 && !have_v) {
            out[i] = TrialStats{};
            continue;
        }
        SnapResult at;
        if (p > 0) {
            at = first_hit(g, lambdas, delta,
                           [&](const DenseState& s) { return total_of(g, s) >= p; });
            if (have_v && at_v.t > at.t) at = at_v;
        } else {
            at = at_v;
        }
        out[i] = stats_from_state(g, lambdas, at.state, at.t, retain_top);
    }
}

TrialStats cyclic_trial(const CyclicGeometry& g, std::span<const double> lambdas, double delta,
                        std::int64_t distinct_target, std::int64_t p, std::int64_t retain_top) {
    TrialStats st;
    const std::int64_t ps[1] = {p};
    cyclic_trial_multi(g, lambdas, delta, distinct_target, std::span<const std::int64_t>(ps, 1),
                       retain_top, std::span<TrialStats>(&st, 1));
    return st;
}

}  // namespace edgecode
