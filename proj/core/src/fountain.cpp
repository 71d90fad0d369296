#include "edgecode/fountain.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <unordered_set>

namespace edgecode {

double DegreeDistribution::mean_degree() const {
    double m = 0;
    for (std::size_t d = 0; d < omega.size(); ++d) m += omega[d] * static_cast<double>(d + 1);
    return m;
}

DegreeDistribution robust_soliton(std::int64_t k, std::int64_t gamma, double zeta) {
    if (k < 1) throw std::invalid_argument("robust_soliton: k must be >= 1");
    if (gamma < 1 || gamma > k)
        throw std::invalid_argument("robust_soliton: gamma must be in [1, k]");
    if (!(zeta > 0.0) || !(zeta < 1.0))
        throw std::invalid_argument("robust_soliton: zeta must be in (0, 1)");

    std::vector<double> mass(static_cast<std::size_t>(k), 0.0);
    mass[0] = 1.0 / static_cast<double>(k);
    for (std::int64_t d = 2; d <= k; ++d)
        mass[static_cast<std::size_t>(d - 1)] =
            1.0 / (static_cast<double>(d) * static_cast<double>(d - 1));

    const double g = static_cast<double>(gamma);
    for (std::int64_t d = 1; d < gamma; ++d)
        mass[static_cast<std::size_t>(d - 1)] += 1.0 / (static_cast<double>(d) * g);
    const double spike = std::log(static_cast<double>(k) / (g * zeta)) / g;
    mass[static_cast<std::size_t>(gamma - 1)] += std::max(0.0, spike);

    double total = 0;
    for (double m : mass) total += m;
    for (double& m : mass) m /= total;
    return DegreeDistribution{std::move(mass)};
}

RowSampler::RowSampler(const DegreeDistribution& dist) : k_(dist.k()) {
    if (k_ < 1) throw std::invalid_argument("RowSampler: empty distribution");
    cdf_.resize(dist.omega.size());
    double acc = 0;
    for (std::size_t i = 0; i < dist.omega.size(); ++i) {
        if (dist.omega[i] < 0) throw std::invalid_argument("RowSampler: negative mass");
        acc += dist.omega[i];
        cdf_[i] = acc;
    }
    cdf_.back() = 1.0;  // guard against rounding in the tail
}

EncodingRow RowSampler::operator()(Rng& rng) const {
    const double x = rng.uniform01();
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), x);
    const auto d = static_cast<std::int64_t>(it - cdf_.begin()) + 1;

    EncodingRow row;
    if (d >= k_) {
        row.neighbors.resize(static_cast<std::size_t>(k_));
        for (std::int64_t i = 0; i < k_; ++i) row.neighbors[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(i);
        return row;
    }
    // Floyd's sampling: d distinct indices out of [0, k).
    std::unordered_set<std::int32_t> chosen;
    chosen.reserve(static_cast<std::size_t>(d) * 2);
    for (std::int64_t j = k_ - d; j < k_; ++j) {
        const auto t = static_cast<std::int32_t>(rng.uniform_below(static_cast<std::uint64_t>(j + 1)));
        if (!chosen.insert(t).second) chosen.insert(static_cast<std::int32_t>(j));
    }
    row.neighbors.assign(chosen.begin(), chosen.end());
    std::sort(row.neighbors.begin(), row.neighbors.end());
    return row;
}

EncodingRow sample_row(const DegreeDistribution& dist, Rng& rng) {
    return RowSampler(dist)(rng);
}

namespace {

// Sorted symmetric difference a ^= b; returns |b| (the coefficient
// additions performed).
std::size_t xor_into(std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b,
                     std::vector<std::int32_t>& scratch) {
    if (b.empty()) return 0;
    scratch.clear();
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(scratch));
    a.swap(scratch);
    return b.size();
}

struct Decoder {
    std::int64_t k;
    std::int64_t m;
    std::vector<std::vector<std::int32_t>> sym_rows;  // rows containing each symbol
    std::vector<std::int32_t> deg;                    // active degree per row
    std::vector<std::int32_t> xsum;                   // xor of active symbol ids per row
    std::vector<std::vector<std::int32_t>> inact;     // inactive coefficient set per row
    std::vector<std::int32_t> pivot_of;               // symbol -> pivot row (-1)
    std::vector<std::int8_t> sym_state;               // 0 active, 1 resolved, 2 inactive
    std::vector<std::int8_t> row_is_pivot;
    std::vector<std::int32_t> resolved_order;
    std::vector<std::int32_t> inactive_order;
    std::vector<std::int32_t> ripple;  // FIFO of candidate degree-1 rows
    std::size_t ripple_head = 0;
    std::vector<std::int32_t> scratch;

    std::uint64_t matrix_ops = 0;
    std::uint64_t pervec_ops = 0;
    std::vector<ValueOp>* trace = nullptr;

    Decoder(std::span<const EncodingRow> rows, std::int64_t k_in) : k(k_in), m(static_cast<std::int64_t>(rows.size())) {
        sym_rows.resize(static_cast<std::size_t>(k));
        deg.resize(static_cast<std::size_t>(m));
        xsum.assign(static_cast<std::size_t>(m), 0);
        inact.resize(static_cast<std::size_t>(m));
        pivot_of.assign(static_cast<std::size_t>(k), -1);
        sym_state.assign(static_cast<std::size_t>(k), 0);
        row_is_pivot.assign(static_cast<std::size_t>(m), 0);
        for (std::int64_t r = 0; r < m; ++r) {
            const auto& nb = rows[static_cast<std::size_t>(r)].neighbors;
            deg[static_cast<std::size_t>(r)] = static_cast<std::int32_t>(nb.size());
            for (const std::int32_t s : nb) {
                if (s < 0 || s >= k) throw std::invalid_argument("inactivation_decode: neighbor out of range");
                xsum[static_cast<std::size_t>(r)] ^= s;
                sym_rows[static_cast<std::size_t>(s)].push_back(static_cast<std::int32_t>(r));
            }
        }
        for (std::int64_t r = 0; r < m; ++r)
            if (deg[static_cast<std::size_t>(r)] == 1) ripple.push_back(static_cast<std::int32_t>(r));
    }

    void record(ValueOp::Kind kind, std::int32_t dst, std::int32_t src) {
        if (trace) trace->push_back({kind, dst, src});
    }

    void resolve(std::int32_t s, std::int32_t pivot) {
        sym_state[static_cast<std::size_t>(s)] = 1;
        pivot_of[static_cast<std::size_t>(s)] = pivot;
        row_is_pivot[static_cast<std::size_t>(pivot)] = 1;
        resolved_order.push_back(s);
        deg[static_cast<std::size_t>(pivot)] = 0;
        xsum[static_cast<std::size_t>(pivot)] = 0;
        for (const std::int32_t r : sym_rows[static_cast<std::size_t>(s)]) {
            if (r == pivot) continue;
            deg[static_cast<std::size_t>(r)] -= 1;
            xsum[static_cast<std::size_t>(r)] ^= s;
            pervec_ops += 1;
            record(ValueOp::Kind::RowXorRow, r, pivot);
            matrix_ops += xor_into(inact[static_cast<std::size_t>(r)], inact[static_cast<std::size_t>(pivot)], scratch);
            if (deg[static_cast<std::size_t>(r)] == 1) ripple.push_back(r);
        }
    }

    void inactivate(std::int32_t s) {
        sym_state[static_cast<std::size_t>(s)] = 2;
        inactive_order.push_back(s);
        for (const std::int32_t r : sym_rows[static_cast<std::size_t>(s)]) {
            deg[static_cast<std::size_t>(r)] -= 1;
            xsum[static_cast<std::size_t>(r)] ^= s;
            auto& set = inact[static_cast<std::size_t>(r)];
            set.insert(std::lower_bound(set.begin(), set.end(), s), s);
            if (deg[static_cast<std::size_t>(r)] == 1) ripple.push_back(r);
        }
    }

    // Unresolved symbol with the most containing rows, ties to lowest index.
    std::int32_t pick_inactivation() const {
        std::int32_t best = -1;
        std::size_t best_w = 0;
        for (std::int64_t s = 0; s < k; ++s) {
            if (sym_state[static_cast<std::size_t>(s)] != 0) continue;
            const std::size_t w = sym_rows[static_cast<std::size_t>(s)].size();
            if (best < 0 || w > best_w) {
                best = static_cast<std::int32_t>(s);
                best_w = w;
            }
        }
        return best;
    }

    void triangulate() {
        std::int64_t remaining = k;
        while (remaining > 0) {
            bool progressed = false;
            while (ripple_head < ripple.size()) {
                const std::int32_t r = ripple[ripple_head++];
                if (deg[static_cast<std::size_t>(r)] != 1) continue;  // stale entry
                resolve(xsum[static_cast<std::size_t>(r)], r);
                remaining -= 1;
                progressed = true;
                if (remaining == 0) break;
            }
            if (remaining == 0) break;
            if (!progressed || ripple_head >= ripple.size()) {
                const std::int32_t s = pick_inactivation();
                inactivate(s);
                remaining -= 1;
            }
        }
    }

    // Dense Gauss-Jordan over the inactivated block. Returns success.
    bool solve_dense(std::vector<std::int32_t>& col_pivot_row) {
        const std::size_t ni = inactive_order.size();
        col_pivot_row.assign(ni, -1);
        if (ni == 0) return true;

        std::vector<std::int32_t> col_of(static_cast<std::size_t>(k), -1);
        for (std::size_t c = 0; c < ni; ++c)
            col_of[static_cast<std::size_t>(inactive_order[c])] = static_cast<std::int32_t>(c);

        const std::size_t words = (ni + 63) / 64;
        std::vector<std::int32_t> spare;
        for (std::int64_t r = 0; r < m; ++r)
            if (!row_is_pivot[static_cast<std::size_t>(r)]) spare.push_back(static_cast<std::int32_t>(r));

        std::vector<std::uint64_t> bits(spare.size() * words, 0);
        for (std::size_t i = 0; i < spare.size(); ++i)
            for (const std::int32_t s : inact[static_cast<std::size_t>(spare[i])]) {
                const std::int32_t c = col_of[static_cast<std::size_t>(s)];
                bits[i * words + static_cast<std::size_t>(c) / 64] |= 1ULL << (static_cast<std::size_t>(c) % 64);
            }

        std::vector<std::int8_t> used(spare.size(), 0);
        for (std::size_t c = 0; c < ni; ++c) {
            const std::size_t w = c / 64;
            const std::uint64_t mask = 1ULL << (c % 64);
            std::size_t piv = spare.size();
            for (std::size_t i = 0; i < spare.size(); ++i)
                if (!used[i] && (bits[i * words + w] & mask)) {
                    piv = i;
                    break;
                }
            if (piv == spare.size()) return false;  // rank deficient
            used[piv] = 1;
            col_pivot_row[c] = spare[piv];
            for (std::size_t i = 0; i < spare.size(); ++i) {
                if (i == piv || !(bits[i * words + w] & mask)) continue;
                for (std::size_t j = 0; j < words; ++j) bits[i * words + j] ^= bits[piv * words + j];
                matrix_ops += ni;
                pervec_ops += 1;
                record(ValueOp::Kind::RowXorRow, spare[i], spare[piv]);
            }
        }
        return true;
    }

    void back_substitute(const std::vector<std::int32_t>& col_pivot_row) {
        for (std::size_t c = 0; c < inactive_order.size(); ++c)
            record(ValueOp::Kind::SymFromRow, inactive_order[c], col_pivot_row[c]);
        for (auto it = resolved_order.rbegin(); it != resolved_order.rend(); ++it) {
            const std::int32_t s = *it;
            const std::int32_t piv = pivot_of[static_cast<std::size_t>(s)];
            record(ValueOp::Kind::SymFromRow, s, piv);
            for (const std::int32_t t : inact[static_cast<std::size_t>(piv)]) {
                pervec_ops += 1;
                record(ValueOp::Kind::SymXorSym, s, t);
            }
        }
    }

    DecodeCost run() {
        triangulate();
        std::vector<std::int32_t> col_pivot_row;
        const bool ok = solve_dense(col_pivot_row);
        if (ok) back_substitute(col_pivot_row);
        return DecodeCost{matrix_ops, pervec_ops, ok};
    }
};

}  // namespace

DecodeCost inactivation_decode(std::span<const EncodingRow> rows, std::int64_t k) {
    if (rows.empty()) throw std::invalid_argument("inactivation_decode: no rows");
    if (k < 1) throw std::invalid_argument("inactivation_decode: k must be >= 1");
    Decoder dec(rows, k);
    return dec.run();
}

TracedDecode inactivation_decode_traced(std::span<const EncodingRow> rows, std::int64_t k) {
    if (rows.empty()) throw std::invalid_argument("inactivation_decode: no rows");
    if (k < 1) throw std::invalid_argument("inactivation_decode: k must be >= 1");
    TracedDecode out;
    Decoder dec(rows, k);
    dec.trace = &out.ops;
    out.cost = dec.run();
    out.inactivated = static_cast<std::int64_t>(dec.inactive_order.size());
    if (!out.cost.success) out.ops.clear();
    return out;
}

__int128 krawtchouk_exact(int zeta, int xi, int sigma, int q) {
    if (zeta < 0 || xi < 0 || sigma < 0 || sigma > 64 || zeta > sigma)
        throw std::invalid_argument("krawtchouk_exact: arguments out of the exact range");
    auto binom = [](int n, int r) -> __int128 {
        if (r < 0 || r > n) return 0;
        __int128 v = 1;
        for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
        return v;
    };
    __int128 sum = 0;
    for (int j = 0; j <= zeta; ++j) {
        __int128 pw = 1;
        for (int t = 0; t < zeta - j; ++t) pw *= (q - 1);
        const __int128 term = pw * binom(xi, j) * binom(sigma - xi, zeta - j);
        sum += (j % 2 == 0) ? term : -term;
    }
    return sum;
}

std::vector<double> krawtchouk_ratios(std::int64_t k, std::int64_t xi, int q) {
    // r_{d+1} = ([d + (q-1)(k-d) - q*xi] r_d - d r_{d-1}) / ((q-1)(k-d)),
    // with r_0 = 1, r_1 = ((q-1)(k-xi) - xi) / ((q-1)k). The ratios stay in
    // [-1, 1], which keeps the recurrence stable where the alternating sum
    // cancels catastrophically.
    std::vector<double> r(static_cast<std::size_t>(k) + 1);
    r[0] = 1.0;
    if (k == 0) return r;
    const double qm1 = q - 1.0;
    const double kk = static_cast<double>(k);
    const double x = static_cast<double>(xi);
    r[1] = (qm1 * (kk - x) - x) / (qm1 * kk);
    for (std::int64_t d = 1; d < k; ++d) {
        const double dd = static_cast<double>(d);
        const double num = (dd + qm1 * (kk - dd) - static_cast<double>(q) * x) * r[static_cast<std::size_t>(d)] -
                           dd * r[static_cast<std::size_t>(d - 1)];
        r[static_cast<std::size_t>(d + 1)] = num / (qm1 * (kk - dd));
    }
    return r;
}

double failure_bound(std::int64_t k, std::int64_t phi, int q, const DegreeDistribution& dist) {
    if (q < 2) throw std::invalid_argument("failure_bound: q must be >= 2");
    if (phi < 0) throw std::invalid_argument("failure_bound: phi must be >= 0");
    if (dist.k() != k) throw std::invalid_argument("failure_bound: distribution size mismatch");

    std::vector<double> logfact(static_cast<std::size_t>(k) + 1, 0.0);
    for (std::int64_t i = 1; i <= k; ++i)
        logfact[static_cast<std::size_t>(i)] = std::lgamma(static_cast<double>(i) + 1.0);

    const double qm1 = q - 1.0;
    const double received = static_cast<double>(k + phi);
    double sum = 0.0, comp = 0.0;  // Neumaier over signed terms
    auto add = [&](double v) {
        const double t = sum + v;
        comp += (std::abs(sum) >= std::abs(v)) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    };

    for (std::int64_t i = 1; i <= k; ++i) {
        // bracket(i) in the linear domain with compensated accumulation.
        const std::vector<double> ratios = krawtchouk_ratios(k, i, q);
        double s = 0.0, c = 0.0;
        for (std::int64_t d = 1; d <= k; ++d) {
            const double w = dist.omega[static_cast<std::size_t>(d - 1)];
            if (w == 0.0) continue;
            const double v = w * ratios[static_cast<std::size_t>(d)];
            const double t = s + v;
            c += (std::abs(s) >= std::abs(v)) ? (s - t) + v : (v - t) + s;
            s = t;
        }
        double bracket = 1.0 / q + (qm1 / q) * (s + c);
        bracket = std::clamp(bracket, -1.0, 1.0);
        if (bracket == 0.0) continue;

        const double log_binom = logfact[static_cast<std::size_t>(k)] -
                                 logfact[static_cast<std::size_t>(i)] -
                                 logfact[static_cast<std::size_t>(k - i)];
        const double log_mag = log_binom + static_cast<double>(i - 1) * std::log(qm1) +
                               received * std::log(std::abs(bracket));
        const double sign = (bracket < 0.0 && ((k + phi) & 1)) ? -1.0 : 1.0;
        add(sign * std::exp(log_mag));
    }
    const double total = sum + comp;
    return std::clamp(total, 0.0, 1.0);
}

}  // namespace edgecode
