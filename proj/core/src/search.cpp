#include "edgecode/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "edgecode/bounds.hpp"
#include "edgecode/latency.hpp"
#include "edgecode/mds.hpp"
#include "edgecode/parallel.hpp"
#include "edgecode/placement.hpp"
#include "edgecode/runtime.hpp"

namespace edgecode {

std::int64_t default_phi_prime(const SystemParams& params) {
    // k + phi' = 2*mu*k.
    const Rational target = Rational(2) * params.mu * Rational(params.k);
    const std::int64_t t = target.num / target.den;
    return std::max<std::int64_t>(0, t - params.k);
}

bool nontrivial_binary_mds(std::int64_t n1, std::int64_t k) {
    return !(n1 == k || k == 1 || n1 == k + 1);
}

LtCostModel estimate_lt_decode_cost(std::int64_t k, std::int64_t phi_prime, std::int64_t gamma,
                                    double zeta, int samples, std::uint64_t seed) {
    const DegreeDistribution dist = robust_soliton(k, gamma, zeta);
    const RowSampler sampler(dist);
    LtCostModel cost;
    int successes = 0;
    for (int s = 0; s < samples; ++s) {
        Rng rng = Rng::substream(seed, 0x4c544f50, static_cast<std::uint64_t>(s));
        std::vector<EncodingRow> rows(static_cast<std::size_t>(k + phi_prime));
        for (auto& row : rows) row = sampler(rng);
        const DecodeCost c = inactivation_decode(rows, k);
        if (!c.success) continue;  // below Pf by design; skip the rare failure
        cost.matrix_mean += static_cast<double>(c.matrix_ops_add);
        cost.pervec_mean += static_cast<double>(c.per_vector_ops_add);
        ++successes;
    }
    if (successes == 0) throw std::runtime_error("estimate_lt_decode_cost: no successful decode");
    cost.matrix_mean /= successes;
    cost.pervec_mean /= successes;
    return cost;
}

namespace {

double lt_decode_seconds(const LtCostModel& c, const SystemParams& params, DecoderSide side) {
    if (side == DecoderSide::User)
        return (c.matrix_mean + c.pervec_mean) / (params.n_u * params.f_cpu);
    return (c.matrix_mean + params.u * c.pervec_mean) / (params.n_e * params.f_cpu);
}

struct CandidateAccum {
    double lc = 0;
    double dec = 0;
    double comm = 0;
    double total = 0;
    double total_sq = 0;
};

// Affine decode-cost model of one MDS-IR candidate: seconds = base + slope*F.
struct MdsDecModel {
    double base = 0;
    double slope = 0;
};

struct IrCandidate {
    SchemeDesign design;
    std::size_t rate_group;  // index into the (Ro, Ri) geometry list
    std::size_t p_slot;
};

struct RateGroup {
    CyclicGeometry geom;
    std::int64_t distinct_target = 0;
    std::int64_t retain_top = 0;
    std::vector<std::int64_t> ps;
    std::vector<std::size_t> cand_index;
};

// Monte Carlo evaluation of a set of IR candidates under common random
// numbers; per-chunk partial sums are reduced in chunk order so results do
// not depend on the thread count.
std::vector<CandidateAccum> run_ir_trials(const SystemParams& params, DecoderSide side,
                                          const std::vector<RateGroup>& groups,
                                          const std::vector<MdsDecModel>& dec_models,
                                          std::int64_t trials, std::uint64_t seed,
                                          unsigned threads, std::size_t n_candidates) {
    const double dlt = delta(params);
    const double alpha = params.u * std::log2(static_cast<double>(params.q)) / params.nu;
    const double edge_num = static_cast<double>(params.u) * static_cast<double>(params.k) *
                            std::log2(static_cast<double>(params.q)) / params.nu;

    const std::size_t chunk = 1024;
    const std::size_t n_chunks = (static_cast<std::size_t>(trials) + chunk - 1) / chunk;
    std::vector<std::vector<CandidateAccum>> partials(n_chunks);

    parallel_chunks(
        static_cast<std::size_t>(trials), chunk,
        [&](std::size_t ci, std::size_t begin, std::size_t end) {
            std::vector<CandidateAccum> acc(n_candidates);
            std::vector<double> lambdas(static_cast<std::size_t>(params.e));
            std::vector<TrialStats> stats;
            for (std::size_t trial = begin; trial < end; ++trial) {
                Rng rng = Rng::substream(seed, kLambdaStreamTag, trial);
                for (auto& l : lambdas) l = rng.exponential(params.beta);
                for (const RateGroup& rg : groups) {
                    stats.resize(rg.ps.size());
                    cyclic_trial_multi(rg.geom, lambdas, dlt, rg.distinct_target, rg.ps,
                                       rg.retain_top, stats);
                    for (std::size_t s = 0; s < rg.ps.size(); ++s) {
                        const std::size_t idx = rg.cand_index[s];
                        const TrialStats& ts = stats[s];
                        const MdsDecModel& dm = dec_models[idx];
                        const double F =
                            1.0 - static_cast<double>(ts.distinct) / static_cast<double>(rg.geom.n1);
                        const double dec = dm.base + dm.slope * F;
                        const double comm = side == DecoderSide::User
                                                ? alpha * ts.sum_inv_retained
                                                : edge_num / ts.M;
                        const double total = ts.Lc + dec + comm;
                        CandidateAccum& a = acc[idx];
                        a.lc += ts.Lc;
                        a.dec += dec;
                        a.comm += comm;
                        a.total += total;
                        a.total_sq += total * total;
                    }
                }
            }
            partials[ci] = std::move(acc);
        },
        threads);

    std::vector<CandidateAccum> out(n_candidates);
    for (const auto& part : partials)
        for (std::size_t i = 0; i < n_candidates; ++i) {
            out[i].lc += part[i].lc;
            out[i].dec += part[i].dec;
            out[i].comm += part[i].comm;
            out[i].total += part[i].total;
            out[i].total_sq += part[i].total_sq;
        }
    return out;
}

MdsDecModel decode_model_for(const SystemParams& params, const SchemeDesign& d, DecoderSide side,
                             const LtCostModel* lt_cost) {
    MdsDecModel m;
    if (d.Ro == Rational(1)) return m;  // pure replication decodes for free
    if (d.scheme == Scheme::MdsIr) {
        const std::int64_t n1 = d.n1(params.k);
        const OpCounts fft = fft_ops(ceil_log2(n1));
        const double cores_f = side == DecoderSide::User
                                   ? params.n_u * params.f_cpu
                                   : params.n_e * params.f_cpu / params.u;
        m.base = (fft.adds + fft.mults - static_cast<double>(n1)) / cores_f;
        m.slope = 2.0 * static_cast<double>(n1) * static_cast<double>(n1) / cores_f;
    } else if (d.scheme == Scheme::RatelessIr) {
        if (!lt_cost)
            throw std::invalid_argument("evaluate_design: Rateless-IR needs an LT cost model");
        m.base = lt_decode_seconds(*lt_cost, params, side);
    }
    return m;
}

DesignEstimate finish_estimate(const SystemParams& params, const SchemeDesign& d,
                               const CandidateAccum& a, std::int64_t trials) {
    const auto n = static_cast<double>(trials);
    DesignEstimate est;
    est.design = d;
    est.latency = make_breakdown(a.lc / n, a.dec / n, a.comm / n, psi(params));
    const double mean = a.total / n;
    const double var = std::max(0.0, a.total_sq / n - mean * mean);
    est.ci95_norm = 1.96 * std::sqrt(var / n) / psi(params);
    est.binary_mds_warn = d.scheme != Scheme::RatelessIr && d.Ro != Rational(1) &&
                          nontrivial_binary_mds(d.n1(params.k), params.k);
    return est;
}

std::vector<std::int64_t> p_grid(std::int64_t p_min, std::int64_t p_max, int points) {
    std::vector<std::int64_t> ps;
    if (p_max < p_min) return ps;
    ps.push_back(p_min);
    static constexpr double kFractions[] = {1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2, 3.0 / 4, 1.0};
    const std::int64_t span = p_max - p_min;
    for (int i = 0; i < points - 1 && i < 6; ++i) {
        const auto p = p_min + static_cast<std::int64_t>(std::llround(kFractions[i] * span));
        if (p != ps.back()) ps.push_back(p);
    }
    return ps;
}

}  // namespace

DesignEstimate evaluate_design(const SystemParams& params, const SchemeDesign& design,
                               DecoderSide side, std::int64_t trials, std::uint64_t seed,
                               unsigned threads, const LtCostModel* lt_cost) {
    if (design.scheme == Scheme::MdsR) {
        DesignEstimate est;
        est.design = design;
        est.latency = mdsr_totals(design, params, side);
        est.binary_mds_warn =
            design.Ro != Rational(1) && nontrivial_binary_mds(design.n1(params.k), params.k);
        return est;
    }
    std::vector<RateGroup> groups(1);
    RateGroup& rg = groups[0];
    rg.geom = CyclicGeometry::make(params.k, params.e, design.Ro, design.Ri);
    rg.distinct_target = design.distinct_target(params.k);
    rg.retain_top = design.scheme == Scheme::RatelessIr ? rg.distinct_target : 0;
    rg.ps = {design.p};
    rg.cand_index = {0};
    const std::vector<MdsDecModel> dec_models = {decode_model_for(params, design, side, lt_cost)};
    const auto acc =
        run_ir_trials(params, side, groups, dec_models, trials, seed, threads, 1);
    return finish_estimate(params, design, acc[0], trials);
}

namespace {

DesignEstimate optimize_mdsr(const SystemParams& params, DecoderSide side) {
    std::optional<DesignEstimate> best;
    const std::int64_t k = params.k;
    for (int copies = 1; copies <= params.e; ++copies) {
        const std::int64_t n_batches = binomial(params.e, copies);
        for (std::int64_t n1 = ((k + n_batches - 1) / n_batches) * n_batches;
             Rational(n1 * copies) <= params.e_mu_k(); n1 += n_batches) {
            for (int xi = 1; xi <= params.e; ++xi) {
                // Decodability: enough distinct batches outside the stragglers.
                const std::int64_t have = n_batches - binomial(params.e - xi, copies);
                if (have * n1 < k * n_batches) continue;
                SchemeDesign d;
                d.scheme = Scheme::MdsR;
                d.Ro = Rational(k, n1);
                d.Ri = Rational(1, copies);
                d.xi = xi;
                DesignEstimate est;
                est.design = d;
                est.latency = mdsr_totals(d, params, side);
                est.binary_mds_warn = d.Ro != Rational(1) && nontrivial_binary_mds(n1, k);
                if (!best || est.latency.total < best->latency.total) best = est;
            }
        }
    }
    if (!best) throw std::runtime_error("optimize_design: no feasible MDS-R design");
    return *best;
}

}  // namespace

DesignEstimate optimize_design(const SystemParams& params, Scheme scheme, DecoderSide side,
                               const McConfig& mc, const LtConfig& lt) {
    if (scheme == Scheme::MdsR) return optimize_mdsr(params, side);

    const std::int64_t phi =
        scheme == Scheme::RatelessIr
            ? (lt.phi_prime > 0 ? lt.phi_prime : default_phi_prime(params))
            : 0;
    const auto rates = feasible_designs(params, scheme, phi, mc.rate_axis_points);
    if (rates.empty()) throw std::runtime_error("optimize_design: no feasible design");

    LtCostModel lt_cost;
    if (scheme == Scheme::RatelessIr)
        lt_cost = estimate_lt_decode_cost(params.k, phi, lt.gamma, lt.zeta,
                                          mc.decode_cost_samples, mc.seed);

    // Build the candidate list grouped by rate pair.
    std::vector<RateGroup> groups;
    std::vector<IrCandidate> candidates;
    std::vector<MdsDecModel> dec_models;
    for (const auto& [Ro, Ri] : rates) {
        RateGroup rg;
        rg.geom = CyclicGeometry::make(params.k, params.e, Ro, Ri);
        SchemeDesign proto;
        proto.scheme = scheme;
        proto.Ro = Ro;
        proto.Ri = Ri;
        proto.phi_prime = Ro == Rational(1) ? 0 : phi;
        if (scheme == Scheme::RatelessIr) {
            proto.gamma = lt.gamma;
            proto.zeta = lt.zeta;
            proto.Pf = lt.Pf;
        }
        rg.distinct_target = proto.distinct_target(params.k);
        rg.retain_top = scheme == Scheme::RatelessIr ? rg.distinct_target : 0;
        if (rg.distinct_target > rg.geom.n1) continue;  // cannot collect enough distinct rows
        for (const std::int64_t p :
             p_grid(rg.distinct_target, rg.geom.rows_per_en * params.e, mc.p_axis_points)) {
            SchemeDesign d = proto;
            d.p = p;
            rg.ps.push_back(p);
            rg.cand_index.push_back(candidates.size());
            candidates.push_back({d, groups.size(), rg.ps.size() - 1});
            dec_models.push_back(decode_model_for(params, d, side,
                                                  scheme == Scheme::RatelessIr ? &lt_cost : nullptr));
        }
        if (!rg.ps.empty()) groups.push_back(std::move(rg));
    }
    if (candidates.empty()) throw std::runtime_error("optimize_design: no feasible design");

    // Stage 1: coarse trials over the whole grid.
    const auto coarse = run_ir_trials(params, side, groups, dec_models, mc.coarse_trials, mc.seed,
                                      mc.threads, candidates.size());
    std::vector<std::size_t> order(candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return coarse[a].total < coarse[b].total; });
    const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(mc.shortlist),
                                                   order.size());

    // Stage 2: full trials on the shortlist.
    std::vector<RateGroup> fine_groups;
    std::vector<MdsDecModel> fine_models;
    std::vector<std::size_t> fine_to_orig;
    for (std::size_t i = 0; i < keep; ++i) {
        const IrCandidate& c = candidates[order[i]];
        RateGroup rg;
        rg.geom = groups[c.rate_group].geom;
        rg.distinct_target = groups[c.rate_group].distinct_target;
        rg.retain_top = groups[c.rate_group].retain_top;
        rg.ps = {c.design.p};
        rg.cand_index = {fine_to_orig.size()};
        fine_groups.push_back(std::move(rg));
        fine_models.push_back(dec_models[order[i]]);
        fine_to_orig.push_back(order[i]);
    }
    const auto fine = run_ir_trials(params, side, fine_groups, fine_models, mc.trials, mc.seed,
                                    mc.threads, fine_to_orig.size());
    std::size_t best = 0;
    for (std::size_t i = 1; i < fine_to_orig.size(); ++i)
        if (fine[i].total < fine[best].total) best = i;
    return finish_estimate(params, candidates[fine_to_orig[best]].design, fine[best], mc.trials);
}

SolitonChoice optimize_soliton(std::int64_t k, std::int64_t phi_prime, int q, double Pf,
                               const std::vector<std::pair<std::int64_t, double>>& grid,
                               DecoderSide side, int u, int samples, std::uint64_t seed) {
    if (grid.empty()) throw std::invalid_argument("optimize_soliton: empty grid");
    if (!(Pf > 0.0) || !(Pf <= 1.0))
        throw std::invalid_argument("optimize_soliton: Pf must be in (0, 1]");
    std::optional<SolitonChoice> best;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto [gamma, zeta] = grid[i];
        const DegreeDistribution dist = robust_soliton(k, gamma, zeta);
        const double bound = failure_bound(k, phi_prime, q, dist);
        if (bound > Pf) continue;
        // Substream keyed by the candidate itself, not its grid position.
        const std::uint64_t cand_salt =
            static_cast<std::uint64_t>(gamma) ^ (std::hash<double>{}(zeta) << 1);
        const LtCostModel cost =
            estimate_lt_decode_cost(k, phi_prime, gamma, zeta, samples, derive_seed(seed, cand_salt));
        const double ops = side == DecoderSide::User ? cost.matrix_mean + cost.pervec_mean
                                                     : cost.matrix_mean + u * cost.pervec_mean;
        if (!best || ops < best->mean_ops) best = SolitonChoice{gamma, zeta, bound, ops};
    }
    if (!best)
        throw std::runtime_error("optimize_soliton: no grid point satisfies the Pf constraint");
    return *best;
}

}  // namespace edgecode
