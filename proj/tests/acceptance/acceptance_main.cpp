// Acceptance suite: runs the full desk-scale experiment and verifies the
// headline numbers, orderings, optima, bounds, and oracle checks. Prints
// one PASS/FAIL line per criterion; the exit code is the failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "edgecode/bounds.hpp"
#include "edgecode/fountain.hpp"
#include "edgecode/latency.hpp"
#include "edgecode/placement.hpp"
#include "edgecode/runtime.hpp"
#include "edgecode/search.hpp"
#include "edgecode/sweep.hpp"
#include "../gf2_oracle.hpp"

using namespace edgecode;

namespace {

struct Criterion {
    bool pass = true;
    std::vector<std::string> problems;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            problems.push_back(what);
        }
    }
    void note(const std::string& n) { notes.push_back(n); }
};

int finish(int idx, const char* title, const Criterion& c) {
    std::printf("%s criterion %d: %s", c.pass ? "PASS" : "FAIL", idx, title);
    for (const std::string& n : c.notes) std::printf(" [%s]", n.c_str());
    for (const std::string& p : c.problems) std::printf(" !! %s", p.c_str());
    std::printf("\n");
    std::fflush(stdout);
    return c.pass ? 0 : 1;
}

const SweepRow* find_row(const SweepResult& res, const std::string& scheme, double value) {
    for (const SweepRow& r : res.rows)
        if (r.scheme == scheme && r.value == value) return &r;
    return nullptr;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// Relative latency advantage of a over b: 1 - a/b.
double gap(double a, double b) { return 1.0 - a / b; }

// --- criteria 1, 2, 4 read the user-side sweep; 3 reads both sides ---

int criterion1(const SweepResult& user, double sweep_seconds) {
    Criterion c;
    const SweepRow* rir7 = find_row(user, "rateless_ir", 7000);
    const SweepRow* mdsr7 = find_row(user, "mds_r", 7000);
    const SweepRow* mdsir7 = find_row(user, "mds_ir", 7000);
    const SweepRow* rir15 = find_row(user, "rateless_ir", 15000);
    const SweepRow* mdsr15 = find_row(user, "mds_r", 15000);
    c.require(rir7 && mdsr7 && mdsir7 && rir15 && mdsr15, "sweep rows missing");
    if (!c.pass) return finish(1, "Fig. 2 latency gaps (users decode)", c);

    const double g_mdsr_7 = gap(rir7->latency.total, mdsr7->latency.total);
    const double g_mdsir_7 = gap(rir7->latency.total, mdsir7->latency.total);
    const double g_mdsr_15 = gap(rir15->latency.total, mdsr15->latency.total);
    c.note("rateless vs mds_r at k=7000: " + fmt(100 * g_mdsr_7) + "% (target 35 +/- 5)");
    c.note("rateless vs mds_ir at k=7000: " + fmt(100 * g_mdsir_7) + "% (target 23 +/- 5)");
    c.note("rateless vs mds_r at k=15000: " + fmt(100 * g_mdsr_15) + "% (target 48 +/- 5)");
    c.note("k-sweep wall time " + fmt(sweep_seconds) + " s (target < 600)");
    c.require(std::abs(g_mdsr_7 - 0.35) <= 0.05, "k=7000 gap to MDS-R outside 35 +/- 5 points");
    c.require(std::abs(g_mdsir_7 - 0.23) <= 0.05, "k=7000 gap to MDS-IR outside 23 +/- 5 points");
    c.require(std::abs(g_mdsr_15 - 0.48) <= 0.05, "k=15000 gap to MDS-R outside 48 +/- 5 points");
    c.require(sweep_seconds < 600.0, "k-sweep exceeded 10 minutes");
    return finish(1, "Fig. 2 latency gaps (users decode)", c);
}

int criterion2(const SweepResult& user) {
    Criterion c;
    const std::map<std::string, double> targets = {
        {"rateless_ir", 7000}, {"mds_ir", 8000}, {"mds_r", 9000}};
    for (const auto& [scheme, target] : targets) {
        std::optional<double> crossing;
        for (int k = 5000; k < 15000; k += 1000) {
            const SweepRow* lo = find_row(user, scheme, k);
            const SweepRow* hi = find_row(user, scheme, k + 1000);
            if (!lo || !hi) continue;
            const double a = lo->latency.normalized, b = hi->latency.normalized;
            if (a >= 1.0 && b < 1.0) {
                crossing = k + 1000 * (a - 1.0) / (a - b);
                break;
            }
        }
        if (!crossing) {
            c.require(false, scheme + ": no crossing of the local-computation baseline");
            continue;
        }
        c.note(scheme + " crosses 1.0 at k=" + fmt(*crossing) + " (target " + fmt(target) +
               " +/- 1000)");
        c.require(std::abs(*crossing - target) <= 1000.0, scheme + " crossover out of tolerance");
    }
    return finish(2, "crossover points vs local computation (users decode)", c);
}

int criterion3(const SweepResult& user, const SweepResult& edge) {
    Criterion c;
    // Rateless-IR: (p = 1.2k, Ro = 1/3, Ri = 1) for every k, both decoders.
    for (const SweepResult* res : {&user, &edge}) {
        for (const SweepRow& r : res->rows) {
            if (r.scheme != "rateless_ir" || !r.has_design) continue;
            const auto k = static_cast<std::int64_t>(r.value);
            c.require(r.design.p == k + k / 5,
                      "rateless p != 1.2k at k=" + fmt(r.value) + " (" + decoder_name(r.decoder) + ")");
            c.require(r.design.Ro == Rational(1, 3),
                      "rateless Ro != 1/3 at k=" + fmt(r.value));
            c.require(r.design.Ri == Rational(1), "rateless Ri != 1 at k=" + fmt(r.value));
        }
        // MDS-IR: (p = k, Ro = 1, Ri = 1/3) for every k, both decoders.
        for (const SweepRow& r : res->rows) {
            if (r.scheme != "mds_ir" || !r.has_design) continue;
            c.require(r.design.p == static_cast<std::int64_t>(r.value),
                      "mds_ir p != k at k=" + fmt(r.value) + " (" + decoder_name(r.decoder) + ")");
            c.require(r.design.Ro == Rational(1), "mds_ir Ro != 1 at k=" + fmt(r.value));
            c.require(r.design.Ri == Rational(1, 3), "mds_ir Ri != 1/3 at k=" + fmt(r.value));
        }
    }
    // MDS-R, users decode: (2, ~7/10, 1/2) at small k, (3, 1, 1/3) from k = 7000.
    for (const double k : {5000.0, 6000.0}) {
        const SweepRow* r = find_row(user, "mds_r", k);
        if (!r || !r->has_design) {
            c.require(false, "mds_r row missing");
            continue;
        }
        c.require(r->design.xi == 2, "mds_r xi != 2 at k=" + fmt(k));
        c.require(r->design.Ri == Rational(1, 2), "mds_r Ri != 1/2 at k=" + fmt(k));
        c.require(std::abs(r->design.Ro.as_double() - 0.7) < 0.01,
                  "mds_r Ro not near 7/10 at k=" + fmt(k));
    }
    for (double k = 7000; k <= 15000; k += 1000) {
        const SweepRow* r = find_row(user, "mds_r", k);
        if (!r || !r->has_design) {
            c.require(false, "mds_r row missing");
            continue;
        }
        c.require(r->design.xi == 3 && r->design.Ro == Rational(1) &&
                      r->design.Ri == Rational(1, 3),
                  "mds_r did not switch to (3, 1, 1/3) at k=" + fmt(k));
    }
    return finish(3, "optimizer outputs match the reported optima", c);
}

int criterion4(const SweepResult& user, const SweepResult& edge) {
    Criterion c;
    for (const SweepResult* res : {&user, &edge}) {
        for (double k = 5000; k <= 15000; k += 1000) {
            const SweepRow* bound = nullptr;
            for (const SweepRow& r : res->rows)
                if (r.scheme == "lower_bound" && r.value == k) bound = &r;
            if (!bound) {
                c.require(false, "bound row missing");
                continue;
            }
            for (const std::string scheme : {"rateless_ir", "mds_ir", "mds_r"}) {
                const SweepRow* r = find_row(*res, scheme, k);
                if (!r) continue;
                const double slack = std::max(3.0 * bound->ci95_norm, 1e-9);
                c.require(r->latency.normalized >= bound->latency.normalized - slack,
                          scheme + " below the bound at k=" + fmt(k) + " (" +
                              decoder_name(r->decoder) + ")");
            }
        }
    }
    // Quantitative gap to MDS-R, users decode.
    const SweepRow* b5 = find_row(user, "lower_bound", 5000);
    const SweepRow* m5 = find_row(user, "mds_r", 5000);
    if (b5 && m5) {
        const double g = gap(b5->latency.total, m5->latency.total);
        c.note("bound vs mds_r at k=5000: " + fmt(100 * g) + "% (target 29 +/- 5)");
        c.require(std::abs(g - 0.29) <= 0.05, "bound gap at k=5000 outside 29 +/- 5 points");
    } else {
        c.require(false, "rows missing at k=5000");
    }
    for (double k = 7000; k <= 15000; k += 1000) {
        const SweepRow* b = find_row(user, "lower_bound", k);
        const SweepRow* m = find_row(user, "mds_r", k);
        if (!b || !m) {
            c.require(false, "rows missing at k=" + fmt(k));
            continue;
        }
        const double g = gap(b->latency.total, m->latency.total);
        if (k == 7000 || k == 15000)
            c.note("bound vs mds_r at k=" + fmt(k) + ": " + fmt(100 * g) + "%");
        c.require(std::abs(g - 0.40) <= 0.05,
                  "bound gap at k=" + fmt(k) + " outside 40 +/- 5 points");
    }
    return finish(4, "lower-bound dominance and gaps", c);
}

int criterion5() {
    Criterion c;
    const std::map<std::int64_t, std::pair<std::int64_t, double>> soliton = {
        {20, {5, 0.1}}, {30, {8, 0.1}}, {50, {12, 0.1}}};
    const int trials = 100'000;
    for (const auto& [k, params] : soliton) {
        const DegreeDistribution dist = robust_soliton(k, params.first, params.second);
        const RowSampler sampler(dist);
        const std::int64_t max_phi = k / 2;
        std::vector<std::int64_t> failures(static_cast<std::size_t>(max_phi) + 1, 0);
        for (int t = 0; t < trials; ++t) {
            Rng rng = Rng::substream(2718, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(t));
            gf2::IncrementalBasis basis(k);
            for (std::int64_t i = 0; i < k + max_phi; ++i) {
                basis.add(sampler(rng));
                if (i >= k - 1 && basis.rank() < k)
                    ++failures[static_cast<std::size_t>(i - k + 1)];
            }
        }
        bool tight = false;
        double best_ratio = 1e300;
        for (std::int64_t phi = 0; phi <= max_phi; ++phi) {
            const double empirical =
                static_cast<double>(failures[static_cast<std::size_t>(phi)]) / trials;
            const double bound = failure_bound(k, phi, 2, dist);
            c.require(bound >= empirical, "bound below empirical at k=" + std::to_string(k) +
                                              ", phi=" + std::to_string(phi));
            if (empirical > 0) {
                best_ratio = std::min(best_ratio, bound / empirical);
                if (bound / empirical <= 3.0) tight = true;
            }
        }
        c.note("k=" + std::to_string(k) + " tightest bound/empirical " + fmt(best_ratio));
        c.require(tight, "no phi with bound/empirical <= 3 at k=" + std::to_string(k));
    }
    return finish(5, "ML failure bound dominates the empirical failure rate", c);
}

int criterion6() {
    Criterion c;
    // Exhaustive diversity multisets {m_i} with v products and sum p.
    std::int64_t violations = 0;
    for (int e = 1; e <= 5; ++e) {
        for (int v = 1; v <= 8; ++v) {
            for (int p = v; p <= v * e; ++p) {
                double min_sum = 1e300;
                std::vector<int> m(static_cast<std::size_t>(v));
                // Enumerate nondecreasing m_1 <= ... <= m_v in [1, e].
                auto rec = [&](auto&& self, int idx, int lo, int remaining) -> void {
                    if (idx == v) {
                        if (remaining != 0) return;
                        double s = 0;
                        for (const int mi : m) s += 1.0 / mi;
                        min_sum = std::min(min_sum, s);
                        return;
                    }
                    for (int mi = lo; mi <= e && mi <= remaining; ++mi) {
                        m[static_cast<std::size_t>(idx)] = mi;
                        self(self, idx + 1, mi, remaining - mi);
                    }
                };
                rec(rec, 0, 1, p);
                const double bound_coeff = f_bound(p, v);
                if (min_sum < bound_coeff - 1e-9) ++violations;
                // The floor/ceil split must achieve the bound exactly.
                const std::int64_t fl = p / v, ce = (p + v - 1) / v;
                const std::int64_t n_low = ce * v - p;
                const std::int64_t n_high = v - n_low;
                const double split = (fl > 0 ? static_cast<double>(n_low) / fl : 0.0) +
                                     (ce > 0 ? static_cast<double>(n_high) / ce : 0.0);
                if (std::abs(split - bound_coeff) > 1e-9) ++violations;
                if (std::abs(min_sum - bound_coeff) > 1e-9) ++violations;
            }
        }
    }
    c.require(violations == 0,
              "diversity-multiset enumeration found " + std::to_string(violations) + " violations");

    // Lemma-4 monotonicity on a dense grid.
    const double b = 13.0;
    double prev = f_bound(b, b);
    for (int i = 1; i <= 10'000; ++i) {
        const double a = b + 9.0 * b * i / 10'000.0;
        const double val = f_bound(a, b);
        if (val > prev + 1e-12) {
            c.require(false, "f_bound not decreasing in a at i=" + std::to_string(i));
            break;
        }
        prev = val;
    }
    const double a_fixed = 60.0;
    prev = 0.0;
    for (int i = 1; i <= 10'000; ++i) {
        const double bb = a_fixed * i / 10'000.0;
        const double val = f_bound(a_fixed, bb);
        if (val < prev - 1e-12) {
            c.require(false, "f_bound not increasing in b at i=" + std::to_string(i));
            break;
        }
        prev = val;
    }
    return finish(6, "downlink-bound optimality oracle (Appendix B/C)", c);
}

int criterion7() {
    Criterion c;
    // e=5, xi=2, 1/Ri=3, Ro=3/4 at k=15: n1=20 distinct rows, 12 per EN.
    const std::int64_t k = 15;
    const Rational Ro(3, 4), Ri(1, 3);
    const AssignmentMatrix a = batch_assignment(k, 5, Ro, Ri);
    SchemeDesign d;
    d.scheme = Scheme::MdsR;
    d.Ro = Ro;
    d.Ri = Ri;
    d.xi = 2;
    const double delta_s = 0.002, beta = 0.03;
    const int trials = 50'000;
    double lc_sum = 0, ldu_sum = 0;
    std::vector<double> hist(6, 0.0);
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::substream(31415, 7, static_cast<std::uint64_t>(t));
        const StragglerDraw draw = draw_stragglers(beta, 5, rng);
        const ComputationOutcome out = run_computation(a, draw, d, delta_s);
        lc_sum += out.Lc;
        ldu_sum += comm_user(out.retained_diversity, 10, 2, 1e8);
        for (const std::int32_t m : out.retained_diversity) hist[static_cast<std::size_t>(m)] += 1;
    }
    const double lc_mc = lc_sum / trials;
    const double lc_cf = mdsr_expected_Lc(2, 5, beta, k, Ro, Ri, delta_s);
    c.note("E[Lc] mc " + fmt(lc_mc) + " vs closed form " + fmt(lc_cf));
    c.require(std::abs(lc_mc - lc_cf) / lc_cf < 0.01, "E[Lc] off by more than 1%");

    double gsum = 0;
    for (int m = 1; m <= 5; ++m) gsum += static_cast<double>(mdsr_g(m, 2, 5, Ri, 20)) / m;
    const double ldu_cf = comm_user_from_sum(gsum, 10, 2, 1e8);
    const double ldu_mc = ldu_sum / trials;
    c.note("E[Ldu] mc " + fmt(ldu_mc) + " vs closed form " + fmt(ldu_cf));
    c.require(std::abs(ldu_mc - ldu_cf) / ldu_cf < 0.01, "E[Ldu] off by more than 1%");

    for (int m = 1; m <= 5; ++m) {
        const double mc_frac = hist[static_cast<std::size_t>(m)] / trials / 20.0;
        const double cf_frac = static_cast<double>(mdsr_g(m, 2, 5, Ri, 20)) / 20.0;
        if (cf_frac == 0.0) {
            c.require(mc_frac == 0.0, "diversity " + std::to_string(m) + " outside support");
        } else {
            c.require(std::abs(mc_frac - cf_frac) / cf_frac < 0.01,
                      "diversity histogram off at m=" + std::to_string(m));
        }
    }
    return finish(7, "MDS-R closed forms match simulation within 1%", c);
}

int criterion8() {
    Criterion c;
    const AssignmentMatrix cyc = cyclic_assignment(15, 5, Rational(3, 4), Rational(2, 5));
    const char* golden_cyc =
        "1,2,3,4,5\n6,7,8,9,10\n11,12,13,14,15\n16,17,18,19,20\n"
        "2,3,4,5,1\n7,8,9,10,6\n12,13,14,15,11\n17,18,19,20,16\n"
        "3,4,5,1,2\n8,9,10,6,7\n";
    c.require(to_csv(cyc) == golden_cyc, "cyclic assignment does not byte-match the example");

    const AssignmentMatrix bat = batch_assignment(15, 5, Rational(3, 4), Rational(1, 3));
    const char* golden_bat =
        "1,1,1,3,5\n2,2,2,4,6\n3,3,7,7,9\n4,4,8,8,10\n5,5,9,11,11\n6,6,10,12,12\n"
        "7,13,13,13,15\n8,14,14,14,16\n9,15,15,17,17\n10,16,16,18,18\n"
        "11,17,19,19,19\n12,18,20,20,20\n";
    c.require(to_csv(bat) == golden_bat, "batch assignment does not byte-match the example");
    return finish(8, "golden assignment matrices", c);
}

int criterion9() {
    Criterion c;
    int disagreements = 0;
    for (int inst = 0; inst < 1000; ++inst) {
        Rng rng = Rng::substream(1618, 9, static_cast<std::uint64_t>(inst));
        const std::int64_t k = 2 + static_cast<std::int64_t>(rng.uniform_below(63));
        const std::int64_t gamma = 1 + static_cast<std::int64_t>(rng.uniform_below(
                                           static_cast<std::uint64_t>(k)));
        const double zeta = 0.05 + 0.4 * rng.uniform01();
        const DegreeDistribution dist = robust_soliton(k, gamma, zeta);
        const RowSampler sampler(dist);
        const std::int64_t m = k + static_cast<std::int64_t>(rng.uniform_below(
                                       static_cast<std::uint64_t>(k / 2 + 2)));
        std::vector<EncodingRow> rows(static_cast<std::size_t>(m));
        for (auto& r : rows) r = sampler(rng);
        const bool got = inactivation_decode(rows, k).success;
        const bool want = gf2::rank(rows, k) == k;
        if (got != want) ++disagreements;
    }
    c.note("1000 instances, k in [2, 64]");
    c.require(disagreements == 0, std::to_string(disagreements) + " disagreements with the oracle");
    return finish(9, "inactivation decoder agrees with the rank oracle", c);
}

}  // namespace

int main() {
    RunConfig cfg = default_config();
    std::vector<std::string> errs = validate_config(cfg);
    if (!errs.empty()) {
        for (const std::string& e : errs) std::fprintf(stderr, "config error: %s\n", e.c_str());
        return 99;
    }

    std::printf("running the k-sweep at 5e4 trials (users + edge nodes decode)...\n");
    std::fflush(stdout);
    const auto t0 = std::chrono::steady_clock::now();
    const SweepResult user = run_sweep(cfg, DecoderSide::User);
    const auto t1 = std::chrono::steady_clock::now();
    const SweepResult edge = run_sweep(cfg, DecoderSide::Edge);
    const double user_seconds = std::chrono::duration<double>(t1 - t0).count();

    int failures = 0;
    failures += criterion1(user, user_seconds);
    failures += criterion2(user);
    failures += criterion3(user, edge);
    failures += criterion4(user, edge);
    failures += criterion5();
    failures += criterion6();
    failures += criterion7();
    failures += criterion8();
    failures += criterion9();
    std::printf("%d of 9 criteria failed\n", failures);
    return failures;
}
