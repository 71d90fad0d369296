#include "edgecode/placement.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace edgecode {

std::int64_t binomial(int n, int r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    std::int64_t v = 1;
    for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
    return v;
}

namespace {

struct CyclicShape {
    std::int64_t n1;           // distinct coded rows
    std::int64_t m1;           // rows per block (k/(e*Ro))
    std::int64_t rows_per_en;  // total queue length (k/(e*Ro*Ri))
    std::int64_t full_blocks;
    std::int64_t partial_rows;
};

CyclicShape cyclic_shape(std::int64_t k, int e, const Rational& Ro, const Rational& Ri) {
    const Rational n1r = Rational(k) / Ro;
    const Rational m1r = n1r / Rational(e);
    const Rational rper = Rational(k) / (Ro * Ri * Rational(e));
    if (!m1r.is_integer() || m1r.num < 1)
        throw std::invalid_argument("cyclic assignment: k/(e*Ro) must be a positive integer");
    if (!rper.is_integer() || rper.num < 1)
        throw std::invalid_argument("cyclic assignment: k/(e*Ro*Ri) must be a positive integer");
    CyclicShape s;
    s.n1 = n1r.num;
    s.m1 = m1r.num;
    s.rows_per_en = rper.num;
    s.full_blocks = s.rows_per_en / s.m1;
    s.partial_rows = s.rows_per_en % s.m1;
    return s;
}

}  // namespace

AssignmentMatrix cyclic_assignment(std::int64_t k, int e, const Rational& Ro, const Rational& Ri) {
    const CyclicShape s = cyclic_shape(k, e, Ro, Ri);
    AssignmentMatrix a;
    a.rows = s.rows_per_en;
    a.cols = e;
    a.n1 = s.n1;
    a.entries.resize(static_cast<std::size_t>(a.rows) * e);
    for (std::int64_t q = 0; q < s.rows_per_en; ++q) {
        const std::int64_t b = q / s.m1;
        const std::int64_t i = q % s.m1;
        for (int j = 0; j < e; ++j) {
            const std::int64_t idx = i * e + (j + b) % e;
            a.entries[static_cast<std::size_t>(q) * e + j] = static_cast<std::int32_t>(idx + 1);
        }
    }
    return a;
}

AssignmentMatrix batch_assignment(std::int64_t k, int e, const Rational& Ro, const Rational& Ri) {
    const Rational n1r = Rational(k) / Ro;
    if (!n1r.is_integer() || n1r.num < 1)
        throw std::invalid_argument("batch assignment: k/Ro must be a positive integer");
    const Rational inv = Ri.inverse();
    if (!inv.is_integer() || inv.num < 1 || inv.num > e)
        throw std::invalid_argument("batch assignment: 1/Ri must be an integer in [1, e]");
    const std::int64_t n1 = n1r.num;
    const int copies = static_cast<int>(inv.num);
    const std::int64_t n_batches = binomial(e, copies);
    if (n1 % n_batches != 0)
        throw std::invalid_argument("batch assignment: C(e, 1/Ri) must divide k/Ro");
    const std::int64_t batch_size = n1 / n_batches;

    AssignmentMatrix a;
    a.rows = n1 * copies / e;
    a.cols = e;
    a.n1 = n1;
    a.entries.resize(static_cast<std::size_t>(a.rows) * e);
    std::vector<std::int64_t> fill(static_cast<std::size_t>(e), 0);

    // Lexicographic enumeration of the (1/Ri)-subsets of {0..e-1}.
    std::vector<int> subset(static_cast<std::size_t>(copies));
    for (int i = 0; i < copies; ++i) subset[static_cast<std::size_t>(i)] = i;
    std::int64_t batch = 0;
    for (;;) {
        for (std::int64_t row = 0; row < batch_size; ++row) {
            const auto idx = static_cast<std::int32_t>(batch * batch_size + row + 1);
            for (const int j : subset)
                a.entries[static_cast<std::size_t>(fill[static_cast<std::size_t>(j)]++) * e + j] = idx;
        }
        ++batch;
        int pos = copies - 1;
        while (pos >= 0 && subset[static_cast<std::size_t>(pos)] == e - copies + pos) --pos;
        if (pos < 0) break;
        ++subset[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < copies; ++i)
            subset[static_cast<std::size_t>(i)] = subset[static_cast<std::size_t>(i - 1)] + 1;
    }
    return a;
}

std::string to_csv(const AssignmentMatrix& a) {
    std::ostringstream os;
    for (std::int64_t i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) {
            if (j) os << ',';
            os << a.at(i, j);
        }
        os << '\n';
    }
    return os.str();
}

namespace {

std::vector<std::int64_t> subsample(std::vector<std::int64_t> vals, int max_count) {
    if (max_count <= 0 || static_cast<int>(vals.size()) <= max_count) return vals;
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(max_count));
    const auto last = static_cast<double>(vals.size() - 1);
    for (int i = 0; i < max_count; ++i) {
        const auto idx = static_cast<std::size_t>(last * i / (max_count - 1) + 0.5);
        if (out.empty() || vals[idx] != out.back()) out.push_back(vals[idx]);
    }
    return out;
}

}  // namespace

std::vector<std::pair<Rational, Rational>> feasible_designs(const SystemParams& params,
                                                            Scheme scheme,
                                                            std::int64_t phi_prime,
                                                            int max_per_axis) {
    std::vector<std::pair<Rational, Rational>> out;
    const std::int64_t k = params.k;
    const int e = params.e;
    if (params.storage_cap() < Rational(k, e)) return {};
    const Rational emk = params.e_mu_k();

    if (scheme == Scheme::MdsR) {
        for (int copies = 1; copies <= e; ++copies) {
            const std::int64_t n_batches = binomial(e, copies);
            std::vector<std::int64_t> n1s;
            for (std::int64_t n1 = ((k + n_batches - 1) / n_batches) * n_batches;
                 Rational(n1 * copies) <= emk; n1 += n_batches)
                n1s.push_back(n1);
            for (const std::int64_t n1 : subsample(std::move(n1s), max_per_axis))
                out.emplace_back(Rational(k, n1), Rational(1, copies));
        }
        return out;
    }

    // Irregular-repetition schemes: n1 and n must be multiples of e.
    const std::int64_t hi = (emk.num / emk.den);  // floor(e*mu*k)
    std::vector<std::int64_t> n1s;
    if (k % e == 0) n1s.push_back(k);  // pure repetition corner, Ro = 1
    const std::int64_t lo1 = scheme == Scheme::RatelessIr ? k + phi_prime : k + 1;
    {
        std::vector<std::int64_t> coded;
        for (std::int64_t n1 = ((lo1 + e - 1) / e) * e; n1 <= hi; n1 += e)
            if (n1 > k) coded.push_back(n1);
        for (const std::int64_t n1 : subsample(std::move(coded), max_per_axis)) n1s.push_back(n1);
    }
    for (const std::int64_t n1 : n1s) {
        std::vector<std::int64_t> ns;
        for (std::int64_t n = n1; n <= hi; n += e)
            if (n % e == 0) ns.push_back(n);
        if (n1 % e != 0) continue;  // defensive; all candidates are multiples of e
        for (const std::int64_t n : subsample(std::move(ns), max_per_axis))
            out.emplace_back(Rational(k, n1), Rational(n1, n));
    }
    return out;
}

}  // namespace edgecode
