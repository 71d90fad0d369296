#pragma once

// Plain dense GF(2) Gaussian elimination, independent of the inactivation
// decoder it checks. Rows are bitsets over k columns packed into 64-bit
// words.

#include <cstdint>
#include <optional>
#include <vector>

#include "edgecode/fountain.hpp"

namespace gf2 {

using Bits = std::vector<std::uint64_t>;

inline Bits to_bits(const edgecode::EncodingRow& row, std::int64_t k) {
    Bits b((static_cast<std::size_t>(k) + 63) / 64, 0);
    for (const std::int32_t s : row.neighbors)
        b[static_cast<std::size_t>(s) / 64] |= 1ULL << (static_cast<std::size_t>(s) % 64);
    return b;
}

inline bool get(const Bits& b, std::int64_t i) {
    return (b[static_cast<std::size_t>(i) / 64] >> (static_cast<std::size_t>(i) % 64)) & 1ULL;
}

inline std::int64_t rank(std::vector<Bits> rows, std::int64_t k) {
    std::int64_t r = 0;
    std::size_t row = 0;
    for (std::int64_t col = 0; col < k && row < rows.size(); ++col) {
        std::size_t piv = row;
        while (piv < rows.size() && !get(rows[piv], col)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[row], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != row && get(rows[i], col))
                for (std::size_t w = 0; w < rows[i].size(); ++w) rows[i][w] ^= rows[row][w];
        ++row;
        ++r;
    }
    return r;
}

inline std::int64_t rank(std::span<const edgecode::EncodingRow> rows, std::int64_t k) {
    std::vector<Bits> b;
    b.reserve(rows.size());
    for (const auto& row : rows) b.push_back(to_bits(row, k));
    return rank(std::move(b), k);
}

/// Solves A x = y when rank(A) = k; nullopt otherwise.
inline std::optional<std::vector<std::uint8_t>> solve(std::span<const edgecode::EncodingRow> rows,
                                                      std::span<const std::uint8_t> y,
                                                      std::int64_t k) {
    std::vector<Bits> a;
    std::vector<std::uint8_t> rhs(y.begin(), y.end());
    for (const auto& row : rows) a.push_back(to_bits(row, k));
    std::size_t row = 0;
    std::vector<std::int64_t> pivot_col(a.size(), -1);
    for (std::int64_t col = 0; col < k && row < a.size(); ++col) {
        std::size_t piv = row;
        while (piv < a.size() && !get(a[piv], col)) ++piv;
        if (piv == a.size()) return std::nullopt;
        std::swap(a[row], a[piv]);
        std::swap(rhs[row], rhs[piv]);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (i != row && get(a[i], col)) {
                for (std::size_t w = 0; w < a[i].size(); ++w) a[i][w] ^= a[row][w];
                rhs[i] ^= rhs[row];
            }
        pivot_col[row] = col;
        ++row;
    }
    if (row < static_cast<std::size_t>(k)) return std::nullopt;
    std::vector<std::uint8_t> x(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < row; ++i) x[static_cast<std::size_t>(pivot_col[i])] = rhs[i];
    return x;
}

/// Online rank tracker: add rows one at a time, query current rank.
class IncrementalBasis {
  public:
    explicit IncrementalBasis(std::int64_t k) : k_(k) {}

    bool add(const edgecode::EncodingRow& row) {
        Bits b = to_bits(row, k_);
        for (std::int64_t col = 0; col < k_; ++col) {
            if (!get(b, col)) continue;
            if (basis_[static_cast<std::size_t>(col)].empty()) {
                basis_[static_cast<std::size_t>(col)] = std::move(b);
                ++rank_;
                return true;
            }
            const Bits& piv = basis_[static_cast<std::size_t>(col)];
            for (std::size_t w = 0; w < b.size(); ++w) b[w] ^= piv[w];
        }
        return false;
    }

    std::int64_t rank() const { return rank_; }

  private:
    std::int64_t k_;
    std::int64_t rank_ = 0;
    std::vector<Bits> basis_{static_cast<std::size_t>(k_), Bits{}};
};

}  // namespace gf2
