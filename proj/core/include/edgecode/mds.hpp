#pragma once

#include <cstdint>
#include <utility>

#include "edgecode/rational.hpp"

namespace edgecode {

/// Operation counts of a split-radix FFT on a length-2^eta input.
struct OpCounts {
    double adds = 0;
    double mults = 0;
    double total() const { return adds + mults; }
};

/// adds = 2^(eta-1)*(3*eta-5)+4, mults = 2^(eta-1)*(eta-3)+2, eta >= 1.
OpCounts fft_ops(int eta_log2);

/// Berlekamp-Massey decoding cost of a length-k/Ro sequence with erased
/// fraction F: split-radix FFT of the zero-padded sequence plus the LFSR
/// stage. k/Ro must be a positive integer, F in [0, 1].
OpCounts bm_ops(std::int64_t k, const Rational& Ro, double F);

/// An MDS code recovers from any k distinct products.
inline bool mds_decodable(std::int64_t v_distinct, std::int64_t k) { return v_distinct >= k; }

/// ceil(log2(n)) for n >= 1.
int ceil_log2(std::int64_t n);

}  // namespace edgecode
