#include "edgecode/mds.hpp"

#include <cmath>
#include <stdexcept>

namespace edgecode {

int ceil_log2(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("ceil_log2: n must be >= 1");
    int eta = 0;
    std::int64_t v = 1;
    while (v < n) {
        v <<= 1;
        ++eta;
    }
    return eta;
}

OpCounts fft_ops(int eta_log2) {
    if (eta_log2 < 1) throw std::invalid_argument("fft_ops: eta must be >= 1");
    const double half = std::ldexp(1.0, eta_log2 - 1);  // 2^(eta-1)
    OpCounts c;
    c.adds = half * (3.0 * eta_log2 - 5.0) + 4.0;
    c.mults = half * (eta_log2 - 3.0) + 2.0;
    return c;
}

OpCounts bm_ops(std::int64_t k, const Rational& Ro, double F) {
    if (F < 0.0 || F > 1.0) throw std::invalid_argument("bm_ops: F must be in [0, 1]");
    const Rational len = Rational(k) / Ro;
    if (!len.is_integer() || len.num < 1)
        throw std::invalid_argument("bm_ops: k/Ro must be a positive integer");
    const auto n1 = static_cast<double>(len.num);
    const int eta = ceil_log2(len.num);
    const OpCounts fft = fft_ops(eta);
    OpCounts c;
    c.adds = fft.adds + n1 * n1 * F - n1;
    c.mults = fft.mults + n1 * n1 * F;
    return c;
}

}  // namespace edgecode
