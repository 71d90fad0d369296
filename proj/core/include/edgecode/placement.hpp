#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgecode/model.hpp"

namespace edgecode {

/// Queue-order matrix: entries[i*e + j] is the (1-based) index of the i-th
/// coded row in EN j's queue. n1 = k/Ro distinct coded rows.
struct AssignmentMatrix {
    std::int64_t rows = 0;
    int cols = 0;
    std::int64_t n1 = 0;
    std::vector<std::int32_t> entries;

    std::int32_t at(std::int64_t i, int j) const { return entries[static_cast<std::size_t>(i) * cols + j]; }
};

/// Assignment used by the irregular-repetition schemes: A_1 fills 1..k/Ro
/// row-major, each next block is the previous one cyclically shifted one
/// step left, and a fractional 1/Ri contributes a partial block of the
/// first (1/Ri - floor(1/Ri)) * k/(e*Ro) rows shifted once more.
AssignmentMatrix cyclic_assignment(std::int64_t k, int e, const Rational& Ro, const Rational& Ri);

/// MDS-R assignment: k/Ro coded rows split into C(e, 1/Ri) equal batches,
/// batch g assigned to the g-th (1/Ri)-subset of ENs in lexicographic
/// order; within a queue, batches in order and rows ascending.
AssignmentMatrix batch_assignment(std::int64_t k, int e, const Rational& Ro, const Rational& Ri);

/// One EN per column, comma-separated, one queue slot per line.
std::string to_csv(const AssignmentMatrix& a);

/// All (Ro, Ri) pairs that satisfy the storage constraint, the
/// integrality requirements of the scheme's assignment construction, the
/// scheme-specific minimum codeword count, and (MDS-R) the batch
/// divisibility. With max_per_axis == 0 the enumeration is exhaustive;
/// otherwise each axis is an even subsample that always keeps its
/// endpoints and the pure-repetition corner.
std::vector<std::pair<Rational, Rational>> feasible_designs(const SystemParams& params,
                                                            Scheme scheme,
                                                            std::int64_t phi_prime,
                                                            int max_per_axis = 0);

std::int64_t binomial(int n, int r);

}  // namespace edgecode
