#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "edgecode/placement.hpp"

using namespace edgecode;

namespace {

std::vector<std::int32_t> column(const AssignmentMatrix& a, int j) {
    std::vector<std::int32_t> c;
    for (std::int64_t i = 0; i < a.rows; ++i) c.push_back(a.at(i, j));
    return c;
}

void check_multiplicities(const AssignmentMatrix& a) {
    std::map<std::int32_t, int> mult;
    for (const std::int32_t v : a.entries) ++mult[v];
    int lo = 1 << 30, hi = 0;
    for (const auto& [idx, m] : mult) {
        CHECK(idx >= 1);
        CHECK(idx <= a.n1);
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }
    CHECK(hi - lo <= 1);
    for (int j = 0; j < a.cols; ++j) {
        const auto col = column(a, j);
        CHECK(std::set<std::int32_t>(col.begin(), col.end()).size() == col.size());
    }
}

}  // namespace

TEST_CASE("cyclic assignment reproduces the worked 10x5 example") {
    const AssignmentMatrix a = cyclic_assignment(15, 5, Rational(3, 4), Rational(2, 5));
    REQUIRE(a.rows == 10);
    REQUIRE(a.cols == 5);
    REQUIRE(a.n1 == 20);
    const std::int32_t expect[10][5] = {
        {1, 2, 3, 4, 5},     {6, 7, 8, 9, 10},     {11, 12, 13, 14, 15}, {16, 17, 18, 19, 20},
        {2, 3, 4, 5, 1},     {7, 8, 9, 10, 6},     {12, 13, 14, 15, 11}, {17, 18, 19, 20, 16},
        {3, 4, 5, 1, 2},     {8, 9, 10, 6, 7}};
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 5; ++j) CHECK(a.at(i, j) == expect[i][j]);
    check_multiplicities(a);
    CHECK(a.entries.size() == 50);  // k/(Ro*Ri) = 15/(3/4 * 2/5)
}

TEST_CASE("cyclic assignment corner cases") {
    SUBCASE("no replication, single row") {
        const AssignmentMatrix a = cyclic_assignment(2, 2, Rational(1), Rational(1));
        REQUIRE(a.rows == 1);
        CHECK(a.at(0, 0) == 1);
        CHECK(a.at(0, 1) == 2);
    }
    SUBCASE("full double replication") {
        const AssignmentMatrix a = cyclic_assignment(2, 2, Rational(1), Rational(1, 2));
        REQUIRE(a.rows == 2);
        CHECK(a.at(0, 0) == 1);
        CHECK(a.at(0, 1) == 2);
        CHECK(a.at(1, 0) == 2);
        CHECK(a.at(1, 1) == 1);
    }
    SUBCASE("rejects non-integral shapes") {
        CHECK_THROWS(cyclic_assignment(15, 3, Rational(3, 4), Rational(1)));  // k/(e*Ro) = 20/3
        CHECK_THROWS(cyclic_assignment(10, 5, Rational(10, 13), Rational(1)));
    }
}

TEST_CASE("batch assignment reproduces the worked 12x5 example") {
    const AssignmentMatrix a = batch_assignment(15, 5, Rational(3, 4), Rational(1, 3));
    REQUIRE(a.rows == 12);
    REQUIRE(a.cols == 5);
    REQUIRE(a.n1 == 20);
    const std::int32_t expect[12][5] = {
        {1, 1, 1, 3, 5},      {2, 2, 2, 4, 6},      {3, 3, 7, 7, 9},      {4, 4, 8, 8, 10},
        {5, 5, 9, 11, 11},    {6, 6, 10, 12, 12},   {7, 13, 13, 13, 15},  {8, 14, 14, 14, 16},
        {9, 15, 15, 17, 17},  {10, 16, 16, 18, 18}, {11, 17, 19, 19, 19}, {12, 18, 20, 20, 20}};
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 5; ++j) CHECK(a.at(i, j) == expect[i][j]);

    std::map<std::int32_t, int> mult;
    for (const std::int32_t v : a.entries) ++mult[v];
    for (const auto& [idx, m] : mult) CHECK(m == 3);  // every row on exactly 1/Ri ENs
    CHECK(mult.size() == 20);
}

TEST_CASE("batch assignment with singleton batches") {
    const AssignmentMatrix a = batch_assignment(3, 3, Rational(1), Rational(1, 2));
    // C(3,2) = 3 batches of one row each, on EN pairs {1,2},{1,3},{2,3}.
    REQUIRE(a.rows == 2);
    CHECK(column(a, 0) == std::vector<std::int32_t>{1, 2});
    CHECK(column(a, 1) == std::vector<std::int32_t>{1, 3});
    CHECK(column(a, 2) == std::vector<std::int32_t>{2, 3});
    CHECK_THROWS(batch_assignment(3, 3, Rational(3, 4), Rational(1, 2)));   // k/Ro = 4 not /3
    CHECK_THROWS(batch_assignment(4, 4, Rational(1), Rational(2, 5)));      // 1/Ri not integer
}

TEST_CASE("batch columns are constant within a batch") {
    const AssignmentMatrix a = batch_assignment(15, 5, Rational(3, 4), Rational(1, 3));
    // Rows 2g-1 and 2g belong to the same batch and must sit on the same ENs.
    for (std::int32_t g = 0; g < 10; ++g) {
        std::set<int> cols_a, cols_b;
        for (int j = 0; j < 5; ++j)
            for (std::int64_t i = 0; i < a.rows; ++i) {
                if (a.at(i, j) == 2 * g + 1) cols_a.insert(j);
                if (a.at(i, j) == 2 * g + 2) cols_b.insert(j);
            }
        CHECK(cols_a == cols_b);
        CHECK(cols_a.size() == 3);
    }
}

TEST_CASE("constructions are deterministic") {
    const AssignmentMatrix a = cyclic_assignment(30, 5, Rational(3, 4), Rational(2, 5));
    const AssignmentMatrix b = cyclic_assignment(30, 5, Rational(3, 4), Rational(2, 5));
    CHECK(a.entries == b.entries);
    const AssignmentMatrix c = batch_assignment(30, 5, Rational(3, 4), Rational(1, 2));
    const AssignmentMatrix d = batch_assignment(30, 5, Rational(3, 4), Rational(1, 2));
    CHECK(c.entries == d.entries);
}

TEST_CASE("csv export is one EN per column") {
    const AssignmentMatrix a = cyclic_assignment(2, 2, Rational(1), Rational(1, 2));
    CHECK(to_csv(a) == "1,2\n2,1\n");
}

TEST_CASE("feasible designs at the desk-scale operating point") {
    SystemParams p;
    p.e = 5;
    p.u = 10;
    p.k = 10000;
    p.r = 10000;
    p.mu = Rational(3, 5);

    SUBCASE("rateless set contains the storage-saturating (1/3, 1)") {
        const auto set = feasible_designs(p, Scheme::RatelessIr, 2000, 9);
        const bool has = std::any_of(set.begin(), set.end(), [](const auto& ps) {
            return ps.first == Rational(1, 3) && ps.second == Rational(1);
        });
        CHECK(has);
        const bool uncoded = std::any_of(set.begin(), set.end(), [](const auto& ps) {
            return ps.first == Rational(1) && ps.second == Rational(1);
        });
        CHECK(uncoded);  // k/e integral and k/e <= mu*k here
        for (const auto& [Ro, Ri] : set) {
            const Rational per_en = Rational(p.k) / (Ro * Ri * Rational(p.e));
            CHECK(per_en <= p.storage_cap());
            CHECK((Rational(p.k) / (Ro * Rational(p.e))).is_integer());
            CHECK((Rational(p.k) / (Ro * Ri * Rational(p.e))).is_integer());
            if (Ro != Rational(1)) CHECK(Rational(p.k) / Ro >= Rational(p.k + 2000));
        }
    }
    SUBCASE("mds-ir set contains the pure-replication (1, 1/3)") {
        const auto set = feasible_designs(p, Scheme::MdsIr, 0, 9);
        const bool has = std::any_of(set.begin(), set.end(), [](const auto& ps) {
            return ps.first == Rational(1) && ps.second == Rational(1, 3);
        });
        CHECK(has);
    }
    SUBCASE("mds-r set honors batch divisibility") {
        const auto set = feasible_designs(p, Scheme::MdsR, 0, 9);
        CHECK(!set.empty());
        for (const auto& [Ro, Ri] : set) {
            const Rational n1 = Rational(p.k) / Ro;
            REQUIRE(n1.is_integer());
            REQUIRE(Ri.inverse().is_integer());
            CHECK(n1.num % binomial(p.e, static_cast<int>(Ri.inverse().num)) == 0);
        }
    }
    SUBCASE("storage-infeasible parameters yield the empty set") {
        p.mu = Rational(1, 10);  // mu*k < k/e
        CHECK(feasible_designs(p, Scheme::MdsIr, 0, 9).empty());
    }
}

TEST_CASE("exhaustive small-scale enumeration matches the defining constraints") {
    SystemParams p;
    p.e = 3;
    p.u = 3;
    p.k = 6;
    p.r = 6;
    p.mu = Rational(1);
    const auto set = feasible_designs(p, Scheme::MdsIr, 0, 0);
    // n1 in {6, 9, 12, 15, 18} x n in multiples of 3 up to 18, n >= n1.
    std::set<std::pair<std::int64_t, std::int64_t>> got;
    for (const auto& [Ro, Ri] : set) {
        const std::int64_t n1 = (Rational(p.k) / Ro).num;
        const std::int64_t n = (Rational(p.k) / (Ro * Ri)).num;
        got.insert({n1, n});
    }
    std::set<std::pair<std::int64_t, std::int64_t>> want;
    for (std::int64_t n1 = 6; n1 <= 18; n1 += 3)
        for (std::int64_t n = n1; n <= 18; n += 3) want.insert({n1, n});
    CHECK(got == want);
}
