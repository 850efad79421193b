#include "ank/grading.hpp"

#include <doctest.h>

#include <vector>

using namespace ank;

namespace {

// Partitions of n into parts 2^i - 1 with i >= first.
long partitions(int n, int first)
{
    std::vector<long> ways(static_cast<std::size_t>(n) + 1, 0);
    ways[0] = 1;
    for (int i = first; (1 << i) - 1 <= n; ++i) {
        const int part = (1 << i) - 1;
        if (part == 0)
            continue;
        for (int k = part; k <= n; ++k)
            ways[static_cast<std::size_t>(k)] += ways[static_cast<std::size_t>(k - part)];
    }
    return ways[static_cast<std::size_t>(n)];
}

}  // namespace

TEST_CASE("basis of F2[zeta_1, zeta_2, ...] is counted by partitions")
{
    const auto ctx = make_context({FamilyId::Zeta}, 40);
    for (int u = 0; u <= 40; ++u) {
        const auto basis = enumerate_basis(*ctx, u);
        CHECK(static_cast<long>(basis.size()) == (u % 2 ? 0 : partitions(u / 2, 1)));
        for (const auto& m : basis)
            CHECK(ctx->degree(m) == u);
    }
}

TEST_CASE("generator degrees")
{
    const GeneratorFamily zeta{FamilyId::Zeta}, tau{FamilyId::Tau}, xi{FamilyId::Xi};
    CHECK(zeta.degree(1) == 2);
    CHECK(zeta.degree(3) == 14);
    CHECK(tau.degree(0) == 1);
    CHECK(tau.degree(2) == 7);
    CHECK(tau.weight(2) == 3);
    CHECK(xi.degree(1) == 2);
    CHECK(xi.weight(1) == 1);
    CHECK(zeta.truncation_index(14) == 3);
    CHECK(zeta.truncation_index(13) == 2);
}

TEST_CASE("stem is u - s")
{
    const MultiDegree d{3, 1, 16, 7};
    CHECK(d.stem() == 13);
    const auto e = d + MultiDegree{1, 0, 2, 1};
    CHECK(e == MultiDegree{4, 1, 18, 8});
}
