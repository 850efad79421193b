#include "report.hpp"

#include "ank/ext.hpp"

#include <doctest.h>

#include <map>

using namespace ank;

// H(P; Q^0) is the Adams E_2 page of the sphere with internal degrees doubled.
// The table is the classical chart for internal degree <= 12, s <= 5.
TEST_CASE("Q^0 column reproduces the classical Adams E2 page")
{
    const std::map<std::pair<int, int>, int> classical = {
        {{0, 0}, 1}, {{1, 1}, 1}, {{1, 2}, 1}, {{1, 4}, 1}, {{1, 8}, 1}, {{2, 2}, 1},  {{2, 4}, 1},
        {{2, 5}, 1}, {{2, 8}, 1}, {{2, 9}, 1}, {{2, 10}, 1}, {{3, 3}, 1}, {{3, 6}, 1}, {{3, 10}, 1},
        {{3, 11}, 1}, {{3, 12}, 1}, {{4, 4}, 1}, {{4, 11}, 1}, {{5, 5}, 1},
    };
    ExtEngine& e = shared_workspace().sphere().engine();
    for (int s = 0; s <= 5; ++s)
        for (int t = s; t <= 12; ++t) {
            const auto it = classical.find({s, t});
            INFO("s=" << s << " internal degree " << t);
            CHECK(e.dimension(s, 0, 2 * t) == (it == classical.end() ? 0 : it->second));
        }
}

TEST_CASE("q0 powers span the zero stem")
{
    ExtEngine& e = shared_workspace().sphere().engine();
    for (int t = 0; t <= 6; ++t) {
        const auto z = q0_power(e.algebroid(), t);
        CHECK(e.is_cocycle(z));
        CHECK_FALSE(e.express(z).is_zero());
    }
}

TEST_CASE("h0 h1 vanishes and h1 cubed equals h0 squared h2")
{
    ExtEngine& e = shared_workspace().sphere().engine();
    const auto& pq = e.algebroid();
    const auto h0 = e.express(h_cochain(pq, 0)), h1 = e.express(h_cochain(pq, 1)), h2 = e.express(h_cochain(pq, 2));
    CHECK(e.product(h0, h1).is_zero());
    CHECK(e.product(e.product(h1, h1), h1) == e.product(e.product(h0, h0), h2));
    CHECK_FALSE(e.product(h2, h2).is_zero());
}
