#include "ank/linalg.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace ank;

namespace {

BitMatrix random_matrix(std::mt19937_64& g, std::size_t rows, std::size_t cols)
{
    BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m.set(r, c, g() & 1U);
    return m;
}

// Rank as log2 of the size of the row span, enumerated exhaustively.
std::size_t span_rank(const BitMatrix& m)
{
    std::set<std::vector<std::uint64_t>> span;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m.rows()); ++mask) {
        BitVec v(m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            if ((mask >> r) & 1U)
                v ^= m.row(r);
        span.insert(v.words());
    }
    std::size_t k = 0;
    while ((std::size_t{1} << k) < span.size())
        ++k;
    return k;
}

}  // namespace

TEST_CASE("rank agrees with the size of the row span")
{
    std::mt19937_64 g(7);
    for (int i = 0; i < 60; ++i) {
        const auto m = random_matrix(g, 1 + g() % 9, 1 + g() % 70);
        CHECK(rank(m) == span_rank(m));
    }
}

TEST_CASE("kernel vectors are annihilated and count the free columns")
{
    std::mt19937_64 g(11);
    for (int i = 0; i < 40; ++i) {
        const auto m = random_matrix(g, 1 + g() % 12, 1 + g() % 100);
        const auto ker = kernel(m);
        CHECK(ker.size() == m.cols() - rank(m));
        for (const auto& x : ker)
            CHECK_FALSE(m.apply(x).any());
    }
}

TEST_CASE("solve finds preimages of images and rejects vectors outside the image")
{
    std::mt19937_64 g(13);
    for (int i = 0; i < 40; ++i) {
        const auto m = random_matrix(g, 8, 5);
        BitVec x(5);
        for (std::size_t j = 0; j < 5; ++j)
            x.set(j, g() & 1U);
        const auto y = m.apply(x);
        const auto sol = solve(m, y);
        REQUIRE(sol);
        CHECK(m.apply(*sol) == y);
    }
    BitMatrix z(2, 2);
    BitVec e(2);
    e.set(0);
    CHECK_FALSE(solve(z, e));
}

TEST_CASE("row reducer tracks the combination it subtracts")
{
    RowReducer rr(4, true);
    BitVec a(4), b(4);
    a.set(0);
    a.set(1);
    b.set(1);
    b.set(2);
    CHECK(rr.insert(a));
    CHECK(rr.insert(b));
    BitVec c = a;
    c ^= b;
    BitVec relation;
    CHECK_FALSE(rr.insert(c, &relation));
    CHECK(relation.get(0));
    CHECK(relation.get(1));
    CHECK(relation.get(2));
}

TEST_CASE("tau polynomial arithmetic")
{
    const TauPoly t = TauPoly::tau_pow(1), one = TauPoly::one();
    const TauPoly p = (t + one) * (t + one);  // tau^2 + 1 in characteristic 2
    CHECK(p == TauPoly::tau_pow(2) + one);
    const auto [q, rem] = p.divmod(t + one);
    CHECK(q == t + one);
    CHECK(rem.is_zero());
    CHECK(gcd(TauPoly::tau_pow(3), TauPoly::tau_pow(5)) == TauPoly::tau_pow(3));
    CHECK_THROWS(one.divmod(TauPoly{}));
}

TEST_CASE("Smith normal form of a disguised diagonal matrix")
{
    const TauPoly t = TauPoly::tau_pow(1), one = TauPoly::one();
    // diag(tau^2, tau) conjugated by unimodular matrices.
    const TauMatrix d = {{TauPoly::tau_pow(2), {}}, {{}, t}};
    const TauMatrix u = {{one, t}, {{}, one}};
    const TauMatrix v = {{one, {}}, {t + one, one}};
    const TauMatrix m = tau_mul(tau_mul(u, d), v);
    const auto snf = snf_tau(m);
    REQUIRE(snf.diagonal.size() == 2);
    CHECK(snf.diagonal[0] == t);
    CHECK(snf.diagonal[1] == TauPoly::tau_pow(2));
    const auto prod = tau_mul(tau_mul(snf.left, m), snf.right);
    CHECK(prod[0][0] == t);
    CHECK(prod[1][1] == TauPoly::tau_pow(2));
    CHECK(prod[0][1].is_zero());
    CHECK(prod[1][0].is_zero());
}
