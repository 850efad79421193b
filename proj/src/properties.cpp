#include "ank/cache.hpp"
#include "ank/charts.hpp"
#include "ank/suites.hpp"

#include <chrono>
#include <fstream>
#include <numeric>
#include <fmt/format.h>
#include <random>
#include <set>
#include <unistd.h>

namespace ank {

namespace {

using Result = std::pair<bool, std::string>;

template <class F>
void check(SuiteReport& r, const std::string& name, F&& f)
{
    try {
        auto [ok, detail] = f();
        r.add(name, ok, detail);
    } catch (const Error& e) {
        r.checks.push_back({name, false, e.what(), e.kind()});
    }
}

// Fixed seed: the suite is itself subject to the determinism property.
std::mt19937_64& rng()
{
    static std::mt19937_64 g(0x5eed);
    return g;
}

int pick(int n)
{
    return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng()));
}

// ---- grading ----------------------------------------------------------------

// Number of monomials of F_2[q_0, q_1, ...] with exponent sum t and degree u,
// by a stars-and-bars recursion over generators (independent of enumerate_basis).
long count_q_monomials(int t, int u, int first = 0)
{
    const int deg = GeneratorFamily{FamilyId::Q}.degree(first);
    if (deg > u)
        return (t == 0 && u == 0) ? 1 : 0;
    if (deg == 0) {
        long n = 0;
        for (int k = 0; k <= t; ++k)
            n += count_q_monomials(t - k, u, first + 1);
        return n;
    }
    long n = 0;
    for (int k = 0; k <= t && k * deg <= u; ++k)
        n += count_q_monomials(t - k, u - k * deg, first + 1);
    return n;
}

template <class C>
Polynomial<C> random_poly(const RingContextPtr& ctx, int max_u, std::function<C()> coef)
{
    Polynomial<C> p(ctx);
    for (int i = 0; i < 4; ++i) {
        const int u = 2 * pick(max_u / 2 + 1);
        const auto basis = enumerate_basis(*ctx, u, ctx->families().front() == FamilyId::Q ? std::optional<int>(pick(3)) : std::nullopt);
        if (!basis.empty())
            p.add(basis[static_cast<std::size_t>(pick(static_cast<int>(basis.size())))], coef());
    }
    return p;
}

void grading_checks(SuiteReport& r)
{
    check(r, "enumerated bases have the requested degree", [&]() -> Result {
        const auto q = make_context({FamilyId::Q}, 24);
        const auto z = make_context({FamilyId::Zeta}, 24);
        for (int u = 0; u <= 24; ++u) {
            for (int t = 0; t <= 8; ++t)
                for (const auto& m : enumerate_basis(*q, u, t))
                    if (q->degree(m) != u || m.deg != u || q->family_exponent(m, FamilyId::Q) != t)
                        return {false, q->format(m)};
            for (const auto& m : enumerate_basis(*z, u))
                if (z->degree(m) != u)
                    return {false, z->format(m)};
        }
        return {true, ""};
    });
    check(r, "basis sizes of Q^t match the generating function", [&]() -> Result {
        const auto q = make_context({FamilyId::Q}, 24);
        for (int u = 0; u <= 24; ++u)
            for (int t = 0; t <= 8; ++t) {
                const long want = count_q_monomials(t, u);
                const long got = static_cast<long>(enumerate_basis(*q, u, t).size());
                if (got != want)
                    return {false, fmt::format("t={} u={}: {} vs {}", t, u, got, want)};
            }
        return {true, ""};
    });
    check(r, "poly_mul associative and commutative", [&]() -> Result {
        const auto v = make_context({FamilyId::V}, 24);
        std::function<LocalRational()> c = [] { return LocalRational(pick(7) - 3); };
        for (int i = 0; i < 30; ++i) {
            const auto a = random_poly<LocalRational>(v, 8, c), b = random_poly<LocalRational>(v, 8, c),
                       d = random_poly<LocalRational>(v, 8, c);
            if (!((a * b) * d == a * (b * d)) || !(a * b == b * a))
                return {false, fmt::format("{} ; {} ; {}", a.str(), b.str(), d.str())};
        }
        return {true, "30 triples"};
    });
    check(r, "nu2 is additive", [&]() -> Result {
        for (int i = 0; i < 200; ++i) {
            const long n1 = pick(200) - 100, n2 = pick(200) - 100;
            if (n1 == 0 || n2 == 0)
                continue;
            const auto a = localrat_normalize(n1, 2 * pick(20) + 1), b = localrat_normalize(n2, 2 * pick(20) + 1);
            if ((a * b).nu2() != a.nu2() + b.nu2())
                return {false, fmt::format("{} {}", a.str(), b.str())};
        }
        return {true, ""};
    });
}

// ---- Hopf structures --------------------------------------------------------------

using Triple = std::tuple<Monomial, Monomial, Monomial, Monomial>;  // prefix, left, middle, right

template <class C, class Diag>
Result coassociative(const std::vector<Monomial>& monomials, Diag&& diagonal)
{
    for (const auto& m : monomials) {
        std::map<Triple, C> lhs, rhs;
        std::map<std::pair<Monomial, Monomial>, C> left_counit, right_counit;
        for (const auto& d : diagonal(m)) {
            for (const auto& e : diagonal(d.left))
                lhs[{d.prefix * e.prefix, e.left, e.right, d.right}] += d.coef * e.coef;
            for (const auto& e : diagonal(d.right))
                rhs[{d.prefix * e.prefix, d.left, e.left, e.right}] += d.coef * e.coef;
            if (d.left.is_one())
                left_counit[{d.prefix, d.right}] += d.coef;
            if (d.right.is_one())
                right_counit[{d.prefix, d.left}] += d.coef;
        }
        std::erase_if(lhs, [](const auto& x) { return x.second.is_zero(); });
        std::erase_if(rhs, [](const auto& x) { return x.second.is_zero(); });
        std::erase_if(left_counit, [](const auto& x) { return x.second.is_zero(); });
        std::erase_if(right_counit, [](const auto& x) { return x.second.is_zero(); });
        const std::map<std::pair<Monomial, Monomial>, C> id{{{Monomial{}, m}, C::from_int(1)}};
        if (lhs != rhs)
            return {false, "coassociativity fails"};
        if (left_counit != id || right_counit != id)
            return {false, "counit fails"};
    }
    return {true, fmt::format("{} monomials", monomials.size())};
}

template <class C>
using UnitMap = std::map<std::pair<Monomial, Monomial>, C>;

template <class C>
UnitMap<C> as_map(const std::vector<UnitTerm<C>>& terms)
{
    UnitMap<C> m;
    for (const auto& u : terms)
        m[{u.prefix, u.slot}] += u.coef;
    std::erase_if(m, [](const auto& x) { return x.second.is_zero(); });
    return m;
}

template <class C>
UnitMap<C> times(const UnitMap<C>& a, const UnitMap<C>& b)
{
    UnitMap<C> m;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b)
            m[{ka.first * kb.first, ka.second * kb.second}] += ca * cb;
    std::erase_if(m, [](const auto& x) { return x.second.is_zero(); });
    return m;
}

std::vector<Monomial> basis_upto(const RingContext& ctx, int max_u, std::optional<int> t = std::nullopt)
{
    std::vector<Monomial> out;
    for (int u = 0; u <= max_u; ++u)
        for (const auto& m : enumerate_basis(ctx, u, t))
            out.push_back(m);
    return out;
}

void hopf_checks(SuiteReport& r, NovikovLayer& S)
{
    check(r, "P coassociative and counital", [&]() -> Result {
        const PStructure& p = S.pq().coaction().p();
        return coassociative<F2>(basis_upto(*p.zeta(), 16), [&](const Monomial& m) -> const auto& { return p.diagonal(m); });
    });
    check(r, "A_Mot coassociative and counital", [&]() -> Result {
        const AMotStructure a(12);
        std::vector<Monomial> ms;
        for (int u = 0; u <= 12; ++u)
            for (const auto& m : a.basis(u))
                ms.push_back(m);
        return coassociative<F2>(ms, [&](const Monomial& m) -> const auto& { return a.diagonal(m); });
    });
    check(r, "BP_*BP coassociative (d^2 = 0 on words of length <= 2)", [&]() -> Result {
        const BPAlgebroid& bp = S.bp();
        int n = 0;
        for (int s = 1; s <= 2; ++s)
            for (int u = 2; u <= 12; u += 2)
                for (const auto& w : enumerate_words(*bp.word_ctx(), s, u)) {
                    Cochain<LocalRational> z(bp.prefix_ctx(), bp.word_ctx());
                    z.add(Monomial{}, w, LocalRational(1));
                    ++n;
                    if (!differential(bp, differential(bp, z)).is_zero())
                        return {false, z.str()};
                }
        return {true, fmt::format("{} words", n)};
    });
    check(r, "eta_R is a ring map on 100 random pairs", [&]() -> Result {
        const BPStructure& bp = S.bp().structure();
        const auto ms = basis_upto(*bp.v(), 12);
        for (int i = 0; i < 100; ++i) {
            const Monomial& a = ms[static_cast<std::size_t>(pick(static_cast<int>(ms.size())))];
            const Monomial& b = ms[static_cast<std::size_t>(pick(static_cast<int>(ms.size())))];
            if (as_map(bp.right_unit(a * b)) != times(as_map(bp.right_unit(a)), as_map(bp.right_unit(b))))
                return {false, fmt::format("{} * {}", bp.v()->format(a), bp.v()->format(b))};
        }
        return {true, ""};
    });
    check(r, "counit of eta_R is the identity", [&]() -> Result {
        const BPStructure& bp = S.bp().structure();
        for (const auto& m : basis_upto(*bp.v(), 24)) {
            UnitMap<LocalRational> slot0;
            for (const auto& u : bp.right_unit(m))
                if (u.slot.is_one())
                    slot0[{u.prefix, u.slot}] += u.coef;
            std::erase_if(slot0, [](const auto& x) { return x.second.is_zero(); });
            if (slot0 != UnitMap<LocalRational>{{{m, Monomial{}}, LocalRational(1)}})
                return {false, bp.v()->format(m)};
        }
        return {true, ""};
    });
    check(r, "m_in_v o v_in_m = id", [&]() -> Result {
        const BPStructure& bp = S.bp().structure();
        for (int n = 1; n <= bp.v()->truncation_index(FamilyId::V); ++n)
            if (!(bp.to_v_basis(bp.v_in_m(n)) == PolyQ::generator(bp.v(), FamilyId::V, n)))
                return {false, fmt::format("v{}", n)};
        return {true, ""};
    });
    check(r, "coaction of Q is an algebra map", [&]() -> Result {
        const QCoaction& q = S.pq().coaction();
        std::vector<Monomial> pool;
        for (int t = 0; t <= 3; ++t)
            for (const auto& m : basis_upto(*q.q(), 10, t))
                pool.push_back(m);
        for (int i = 0; i < 100; ++i) {
            const Monomial& a = pool[static_cast<std::size_t>(pick(static_cast<int>(pool.size())))];
            const Monomial& b = pool[static_cast<std::size_t>(pick(static_cast<int>(pool.size())))];
            if (as_map(q.coaction(a * b)) != times(as_map(q.coaction(a)), as_map(q.coaction(b))))
                return {false, fmt::format("{} * {}", q.q()->format(a), q.q()->format(b))};
        }
        return {true, ""};
    });
}

// ---- cobar -------------------------------------------------------------------

// Elements c * v^a [t-word] of the BP cobar complex, c in {1, 2}.
std::vector<Cochain<LocalRational>> bp_samples(const BPAlgebroid& bp, int max_u)
{
    std::vector<Cochain<LocalRational>> out;
    for (int s = 0; s <= 2; ++s)
        for (int a = 0; a <= max_u; a += 2)
            for (int b = 2 * s; a + b <= max_u; b += 2)
                for (const auto& m : enumerate_basis(*bp.prefix_ctx(), a))
                    for (const auto& w : enumerate_words(*bp.word_ctx(), s, b))
                        for (long c : {1L, 2L}) {
                            Cochain<LocalRational> z(bp.prefix_ctx(), bp.word_ctx());
                            z.add(m, w, LocalRational(c));
                            out.push_back(std::move(z));
                        }
    return out;
}

void cobar_checks(SuiteReport& r, NovikovLayer& S)
{
    ExtEngine& E = S.engine();
    check(r, "d^2 = 0 on every block of Omega(P;Q), u <= 16", [&]() -> Result {
        int n = 0;
        for (int u = 0; u <= 16; u += 2)
            for (int t = 0; t <= 6; ++t)
                for (int s = 0; 2 * (s + 2) <= u + 4 && s <= 6; ++s) {
                    const auto& a = E.block(s, t, u);
                    const auto& b = E.block(s + 1, t, u);
                    const auto& c = E.block(s + 2, t, u);
                    ++n;
                    if (!(differential_rows(a, b.size()) * differential_rows(b, c.size())).is_zero())
                        return {false, fmt::format("({},{},{})", s, t, u)};
                }
        return {true, fmt::format("{} blocks", n)};
    });
    const auto samples = bp_samples(S.bp(), 10);
    check(r, "d^2 = 0 and filtration preserved in the BP cobar complex", [&]() -> Result {
        for (const auto& x : samples) {
            const auto dx = differential(S.bp(), x);
            if (!differential(S.bp(), dx).is_zero())
                return {false, "d^2 on " + x.str()};
            if (filtration(S.bp(), dx) < filtration(S.bp(), x))
                return {false, "filtration drops on " + x.str()};
        }
        return {true, fmt::format("{} elements", samples.size())};
    });
    check(r, "gr is a chain map", [&]() -> Result {
        int used = 0;
        for (const auto& x : samples) {
            const int f = filtration(S.bp(), x);
            const auto dx = differential(S.bp(), x);
            const auto lhs = filtration(S.bp(), dx) == f ? gr_project(S.bp(), S.pq(), dx, f) : Cochain<F2>(S.pq().prefix_ctx(), S.pq().word_ctx());
            const auto rhs = differential(S.pq(), gr_project(S.bp(), S.pq(), x, f));
            ++used;
            if (!(lhs == rhs))
                return {false, x.str()};
        }
        return {true, fmt::format("{} elements", used)};
    });
    check(r, "canonicalize commutes with d", [&]() -> Result {
        for (const auto& x : samples)
            if (!(differential(S.bp(), canonicalize(S.bp(), x)) == canonicalize(S.bp(), differential(S.bp(), x))))
                return {false, x.str()};
        return {true, ""};
    });
    check(r, "reduction mod 2 commutes with d", [&]() -> Result {
        for (const auto& x : samples)
            if (!(reduce_mod2(differential(S.bp(), x)) == differential(S.bp_mod2(), reduce_mod2(x))))
                return {false, x.str()};
        return {true, ""};
    });
    check(r, "split_lift is a section of gr", [&]() -> Result {
        int n = 0;
        for (int u = 0; u <= 12; u += 2)
            for (int s = 0; s <= 2; ++s)
                for (int t = 0; t <= 3; ++t)
                    for (const auto& k : pq_basis(S.pq(), s, t, u)) {
                        Cochain<F2> z(S.pq().prefix_ctx(), S.pq().word_ctx());
                        z.add(k, F2::one());
                        ++n;
                        if (!(gr_project(S.bp(), S.pq(), split_lift(S.bp(), z), t) == z))
                            return {false, z.str()};
                    }
        return {true, fmt::format("{} monomials", n)};
    });
}

// ---- linear algebra ------------------------------------------------------------

BitMatrix random_matrix(std::size_t rows, std::size_t cols)
{
    BitMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.set(i, j, pick(3) == 0);
    return m;
}

TauPoly det(const TauMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols)
{
    if (rows.size() == 1)
        return m[static_cast<std::size_t>(rows[0])][static_cast<std::size_t>(cols[0])];
    TauPoly sum;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        std::vector<int> r(rows.begin() + 1, rows.end()), c = cols;
        c.erase(c.begin() + static_cast<std::ptrdiff_t>(j));
        sum = sum + m[static_cast<std::size_t>(rows[0])][static_cast<std::size_t>(cols[j])] * det(m, r, c);
    }
    return sum;
}

void subsets(int n, int k, std::vector<int>& cur, int from, std::vector<std::vector<int>>& out)
{
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = from; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, cur, i + 1, out);
        cur.pop_back();
    }
}

void linalg_checks(SuiteReport& r)
{
    check(r, "rref is idempotent and rank + nullity = cols", [&]() -> Result {
        for (int i = 0; i < 50; ++i) {
            const auto m = random_matrix(static_cast<std::size_t>(1 + pick(12)), static_cast<std::size_t>(1 + pick(12)));
            const auto a = rref(m);
            if (!(rref(a.reduced).reduced == a.reduced))
                return {false, "rref not idempotent"};
            if (rank(m) + kernel(m).size() != m.cols())
                return {false, "rank-nullity"};
        }
        return {true, "50 matrices"};
    });
    check(r, "snf_tau invariant factors match gcds of minors", [&]() -> Result {
        for (int i = 0; i < 40; ++i) {
            const int n = 1 + pick(3), k = 1 + pick(3);
            TauMatrix m(static_cast<std::size_t>(n), std::vector<TauPoly>(static_cast<std::size_t>(k)));
            for (auto& row : m)
                for (auto& x : row)
                    x = pick(3) == 0 ? TauPoly() : TauPoly(static_cast<std::uint64_t>(1 + pick(7)));
            const auto snf = snf_tau(m, false);
            TauPoly prod = TauPoly::one();
            for (int j = 1; j <= std::min(n, k); ++j) {
                std::vector<std::vector<int>> rs, cs;
                std::vector<int> cur;
                subsets(n, j, cur, 0, rs);
                subsets(k, j, cur, 0, cs);
                TauPoly g;
                for (const auto& a : rs)
                    for (const auto& b : cs)
                        g = gcd(g, det(m, a, b));
                prod = static_cast<std::size_t>(j) <= snf.diagonal.size() ? prod * snf.diagonal[static_cast<std::size_t>(j - 1)] : TauPoly();
                if (!(g == prod))
                    return {false, fmt::format("{}x{} matrix, k = {}", n, k, j)};
            }
        }
        return {true, "40 matrices"};
    });
}

// ---- ext engine ------------------------------------------------------------------

void ext_checks(SuiteReport& r, NovikovLayer& S)
{
    ExtEngine& E = S.engine();
    const PQAlgebroid& pq = S.pq();
    check(r, "representatives are independent cocycles", [&]() -> Result {
        int n = 0;
        for (int u = 0; u <= 16; u += 2)
            for (int s = 0; s <= 5; ++s)
                for (int t = 0; t <= 5; ++t) {
                    const ExtBlock& b = E.ext(s, t, u);
                    RowReducer red = b.boundaries;
                    for (std::size_t i = 0; i < b.representatives.size(); ++i) {
                        ++n;
                        if (!E.is_cocycle(b.representatives[i]) || !red.insert(b.rep_vectors[i]))
                            return {false, fmt::format("({},{},{}) #{}", s, t, u, i)};
                    }
                }
        return {true, fmt::format("{} representatives", n)};
    });
    check(r, "blocks with u < 2s are empty", [&]() -> Result {
        for (int s = 1; s <= 8; ++s)
            for (int u = 0; u < 2 * s; ++u)
                for (int t = 0; t <= 4; ++t)
                    if (E.block(s, t, u).size() != 0)
                        return {false, fmt::format("({},{},{})", s, t, u)};
        return {true, ""};
    });
    std::vector<ExtClass> pool{E.express(h_cochain(pq, 0)), E.express(h_cochain(pq, 1)), E.express(h_cochain(pq, 2)),
                               E.express(q0_power(pq, 1))};
    const auto items = pq_permanent_cocycles(pq);
    pool.push_back(E.express(items[2]));
    pool.push_back(E.express(items[3]));
    auto fits = [](const MultiDegree& d) { return d.u <= 20 && d.s <= 6 && d.t <= 6; };
    check(r, "product commutative and associative", [&]() -> Result {
        int n = 0;
        for (int i = 0; i < 60; ++i) {
            const auto& a = pool[static_cast<std::size_t>(pick(static_cast<int>(pool.size())))];
            const auto& b = pool[static_cast<std::size_t>(pick(static_cast<int>(pool.size())))];
            const auto& c = pool[static_cast<std::size_t>(pick(static_cast<int>(pool.size())))];
            if (!fits(a.degree + b.degree + c.degree))
                continue;
            ++n;
            if (!(E.product(a, b) == E.product(b, a)) || !(E.product(E.product(a, b), c) == E.product(a, E.product(b, c))))
                return {false, "triple " + to_string(a.degree) + to_string(b.degree) + to_string(c.degree)};
        }
        return {n > 0, fmt::format("{} triples", n)};
    });
    check(r, "Massey products independent of the defining system", [&]() -> Result {
        const ExtClass h0 = pool[0], h1 = pool[1], q0 = pool[3];
        const ExtClass q0sq = E.express(q0_power(pq, 2));
        const ExtClass h1sq = E.product(h1, h1);
        int n = 0;
        for (auto [a, b, c] : std::vector<std::tuple<ExtClass, ExtClass, ExtClass>>{{h1, q0sq, h0}, {h0, q0, h1sq}}) {
            const MasseyCoset coset = E.massey(a, b, c);
            const auto ra = E.representative(a), rb = E.representative(b), rc = E.representative(c);
            const auto ab = product(pq, ra, rb), bc = product(pq, rb, rc);
            const auto x = ab.is_zero() ? E.zero() : *E.solve_coboundary(ab);
            const auto y = bc.is_zero() ? E.zero() : *E.solve_coboundary(bc);
            // Alternative defining systems: add cocycles of the same degree to x and y.
            const MultiDegree dx = a.degree + b.degree, dy = b.degree + c.degree;
            std::vector<Cochain<F2>> xs{x}, ys{y};
            for (const auto& z : E.ext(dx.s - 1, dx.t, dx.u).representatives)
                xs.push_back(x + z);
            for (const auto& z : E.ext(dy.s - 1, dy.t, dy.u).representatives)
                ys.push_back(y + z);
            for (const auto& xx : xs)
                for (const auto& yy : ys) {
                    ++n;
                    const auto m = product(pq, xx, rc) + product(pq, ra, yy);
                    if (!coset.contains(E.express(m, coset.representative.degree)))
                        return {false, "outside the coset"};
                }
        }
        return {true, fmt::format("{} defining systems", n)};
    });
}

// ---- algebraic Novikov --------------------------------------------------------------

void novikov_checks(SuiteReport& r, NovikovLayer& S)
{
    ExtEngine& E = S.engine();
    const PQAlgebroid& pq = S.pq();
    std::vector<ExtClass> classes;
    for (int u = 0; u <= 14; u += 2)
        for (int s = 0; s <= 4; ++s)
            for (int t = 0; t <= 3; ++t)
                for (int i = 0; i < E.dimension(s, t, u); ++i)
                    classes.push_back(E.basis_class(s, t, u, i));
    check(r, "d1 independent of the representative", [&]() -> Result {
        for (const auto& x : classes) {
            const MultiDegree d = x.degree;
            if (d.s == 0)
                continue;
            const ComplexBlock& below = E.block(d.s - 1, d.t, d.u);
            BitVec v(below.size());
            for (std::size_t j = 0; j < v.size(); ++j)
                v.set(j, pick(2) == 1);
            const auto y = from_vector(below, v, pq.prefix_ctx(), pq.word_ctx());
            if (!(S.d1_of_cocycle(E.representative(x) + differential(pq, y)) == S.d1(x)))
                return {false, to_string(d)};
        }
        return {true, fmt::format("{} classes", classes.size())};
    });
    check(r, "d1 o d1 = 0", [&]() -> Result {
        for (const auto& x : classes)
            if (!S.d1(S.d1(x)).is_zero())
                return {false, to_string(x.degree)};
        return {true, ""};
    });
    check(r, "d1 is h0-linear", [&]() -> Result {
        const ExtClass h0 = E.express(h_cochain(pq, 0));
        for (const auto& x : classes)
            if (!(S.d1(E.product(x, h0)) == E.product(S.d1(x), h0)))
                return {false, to_string(x.degree)};
        return {true, ""};
    });
    check(r, "localized E1 equals the Margolis prediction (u <= 16)", [&]() -> Result {
        Region reg;
        reg.max_s = 8;
        reg.max_t = 6;
        reg.max_u = 16;
        int n = 0;
        for (const auto& [k, g] : S.localize_h0(reg))
            if (g.certified) {
                ++n;
                if (g.dimension_P != g.predicted)
                    return {false, fmt::format("({},{},{})", std::get<0>(k), std::get<1>(k), std::get<2>(k))};
            }
        return {n > 0, fmt::format("{} certified", n)};
    });
}

// ---- motivic ----------------------------------------------------------------------

using Exps = LaurentDGA::Exponents;

std::map<Exps, int> as_sum(const std::vector<Exps>& x)
{
    std::map<Exps, int> m;
    for (const auto& e : x)
        m[e] ^= 1;
    std::erase_if(m, [](const auto& y) { return y.second == 0; });
    return m;
}

std::optional<Exps> multiply(const LaurentDGA& dga, const Exps& a, const Exps& b)
{
    Exps c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        c[i] = a[i] + b[i];
        if (i > 0) {
            const int cap = dga.generators()[i - 1].max_exponent;
            if (cap >= 0 && c[i] > cap)
                return std::nullopt;
        }
    }
    return c;
}

std::vector<Exps> times(const LaurentDGA& dga, const std::vector<Exps>& x, const Exps& b)
{
    std::vector<Exps> out;
    for (const auto& a : x)
        if (auto c = multiply(dga, a, b))
            out.push_back(*c);
    return out;
}

Result leibniz(const LaurentDGA& dga)
{
    std::vector<Exps> pool;
    for (int i = 0; i < 30; ++i) {
        Exps e(dga.arity() + 1, 0);
        e[0] = pick(5) - 2;
        for (std::size_t j = 1; j < e.size(); ++j) {
            const int cap = dga.generators()[j - 1].max_exponent;
            e[j] = pick(cap >= 0 ? cap + 1 : 3);
        }
        pool.push_back(e);
    }
    for (const auto& a : pool) {
        if (!dga.apply(dga.apply(a)).empty() && !as_sum(dga.apply(dga.apply(a))).empty())
            return {false, "d^2 on " + dga.format(a)};
        for (const auto& b : pool) {
            const auto ab = multiply(dga, a, b);
            const auto lhs = ab ? as_sum(dga.apply(*ab)) : std::map<Exps, int>{};
            auto rhs_terms = times(dga, dga.apply(a), b);
            for (const auto& t : times(dga, dga.apply(b), a))
                rhs_terms.push_back(t);
            if (lhs != as_sum(rhs_terms))
                return {false, "Leibniz on " + dga.format(a) + " * " + dga.format(b)};
        }
    }
    return {true, fmt::format("{} pairs", pool.size() * pool.size())};
}

TauModule sorted(TauModule m)
{
    std::sort(m.free_weights.begin(), m.free_weights.end());
    std::sort(m.torsion.begin(), m.torsion.end());
    return m;
}

void motivic_checks(SuiteReport& r, NovikovLayer& S)
{
    check(r, "tau extension preserves weight and has even u", [&]() -> Result {
        Region reg = Workspace::figure_region();
        const SSDataset ext = tau_extend(novikov_chart_dataset(S, reg), 4);
        for (const auto& c : ext.classes)
            if (c.degree.u % 2 != 0)
                return {false, "odd u"};
        for (const auto& a : ext.arrows)
            if (ext.classes[a.source].degree.w != ext.classes[a.target].degree.w)
                return {false, "weight changes"};
        return {!ext.arrows.empty(), fmt::format("{} classes, {} arrows", ext.classes.size(), ext.arrows.size())};
    });
    check(r, "tau extension rejects odd u", [&]() -> Result {
        SSDataset ds;
        ds.classes.push_back({MultiDegree{1, 0, 3, std::nullopt}, "", false, false});
        try {
            tau_extend(ds, 1);
        } catch (const GradingError&) {
            return {true, ""};
        }
        return {false, "accepted u = 3"};
    });
    check(r, "Leibniz and d^2 = 0 on the localized motivic pages", [&]() -> Result {
        for (const auto& dga : {localized_adams_e2(12, true), localized_manss_e3()}) {
            auto res = leibniz(dga);
            if (!res.first)
                return res;
        }
        return {true, ""};
    });
    check(r, "tau-module decomposition invariant under basis permutation", [&]() -> Result {
        const AMotAlgebroid a(std::make_shared<AMotStructure>(8));
        int n = 0;
        for (int u = 1; u <= 8; ++u) {
            const TauComplex c = cobar_tau_complex(a, u, 4);
            std::vector<std::vector<int>> perm(static_cast<std::size_t>(c.levels()));
            TauComplex p;
            for (int s = 0; s < c.levels(); ++s) {
                auto& pi = perm[static_cast<std::size_t>(s)];
                pi.resize(c.weights(s).size());
                std::iota(pi.begin(), pi.end(), 0);
                std::shuffle(pi.begin(), pi.end(), rng());
                std::vector<int> w(pi.size());
                for (std::size_t i = 0; i < pi.size(); ++i)
                    w[static_cast<std::size_t>(pi[i])] = c.weights(s)[i];
                p.add_level(w);
            }
            for (int s = 0; s + 1 < c.levels(); ++s) {
                const auto& pi = perm[static_cast<std::size_t>(s)];
                const auto& next = perm[static_cast<std::size_t>(s) + 1];
                std::vector<std::vector<int>> d(pi.size());
                for (std::size_t i = 0; i < pi.size(); ++i) {
                    auto& row = d[static_cast<std::size_t>(pi[i])];
                    for (int j : c.d_out(s)[i])
                        row.push_back(next[static_cast<std::size_t>(j)]);
                    std::sort(row.begin(), row.end());
                }
                p.set_differential(s, d);
            }
            for (int s = 0; s <= 4; ++s) {
                const TauModule x = sorted(c.module(s)), y = sorted(p.module(s));
                ++n;
                if (x.free_weights != y.free_weights || x.torsion != y.torsion)
                    return {false, fmt::format("(s={}, u={})", s, u)};
            }
        }
        return {true, fmt::format("{} levels", n)};
    });
}

// ---- charts and cache --------------------------------------------------------------

std::string chart_artifacts(int max_u)
{
    NovikovLayer L(max_u, false);
    const SSDataset ds = novikov_chart_dataset(L, Workspace::figure_region());
    std::string out;
    for (auto p : {Projection::Novikov, Projection::Adams}) {
        ChartSpec spec;
        spec.projection = p;
        out += emit(spec, ds, ChartFormat::Tsv);
        out += emit(spec, ds, ChartFormat::Svg);
    }
    return out;
}

std::filesystem::path scratch_dir(const std::string& tag)
{
    static int serial = 0;
    auto p = std::filesystem::temp_directory_path() / fmt::format("ank-{}-{}-{}", tag, static_cast<long>(::getpid()), serial++);
    std::filesystem::remove_all(p);
    return p;
}

void chart_checks(SuiteReport& r, NovikovLayer& S)
{
    const SSDataset ds = novikov_chart_dataset(S, Workspace::figure_region());
    for (auto p : {Projection::Novikov, Projection::Adams})
        check(r, fmt::format("TSV round trip ({})", to_string(p)), [&]() -> Result {
            ChartSpec spec;
            spec.projection = p;
            const ChartTable t = tabulate(spec, ds);
            return {parse_tsv(emit_tsv(t), p) == t, fmt::format("{} nodes", t.nodes.size())};
        });
    check(r, "d1 arrows have the projected degree", [&]() -> Result {
        int n = 0;
        for (auto p : {Projection::Novikov, Projection::Adams}) {
            ChartSpec spec;
            spec.projection = p;
            const int dy = p == Projection::Novikov ? 1 : 2;
            for (const auto& node : tabulate(spec, ds).nodes)
                for (const auto& e : node.edges)
                    if (e.kind == "d1") {
                        ++n;
                        if (e.x != node.x - 1 || e.y != node.y + dy)
                            return {false, fmt::format("({},{})", node.x, node.y)};
                    }
        }
        return {n > 0, fmt::format("{} arrows", n)};
    });
    check(r, "chart artifacts byte-identical across cold runs", [&]() -> Result {
        const auto a = chart_artifacts(24), b = chart_artifacts(24);
        return {a == b, fmt::format("{} bytes", a.size())};
    });
}

void cache_checks(SuiteReport& r)
{
    RunConfig cfg;
    cfg.max_u = 12;
    Region reg;
    reg.max_s = 4;
    reg.max_t = 4;
    reg.max_u = 12;
    auto table = [&](BlockCache* cache, std::vector<std::string>* warnings = nullptr) {
        NovikovLayer L(cfg.max_u, false, cfg.budget);
        return format_ext_table(ext_region(L.engine(), reg, cache, warnings));
    };
    const auto root = scratch_dir("cache");
    check(r, "cache on/off equivalence, warm reads and corruption recovery", [&]() -> Result {
        const std::string plain = table(nullptr);
        BlockCache cold(root, cfg.hash());
        const std::string first = table(&cold);
        BlockCache warm(root, cfg.hash());
        const std::string second = table(&warm);
        // Flip one byte of a record: it must be discarded and recomputed.
        const auto victim = warm.record_path(1, 0, 2);
        {
            std::fstream f(victim, std::ios::in | std::ios::out | std::ios::binary);
            f.seekp(12);
            f.put('\x7f');
        }
        BlockCache hurt(root, cfg.hash());
        std::vector<std::string> warnings;
        const std::string third = table(&hurt, &warnings);
        const bool ok = plain == first && first == second && second == third && cold.writes > 0 && warm.hits > 0 &&
                        warm.misses == 0 && hurt.corrupt == 1 && warnings.size() == 1;
        return {ok, fmt::format("writes {}, warm hits {}, corrupt {}", cold.writes, warm.hits, hurt.corrupt)};
    });
    check(r, "config hash isolates caches", [&]() -> Result {
        RunConfig other = cfg;
        other.max_u = 14;
        BlockCache b(root, other.hash());
        const bool dir_differs = b.directory() != BlockCache(root, cfg.hash()).directory();
        // A record written under one config is a miss under another, even in the same directory.
        std::filesystem::copy_file(BlockCache(root, cfg.hash()).record_path(1, 0, 2), b.record_path(1, 0, 2),
                                   std::filesystem::copy_options::overwrite_existing);
        const bool miss = !b.load(1, 0, 2).has_value();
        return {dir_differs && miss && other.hash() != cfg.hash(), ""};
    });
    check(r, "cache record round trip", [&]() -> Result {
        NovikovLayer L(12, false);
        int n = 0;
        for (int u = 0; u <= 12; u += 2)
            for (int s = 0; s <= 3; ++s) {
                const ExtBlock& b = L.engine().ext(s, 1, u);
                const auto rec = CacheRecord::from_block(cfg.hash(), b, L.engine().block(s, 1, u).size());
                const auto back = CacheRecord::decode(rec.encode());
                ++n;
                if (!(back == rec) || back.cochains(L.pq()) != b.representatives)
                    return {false, fmt::format("({},1,{})", s, u)};
            }
        return {true, fmt::format("{} blocks", n)};
    });
    std::filesystem::remove_all(root);
}

}  // namespace

SuiteReport suite_properties(Workspace& ws)
{
    SuiteReport r;
    r.suite = "properties";
    const auto t0 = std::chrono::steady_clock::now();
    try {
        NovikovLayer& S = ws.sphere();
        grading_checks(r);
        hopf_checks(r, S);
        cobar_checks(r, S);
        linalg_checks(r);
        ext_checks(r, S);
        novikov_checks(r, S);
        motivic_checks(r, S);
        chart_checks(r, S);
        cache_checks(r);
    } catch (const Error& e) {
        r.checks.push_back({"uncaught", false, e.what(), e.kind()});
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.summary = fmt::format("{}/{} properties hold", r.passed_count(), r.checks.size());
    return r;
}

}  // namespace ank
