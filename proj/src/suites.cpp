#include "ank/suites.hpp"

#include "ank/charts.hpp"

#include <chrono>
#include <fmt/format.h>
#include <set>

namespace ank {

bool SuiteReport::passed() const
{
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

int SuiteReport::passed_count() const
{
    return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; }));
}

void SuiteReport::add(std::string name, bool ok, std::string detail)
{
    checks.push_back({std::move(name), ok, std::move(detail), {}});
}

NovikovLayer& Workspace::sphere()
{
    if (!sphere_)
        sphere_ = std::make_unique<NovikovLayer>(max_u_, false, budget_);
    return *sphere_;
}

NovikovLayer& Workspace::mod2()
{
    if (!mod2_)
        mod2_ = std::make_unique<NovikovLayer>(max_u_, true, budget_);
    return *mod2_;
}

const MotivicAdamsE2& Workspace::motivic_adams()
{
    if (!adams_)
        adams_ = std::make_unique<MotivicAdamsE2>(20, 20);
    return *adams_;
}

const RouteA& Workspace::route_a()
{
    if (!route_a_)
        route_a_ = std::make_unique<RouteA>(run_localized_manss(12, 24));
    return *route_a_;
}

const RouteB& Workspace::route_b()
{
    if (!route_b_)
        route_b_ = std::make_unique<RouteB>(localized_motivic_adams(motivic_adams(), 12, 24));
    return *route_b_;
}

Region Workspace::figure_region()
{
    Region r;
    r.max_s = 8;
    r.max_t = 8;
    r.max_u = 23;
    r.max_stem = 15;
    r.max_s_plus_t = 8;
    return r;
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs `body`, turning an escaped error into a failed check.
template <class F>
SuiteReport run(const std::string& name, F&& body)
{
    SuiteReport r;
    r.suite = name;
    const auto t0 = Clock::now();
    try {
        body(r);
    } catch (const Error& e) {
        r.checks.push_back({"uncaught", false, e.what(), e.kind()});
    } catch (const std::exception& e) {
        r.checks.push_back({"uncaught", false, e.what(), "internal"});
    }
    r.seconds = since(t0);
    if (r.summary.empty())
        r.summary = fmt::format("{}/{} checks passed", r.passed_count(), r.checks.size());
    return r;
}

// Evaluates one check; an exception fails that check only.
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

using Result = std::pair<bool, std::string>;

Monomial qgen(const PQAlgebroid& pq, int i, int e = 1)
{
    return pq.prefix_ctx()->generator(FamilyId::Q, i, e);
}

Monomial zgen(const PQAlgebroid& pq, int i, int e = 1)
{
    return pq.word_ctx()->generator(FamilyId::Zeta, i, e);
}

// Terms of a length-one cochain (or a right unit) as (prefix, slot) -> coefficient.
template <class C>
using UnitMap = std::map<std::pair<Monomial, Monomial>, C>;

template <class C>
UnitMap<C> unit_map(const std::vector<UnitTerm<C>>& terms)
{
    UnitMap<C> m;
    for (const auto& u : terms) {
        auto& x = m[{u.prefix, u.slot}];
        x += u.coef;
        if (x.is_zero())
            m.erase({u.prefix, u.slot});
    }
    return m;
}

template <class C>
UnitMap<C> unit_product(const UnitMap<C>& a, const UnitMap<C>& b)
{
    UnitMap<C> m;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            const std::pair key{ka.first * kb.first, ka.second * kb.second};
            auto& x = m[key];
            x += ca * cb;
            if (x.is_zero())
                m.erase(key);
        }
    return m;
}

// H^{s,u}(P; Q) summed over t <= max_t.
int total_dimension(ExtEngine& e, int s, int u, int max_t)
{
    int n = 0;
    for (int t = 0; t <= max_t; ++t)
        n += e.dimension(s, t, u);
    return n;
}

}  // namespace

// ---- BP cobar cocycles -------------------------------------------------------

SuiteReport suite_lemma61(Workspace&)
{
    return run("lemma61", [](SuiteReport& r) {
        const auto t0 = Clock::now();
        // A small standalone structure keeps this suite independent of the layers.
        const BPAlgebroid bp(std::make_shared<BPStructure>(12));
        const auto items = bp_permanent_cocycles(bp);
        int exact = 0;
        for (std::size_t i = 1; i < items.size(); ++i) {
            const auto d = differential(bp, items[i]);
            const bool ok = d.is_zero();
            exact += ok;
            r.add(fmt::format("d=0 on {}", items[i].str()), ok, ok ? "exact 2-local zero" : "d = " + d.str());
        }
        r.add("unit is a cocycle", differential(bp, items[0]).is_zero());
        const double secs = since(t0);
        r.add("runtime < 1 s", secs < 1.0, fmt::format("{:.3f} s", secs));
        r.summary = fmt::format("{}/3 cocycles exact", exact);
    });
}

// ---- cocycles in Omega(P;Q) and Massey products ----------------------------------

SuiteReport suite_cor62_massey(Workspace& ws)
{
    return run("cor62-massey", [&](SuiteReport& r) {
        const auto t0 = Clock::now();
        NovikovLayer& S = ws.sphere();
        ExtEngine& E = S.engine();
        const PQAlgebroid& pq = S.pq();
        const auto items = pq_permanent_cocycles(pq);
        for (std::size_t i = 0; i < items.size(); ++i)
            check(r, fmt::format("cocycle {}", items[i].str()), [&]() -> Result {
                return {E.is_cocycle(items[i]), ""};
            });
        check(r, "item 1 is the unit", [&]() -> Result { return {E.express(items[0]) == E.basis_class(0, 0, 0, 0), ""}; });
        check(r, "item 2 represents h0", [&]() -> Result {
            return {E.express(items[1]) == E.express(h_cochain(pq, 0)) && !E.express(items[1]).is_zero(), ""};
        });

        const ExtClass h0 = E.express(h_cochain(pq, 0));
        const ExtClass h1 = E.express(h_cochain(pq, 1));
        const ExtClass q0 = E.express(q0_power(pq, 1));
        const ExtClass q0sq = E.express(q0_power(pq, 2));
        const ExtClass h1sq = E.product(h1, h1);
        auto membership = [&](const std::string& name, const ExtClass& a, const ExtClass& b, const ExtClass& c,
                              const Cochain<F2>& item) {
            check(r, name, [&]() -> Result {
                const MasseyCoset m = E.massey(a, b, c);
                const ExtClass x = E.express(item);
                const bool ok = !x.is_zero() && m.contains(x);
                return {ok, fmt::format("at {}, indeterminacy dimension {}", to_string(x.degree), m.indeterminacy.size())};
            });
        };
        membership("<h1,q0^2,h0> contains item 3", h1, q0sq, h0, items[2]);
        membership("<h0,q0,h1^2> contains item 4", h0, q0, h1sq, items[3]);

        check(r, "witness coboundary", [&]() -> Result {
            const Cochain<F2> expect = make_cochain(pq, {{qgen(pq, 0), Word{zgen(pq, 1, 2), zgen(pq, 1, 2)}}});
            const auto d = differential(pq, massey_witness(pq));
            return {d == expect, "d = " + d.str()};
        });
        check(r, "associated graded of the BP cocycles", [&]() -> Result {
            const auto lifts = bp_permanent_cocycles(S.bp());
            std::string bad;
            for (std::size_t i = 0; i < lifts.size(); ++i)
                if (gr_project(S.bp(), pq, lifts[i], filtration(S.bp(), lifts[i])) != items[i])
                    bad += fmt::format(" {}", i + 1);
            return {bad.empty(), bad.empty() ? "" : "mismatch at item" + bad};
        });
        for (int i : {2, 3})
            check(r, fmt::format("d1 vanishes on item {}", i + 1), [&]() -> Result {
                return {S.d1_of_cocycle(items[static_cast<std::size_t>(i)]).is_zero(), ""};
            });
        const double secs = since(t0);
        r.add("runtime < 10 s", secs < 10.0, fmt::format("{:.2f} s", secs));
    });
}

// ---- right unit ------------------------------------------------------------------

SuiteReport suite_eta_r(Workspace&)
{
    return run("eta-r", [](SuiteReport& r) {
        const auto bp = std::make_shared<BPStructure>(16);
        const auto& v = *bp->v();
        const auto& t = *bp->t();
        auto V = [&](int i, int e = 1) { return v.generator(FamilyId::V, i, e); };
        auto T = [&](int i, int e = 1) { return t.generator(FamilyId::T, i, e); };
        const Monomial one;

        check(r, "eta_R(v1) = v1 + 2 t1", [&]() -> Result {
            UnitMap<LocalRational> expect{{{V(1), one}, LocalRational(1)}, {{one, T(1)}, LocalRational(2)}};
            return {unit_map(bp->right_unit(V(1))) == expect, ""};
        });
        check(r, "eta_R(v2) = v2 + v1 t1^2 + v1^2 t1 mod 2", [&]() -> Result {
            UnitMap<F2> expect{{{V(2), one}, F2::one()}, {{V(1), T(1, 2)}, F2::one()}, {{V(1, 2), T(1)}, F2::one()}};
            return {unit_map(bp->right_unit_mod2(V(2))) == expect, ""};
        });
        // Every term but v_n itself lies in I_n = (2, v_1, ..., v_{n-1}).
        for (int n = 1; n <= 3; ++n)
            check(r, fmt::format("eta_R(v{0}) = v{0} mod I_{0}", n), [&]() -> Result {
                for (const auto& u : bp->right_unit(V(n))) {
                    if (u.prefix == V(n) && u.slot.is_one()) {
                        if (!(u.coef == LocalRational(1)))
                            return {false, "coefficient of v_n"};
                        continue;
                    }
                    bool in_ideal = u.coef.nu2() > 0;
                    for (int i = 1; i < n; ++i)
                        in_ideal = in_ideal || u.prefix.e[static_cast<std::size_t>(v.slot(FamilyId::V, i))] > 0;
                    if (!in_ideal)
                        return {false, fmt::format("term {} {}", v.format(u.prefix), t.format(u.slot))};
                }
                return {true, ""};
            });
        check(r, "ring map on monomial pairs", [&]() -> Result {
            const std::vector<Monomial> xs{V(1), V(1, 2), V(2), V(1) * V(2), V(3)};
            int n = 0;
            for (const auto& a : xs)
                for (const auto& b : xs) {
                    if (v.degree(a * b) > 16)
                        continue;
                    ++n;
                    if (unit_map(bp->right_unit(a * b)) != unit_product(unit_map(bp->right_unit(a)), unit_map(bp->right_unit(b))))
                        return {false, fmt::format("fails on {} * {}", v.format(a), v.format(b))};
                }
            return {true, fmt::format("{} pairs", n)};
        });
        check(r, "counit recovers the monomial", [&]() -> Result {
            for (int u = 0; u <= 16; u += 2)
                for (const auto& m : enumerate_basis(v, u)) {
                    UnitMap<LocalRational> zero_slot;
                    for (const auto& term : bp->right_unit(m))
                        if (term.slot.is_one())
                            zero_slot[{term.prefix, term.slot}] += term.coef;
                    UnitMap<LocalRational> expect{{{m, one}, LocalRational(1)}};
                    if (zero_slot != expect)
                        return {false, v.format(m)};
                }
            return {true, ""};
        });
    });
}

// ---- the chart --------------------------------------------------------------------

namespace {

struct ExpectedNode
{
    int x, y, multiplicity;
    bool tower;
    const char* label;
};

// Expected positions of the reference chart.
const std::vector<ExpectedNode> kNovikovChart{
    {0, 0, 9, false, "1"},          {1, 1, 1, true, "h0"},   {3, 1, 2, false, "h1"},  {5, 1, 1, true, "Ph0"},
    {6, 2, 1, false, "h1^2"},       {7, 1, 4, false, "h2"},  {8, 2, 2, true, "<h0,q0,h1^2>"},
    {9, 1, 1, true, nullptr},       {9, 3, 1, false, nullptr}, {11, 1, 3, true, nullptr},
    {13, 1, 1, true, nullptr},      {14, 2, 5, true, "h2^2"}, {15, 1, 8, false, "h3"},
};

const std::vector<std::pair<int, int>> kAdamsPositions{
    {1, 1},  {3, 1},  {3, 2},  {5, 3},  {6, 2},  {7, 1},  {7, 2},  {7, 3},  {7, 4},  {8, 2},  {8, 3},
    {9, 3},  {9, 5},  {11, 4}, {11, 5}, {11, 6}, {13, 7}, {14, 2}, {14, 3}, {14, 4}, {14, 5}, {14, 6},
    {15, 1}, {15, 2}, {15, 3}, {15, 4}, {15, 5}, {15, 6}, {15, 7}, {15, 8},
};
const std::set<std::pair<int, int>> kAdamsTowers{{1, 1}, {5, 3}, {8, 3}, {9, 5}, {11, 4}, {13, 7}, {14, 4}};

bool has_edge(const ChartNode& n, const std::string& kind, int x = 0, int y = 0)
{
    return std::any_of(n.edges.begin(), n.edges.end(),
                       [&](const ChartEdge& e) { return e.kind == kind && e.x == x && e.y == y; });
}

int count_edges(const ChartNode& n, const std::string& kind)
{
    return static_cast<int>(std::count_if(n.edges.begin(), n.edges.end(), [&](const ChartEdge& e) { return e.kind == kind; }));
}

}  // namespace

SuiteReport suite_figure1(Workspace& ws)
{
    return run("figure1", [&](SuiteReport& r) {
        NovikovLayer& S = ws.sphere();
        ExtEngine& E = S.engine();
        check(r, "sum_t dim H^{1,16} = 8", [&]() -> Result {
            const int n = total_dimension(E, 1, 16, 8);
            return {n == 8, std::to_string(n)};
        });
        check(r, "sum_t dim H^{1,8} = 4", [&]() -> Result {
            const int n = total_dimension(E, 1, 8, 8);
            return {n == 4, std::to_string(n)};
        });
        check(r, "sum_t dim H^{1,4} = 2", [&]() -> Result {
            const int n = total_dimension(E, 1, 4, 8);
            return {n == 2, std::to_string(n)};
        });

        const SSDataset ds = novikov_chart_dataset(S, Workspace::figure_region());
        ChartSpec spec;
        spec.region = ChartRegion{0, 15, 0, 8};

        spec.projection = Projection::Novikov;
        const ChartTable nov = tabulate(spec, ds);
        check(r, "Novikov projection matches", [&]() -> Result {
            std::string bad;
            if (nov.nodes.size() != kNovikovChart.size())
                bad += fmt::format(" {} nodes", nov.nodes.size());
            for (const auto& e : kNovikovChart) {
                const ChartNode* n = nov.at(e.x, e.y);
                if (!n) {
                    bad += fmt::format(" missing ({},{})", e.x, e.y);
                    continue;
                }
                const bool tower = count_edges(*n, "h0-tower") > 0;
                const bool label_ok =
                    !e.label || std::find(n->labels.begin(), n->labels.end(), e.label) != n->labels.end();
                if (n->multiplicity != e.multiplicity || tower != e.tower || !label_ok)
                    bad += fmt::format(" ({},{}) mult {} tower {}", e.x, e.y, n->multiplicity, tower);
            }
            return {bad.empty(), bad};
        });
        check(r, "infinite q0-tower at stem 0", [&]() -> Result {
            const ChartNode* n = nov.at(0, 0);
            return {n && has_edge(*n, "q0-tower") && n->multiplicity == 9, ""};
        });
        check(r, "h0-towers on 1 and the Ph0 family", [&]() -> Result {
            bool ok = true;
            for (auto [x, y] : std::vector<std::pair<int, int>>{{1, 1}, {5, 1}, {9, 1}, {13, 1}}) {
                const ChartNode* n = nov.at(x, y);
                ok = ok && n && count_edges(*n, "h0-tower") == 1;
            }
            return {ok, ""};
        });
        check(r, "d1 from h3 in the Novikov projection", [&]() -> Result {
            const ChartNode* n = nov.at(15, 1);
            return {n && has_edge(*n, "d1", 14, 2), ""};
        });

        spec.projection = Projection::Adams;
        const ChartTable adams = tabulate(spec, ds);
        check(r, "Adams projection matches", [&]() -> Result {
            std::set<std::pair<int, int>> got, towers;
            for (const auto& n : adams.nodes) {
                if (n.x == 0)
                    continue;
                got.insert({n.x, n.y});
                if (count_edges(n, "h0-tower"))
                    towers.insert({n.x, n.y});
            }
            const std::set<std::pair<int, int>> want(kAdamsPositions.begin(), kAdamsPositions.end());
            std::string detail;
            for (const auto& p : want)
                if (!got.count(p))
                    detail += fmt::format(" missing ({},{})", p.first, p.second);
            for (const auto& p : got)
                if (!want.count(p))
                    detail += fmt::format(" extra ({},{})", p.first, p.second);
            if (towers != kAdamsTowers)
                detail += " towers differ";
            return {detail.empty(), detail};
        });
        check(r, "q0-tower at stem 0 in the Adams projection", [&]() -> Result {
            for (int y = 0; y <= 8; ++y) {
                const ChartNode* n = adams.at(0, y);
                if (!n || n->multiplicity != 1 || !has_edge(*n, "q0-tower"))
                    return {false, fmt::format("at (0,{})", y)};
            }
            return {true, ""};
        });
        check(r, "d1 from h3 in the Adams projection", [&]() -> Result {
            const ChartNode* n = adams.at(15, 1);
            return {n && has_edge(*n, "d1", 14, 3), ""};
        });
    });
}

// ---- vanishing lines -------------------------------------------------------------

SuiteReport suite_vanishing(Workspace& ws)
{
    return run("vanishing", [&](SuiteReport& r) {
        ExtEngine& E = ws.sphere().engine();
        int checked = 0, below = 0, wedge = 0;
        std::string where;
        for (int u = 0; u <= std::min(24, E.max_u()); ++u)
            for (int s = 0; s <= 8; ++s)
                for (int t = 0; t <= 8; ++t) {
                    const int stem = u - s;
                    const bool first = stem < s;
                    const bool second = stem > 0 && stem < s + t;
                    if (!first && !second)
                        continue;
                    ++checked;
                    if (E.dimension(s, t, u) == 0)
                        continue;
                    below += first;
                    wedge += second;
                    if (where.size() < 200)
                        where += fmt::format(" ({},{},{})", s, t, u);
                }
        r.add("H = 0 when u - s < s", below == 0, fmt::format("{} violations", below));
        r.add("H = 0 when 0 < u - s < s + t", wedge == 0, fmt::format("{} violations{}", wedge, where));
        r.summary = fmt::format("{} tridegrees checked, {} violations", checked, below + wedge);
    });
}

// ---- Margolis homology and localization ------------------------------------------

namespace {

// Margolis dimensions against monomial counts over t <= max_t, d <= max_d.
Result margolis_counts(NovikovLayer& L, int max_t, int max_d)
{
    int n = 0, bad = 0;
    std::string where;
    for (int t = 0; t <= max_t; ++t)
        for (int d = 0; d <= max_d; d += 2) {
            ++n;
            const int got = L.margolis_data().dimension(t, d);
            const int want = predicted_margolis_dimension(L.mod2(), t, d);
            if (got != want) {
                ++bad;
                where += fmt::format(" (t={},d={}: {} vs {})", t, d, got, want);
            }
        }
    return {bad == 0, fmt::format("{} degrees, {} mismatches{}", n, bad, where)};
}

Region localization_region()
{
    Region r;
    r.max_s = 8;
    r.max_t = 8;
    r.max_u = 24;
    return r;
}

// Certified groups against the localized monomial count, and the
// surjectivity and bijectivity lines bidegree by bidegree.
void localization_checks(SuiteReport& r, NovikovLayer& L, const std::string& prefix)
{
    std::map<std::tuple<int, int, int>, LocalizedGroup> groups;
    check(r, prefix + "localization map certified", [&]() -> Result {
        groups = L.localize_h0(localization_region());
        return {true, fmt::format("{} tridegrees", groups.size())};
    });
    if (groups.empty())
        return;
    int cert = 0, cert_bad = 0, surj = 0, surj_bad = 0;
    std::string where;
    for (const auto& [k, g] : groups) {
        if (g.in_surjective_region) {
            ++surj;
            if (!g.surjective) {
                ++surj_bad;
                where += fmt::format(" surj({},{},{})", std::get<0>(k), std::get<1>(k), std::get<2>(k));
            }
        }
        if (g.certified) {
            ++cert;
            if (!g.bijective || g.dimension_P != g.predicted) {
                ++cert_bad;
                where += fmt::format(" cert({},{},{}): {} vs {}", std::get<0>(k), std::get<1>(k), std::get<2>(k),
                                     g.dimension_P, g.predicted);
            }
        }
    }
    r.add(prefix + "surjective below the 5s-4 line", surj > 0 && surj_bad == 0,
          fmt::format("{} tridegrees, {} failures", surj, surj_bad));
    r.add(prefix + "bijective and equal to the localized count below the 5s-10 line", cert > 0 && cert_bad == 0,
          fmt::format("{} tridegrees, {} failures{}", cert, cert_bad, where));
}

}  // namespace

SuiteReport suite_margolis(Workspace& ws)
{
    return run("margolis", [&](SuiteReport& r) {
        NovikovLayer& S = ws.sphere();
        check(r, "Margolis homology of Q equals the monomial count", [&] { return margolis_counts(S, 8, ws.max_u() - 2); });
        localization_checks(r, S, "");
    });
}

// ---- d_1 on the towers --------------------------------------------------------------

namespace {

// h0^j x for j = 0..max_j.
std::vector<ExtClass> h0_multiples(ExtEngine& E, const ExtClass& x, int max_j)
{
    const ExtClass h0 = E.express(h_cochain(E.algebroid(), 0));
    std::vector<ExtClass> out{x};
    for (int j = 1; j <= max_j; ++j)
        out.push_back(E.product(out.back(), h0));
    return out;
}

// Does d_1 of the minimal lift for q_3 restrict to q_2^2 h_0^{N+1}?
Result q3_differential(NovikovLayer& L, int* exponent = nullptr)
{
    const auto lift = minimal_lift_exponent(L, 2);
    if (exponent)
        *exponent = lift.exponent;
    const ExtClass d = L.d1(lift.cls);
    if (d.is_zero())
        return {false, fmt::format("N = {}, d1 = 0", lift.exponent)};
    const PolyF2 q2sq(L.pq().prefix_ctx(), qgen(L.pq(), 2, 2));
    const BitVec want = L.margolis_data().express(q2sq, 2, 12);
    const bool ok = L.restrict_class(d) == want && d.degree.s == lift.exponent + 1 && d.degree.t == 2;
    return {ok, fmt::format("N = {}, d1 at {}", lift.exponent, to_string(d.degree))};
}

Result tower_cycles(NovikovLayer& L, const Cochain<F2>& z, int max_j)
{
    ExtEngine& E = L.engine();
    const auto xs = h0_multiples(E, E.express(z), max_j);
    for (std::size_t j = 0; j < xs.size(); ++j) {
        if (xs[j].is_zero())
            return {false, fmt::format("h0^{} multiple vanishes", j)};
        if (!L.d1(xs[j]).is_zero())
            return {false, fmt::format("d1 != 0 on the h0^{} multiple", j)};
    }
    return {true, fmt::format("h0^0..h0^{}", max_j)};
}

}  // namespace

SuiteReport suite_novikov_d1(Workspace& ws)
{
    return run("novikov-d1", [&](SuiteReport& r) {
        NovikovLayer& S = ws.sphere();
        int n = -1;
        check(r, "d1 of the q3 lift is q2^2 h0^(N+1)", [&] { return q3_differential(S, &n); });
        r.add("minimal lift exponent N <= 5", n >= 0 && n <= 5, fmt::format("N = {}", n));
        const auto items = pq_permanent_cocycles(S.pq());
        check(r, "d1 = 0 on the q1^2 tower", [&] { return tower_cycles(S, items[2], 6); });
        check(r, "d1 = 0 on the q2 tower", [&] { return tower_cycles(S, items[3], 5); });

        // In BP: the [t1]^{N+1} coefficient of d(v_{n+1}[t1]^N) is v_n^2 mod I^3.
        const BPAlgebroid& bp = S.bp();
        const auto& v = *bp.prefix_ctx();
        const Monomial t1 = bp.word_ctx()->generator(FamilyId::T, 1);
        for (int k = 1; k <= 2; ++k)
            for (int N = 1; N <= 3; ++N) {
                const Monomial top = v.generator(FamilyId::V, k + 1);
                if (v.degree(top) + 2 * (N + 1) > S.engine().max_u())
                    continue;
                check(r, fmt::format("[t1]^{} coefficient of d(v{}[t1]^{})", N + 1, k + 1, N), [&]() -> Result {
                    Cochain<LocalRational> z(bp.prefix_ctx(), bp.word_ctx());
                    z.add(top, Word(static_cast<std::size_t>(N), t1), LocalRational(1));
                    const Word target(static_cast<std::size_t>(N + 1), t1);
                    std::vector<std::pair<Monomial, LocalRational>> low;
                    const auto dz = differential(bp, z);
                    for (const auto& [key, c] : dz.terms())
                        if (key.word == target && bp.filtration(key.prefix, c) < 3)
                            low.emplace_back(key.prefix, c);
                    const bool ok = low.size() == 1 && low[0].first == v.generator(FamilyId::V, k, 2) && low[0].second.nu2() == 0;
                    std::string got;
                    for (const auto& [m, c] : low)
                        got += fmt::format(" {}{}", c.str(), v.format(m));
                    return {ok, "mod I^3:" + (got.empty() ? std::string(" 0") : got)};
                });
            }
    });
}

// ---- alpha family ----------------------------------------------------------------

SuiteReport suite_alpha(Workspace& ws)
{
    return run("alpha", [&](SuiteReport& r) {
        NovikovLayer& S = ws.sphere();
        NovikovLayer& M = ws.mod2();
        for (int s : {1, 3, 5, 7})
            check(r, fmt::format("alpha{} detected by q1^{} h0", s, s - 1), [&]() -> Result {
                const AlphaRecord a = detect_alpha(S, M, s);
                const bool ok = a.integral && a.cocycle && a.h0_power == 1 && a.detecting_monomial == qgen(S.pq(), 1, s - 1);
                return {ok, a.detected_by};
            });
        for (int s : {6, 8})
            check(r, fmt::format("alpha{} detected by q1^{} q2 h0", s, s - 4), [&]() -> Result {
                const AlphaRecord a = detect_alpha(S, M, s);
                const bool ok = !a.integral && a.cocycle && a.h0_power == 1 &&
                                a.detecting_monomial == qgen(M.pq(), 1, s - 4) * qgen(M.pq(), 2);
                return {ok, a.detected_by};
            });
        check(r, "alpha1^3 alpha4 yields v2[t1|t1|t1|t1]", [&]() -> Result {
            const AlphaRecord a = detect_alpha(S, M, 4);
            const BPMod2Algebroid& bp = M.bp_mod2();
            const Monomial t1 = bp.word_ctx()->generator(FamilyId::T, 1);
            Cochain<F2> want(bp.prefix_ctx(), bp.word_ctx());
            want.add(bp.prefix_ctx()->generator(FamilyId::V, 2), Word(4, t1), F2::one());
            return {a.alpha1_cubed_alpha4_part == want, a.alpha1_cubed_alpha4_part.str()};
        });
        check(r, "Margolis homology of Q/(q0) equals the monomial count", [&] { return margolis_counts(M, 8, ws.max_u() - 2); });
        localization_checks(r, M, "mod 2: ");
    });
}

// ---- E_infinity ----------------------------------------------------------------------

namespace {

LocalizedD1 sphere_d1(NovikovLayer& S)
{
    LocalizedD1 d;
    d.q3_hits_q2_squared_h0 = q3_differential(S).first;
    const auto items = pq_permanent_cocycles(S.pq());
    d.q1sq_cycle = S.engine().is_cocycle(items[2]) && S.d1_of_cocycle(items[2]).is_zero();
    d.q2_cycle = S.engine().is_cocycle(items[3]) && S.d1_of_cocycle(items[3]).is_zero();
    return d;
}

// Mod 2 the q_1 class is q1[zeta1] and the q_2 cocycle loses its q_0 terms.
LocalizedD1 moore_d1(NovikovLayer& M)
{
    const PQAlgebroid& pq = M.pq();
    LocalizedD1 d;
    d.q3_hits_q2_squared_h0 = q3_differential(M).first;
    const Cochain<F2> q1 = make_cochain(pq, {{qgen(pq, 1), Word{zgen(pq, 1)}}});
    d.q1sq_cycle = M.engine().is_cocycle(q1) && M.d1_of_cocycle(q1).is_zero();
    const std::size_t q0_slot = static_cast<std::size_t>(pq.prefix_ctx()->slot(FamilyId::Q, 0));
    Cochain<F2> q2(pq.prefix_ctx(), pq.word_ctx());
    const auto items = pq_permanent_cocycles(pq);
    for (const auto& [k, c] : items[3].terms())
        if (k.prefix.e[q0_slot] == 0)
            q2.add(k, c);
    d.q2_cycle = M.engine().is_cocycle(q2) && M.d1_of_cocycle(q2).is_zero();
    return d;
}

Result page_matches(const PageTable& p)
{
    int bad = 0;
    std::string where;
    for (const auto& [k, dim] : p.e2) {
        const int want = p.predicted.at(k);
        if (dim != want) {
            ++bad;
            where += fmt::format(" (t={},d={}: {} vs {})", k.first, k.second, dim, want);
        }
    }
    return {bad == 0 && !p.e2.empty(), fmt::format("{} degrees, {} mismatches{}", p.e2.size(), bad, where)};
}

}  // namespace

SuiteReport suite_einfty(Workspace& ws)
{
    return run("einfty", [&](SuiteReport& r) {
        constexpr int max_d = 24;
        const LocalizedD1 sd = sphere_d1(ws.sphere());
        const LocalizedD1 md = moore_d1(ws.mod2());
        r.add("sphere d1 inputs computed", sd.q1sq_cycle && sd.q2_cycle && sd.q3_hits_q2_squared_h0);
        r.add("mod 2 d1 inputs computed", md.q1sq_cycle && md.q2_cycle && md.q3_hits_q2_squared_h0);
        const PageTable sp = assemble_einfty(false, sd, max_d);
        const PageTable mp = assemble_einfty(true, md, max_d);
        check(r, "sphere E_infinity = F2[h0^+-1, q1^2, q2]/(q2^2)", [&] { return page_matches(sp); });
        check(r, "mod 2 E_infinity = F2[h0^+-1, q1, q2]/(q2^2)", [&] { return page_matches(mp); });
        check(r, "S -> S/2 is the inclusion", [&]() -> Result {
            int bad = 0;
            for (const auto& [k, dim] : sp.e2)
                if (sphere_to_moore_rank(sd, md, k.first, k.second, max_d) != dim)
                    ++bad;
            return {bad == 0, fmt::format("{} degrees, {} not injective", sp.e2.size(), bad)};
        });
    });
}

// ---- motivic route A ---------------------------------------------------------------

SuiteReport suite_manss(Workspace& ws)
{
    return run("manss", [&](SuiteReport& r) {
        const RouteA& a = ws.route_a();
        r.add("tau is killed by d3", a.tau_killed);
        r.add("d^2 = 0 on the E3 page", a.d_squared_zero);
        r.add("renamed monomials span E_infinity", a.renamed_spans);
        auto same = [](const BigradedTable& x, const BigradedTable& y) {
            std::set<std::pair<int, int>> keys;
            for (const auto& [k, v] : x)
                keys.insert(k);
            for (const auto& [k, v] : y)
                keys.insert(k);
            int bad = 0;
            for (const auto& k : keys) {
                auto ix = x.find(k), iy = y.find(k);
                if ((ix == x.end() ? 0 : ix->second) != (iy == y.end() ? 0 : iy->second))
                    ++bad;
            }
            return bad;
        };
        const int b1 = same(a.einfty, a.renamed), b2 = same(a.renamed, a.target);
        r.add("E_infinity = F2[abar1^+-1, abar4, abar5]/(abar4^2)", b1 == 0 && !a.einfty.empty(),
              fmt::format("{} entries, {} mismatches", a.einfty.size(), b1));
        r.add("= F2[eta^+-1, sigma, mu9]/(sigma^2)", b2 == 0, fmt::format("{} mismatches", b2));
        r.add("no route A mismatches", a.mismatches.empty(), fmt::format("{}", a.mismatches.size()));
        check(r, "tau weights", [&]() -> Result {
            return {tau_weight(16, 0) == 8 && tau_weight(16, 3) == 5 && tau_weight(0, 2) == -2, ""};
        });
        for (auto [c, want] : std::vector<std::pair<int, int>>{{0, 1}, {3, 1}, {6, 0}}) {
            int seen = 0, bad = 0;
            for (int stem = -24; stem <= 24; ++stem) {
                auto it = a.einfty.find({stem, stem - c});
                const int dim = it == a.einfty.end() ? 0 : it->second;
                ++seen;
                bad += dim != want;
            }
            r.add(fmt::format("coweight {} has dimension {}", c, want), bad == 0, fmt::format("{} stems, {} off", seen, bad));
        }
    });
}

// ---- motivic route B ---------------------------------------------------------------

SuiteReport suite_gi_e2(Workspace& ws)
{
    return run("gi-e2", [&](SuiteReport& r) {
        const MotivicAdamsE2& e2 = ws.motivic_adams();
        check(r, "h0 at (1,2,1) generates a free summand", [&]() -> Result {
            const auto b = e2.block(1, 2);
            return {b.module.free_rank == 1 && b.module.free_weights == std::vector<int>{1} && b.module.torsion.empty(), ""};
        });
        // v2 lives in the h0-localized E2: the unlocalized group at (1,7,3) is
        // zero, so the check reads the stable value of its h0-line.
        check(r, "v2 at (1,7,3) after inverting h0", [&]() -> Result {
            const auto& lines = ws.route_b().lines;
            const auto it = lines.find({7 - 2 * 1, 7 - 1 - 3});
            if (it == lines.end() || !it->second.certified)
                return {false, "line not certified"};
            return {it->second.stable >= 1, fmt::format("stable dimension {}, unlocalized {}", it->second.stable,
                                                        e2.dimension(1, 7, 3))};
        });
        r.add("resolution d^2 = 0", e2.resolution().d_squared_zero());
        check(r, "cobar cross-check, u <= 8, s < 6", [&]() -> Result {
            int n = 0, bad = 0;
            for (const auto& [k, b] : motivic_adams_e2_cobar(8, 6)) {
                if (k.first >= 6 || !e2.in_window(k.first, k.second))
                    continue;
                ++n;
                const auto res = e2.block(k.first, k.second);
                if (res.module.free_weights != b.module.free_weights || res.module.torsion != b.module.torsion ||
                    !b.module.snf_agrees || !res.module.snf_agrees)
                    ++bad;
            }
            return {bad == 0 && n > 0, fmt::format("{} blocks, {} differ", n, bad)};
        });

        const RouteB& b = ws.route_b();
        r.add("certified h0-lines match F2[h0^+-1, v1^4, v2, v3, ...]", b.certified > 0 && b.mismatches.empty(),
              fmt::format("{} certified lines, {} mismatches", b.certified, b.mismatches.size()));
        r.add("v2^2 h0 is the unique class at (3,16,7)", b.target_unique,
              fmt::format("dimension {}, predicted {}", b.target_dimension, b.target_predicted));
        r.add("d2 v3 = v2^2 h0 applied", b.d2_applied);
        r.add("d2 preserves weight", b.weight_preserved);
        check(r, "d2 applied only for n >= 2", [&]() -> Result {
            const LaurentDGA dga = localized_adams_e2(12, true);
            bool ok = dga.differential_of(0).empty() && dga.differential_of(1).empty();
            for (std::size_t j = 2; j < dga.arity(); ++j)
                ok = ok && !dga.differential_of(j).empty();
            return {ok, ""};
        });
        check(r, "E_infinity agrees with route A", [&]() -> Result {
            const RouteComparison c = compare_routes(ws.route_a(), b);
            return {c.agree() && !c.table.empty(),
                    fmt::format("{} bidegrees, {} disagree{}", c.table.size(), c.mismatches.size(),
                                c.mismatches.empty() ? "" : ": " + c.mismatches.front())};
        });
    });
}

// ---- registry -------------------------------------------------------------------

const std::vector<SuiteEntry>& all_suites()
{
    static const std::vector<SuiteEntry> suites{
        {"lemma61", suite_lemma61},     {"cor62-massey", suite_cor62_massey}, {"eta-r", suite_eta_r},
        {"figure1", suite_figure1},     {"vanishing", suite_vanishing},       {"margolis", suite_margolis},
        {"novikov-d1", suite_novikov_d1}, {"alpha", suite_alpha},             {"einfty", suite_einfty},
        {"manss", suite_manss},         {"gi-e2", suite_gi_e2},               {"properties", suite_properties},
    };
    return suites;
}

const SuiteEntry& find_suite(const std::string& name)
{
    for (const auto& s : all_suites())
        if (s.name == name)
            return s;
    std::string names;
    for (const auto& s : all_suites())
        names += (names.empty() ? "" : ", ") + s.name;
    throw ConfigError(fmt::format("unknown suite '{}' (known: {})", name, names));
}

}  // namespace ank
