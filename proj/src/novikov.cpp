#include "ank/novikov.hpp"

#include <fmt/format.h>

#include <functional>

namespace ank {

namespace {

BitVec poly_vector(const std::vector<Monomial>& basis, const PolyF2& p)
{
    BitVec v(basis.size());
    for (const auto& [m, c] : p.terms()) {
        auto it = std::lower_bound(basis.begin(), basis.end(), m);
        if (it == basis.end() || !(*it == m))
            throw GradingError("polynomial term outside the module degree");
        v.set(static_cast<std::size_t>(it - basis.begin()));
    }
    return v;
}

BitVec resized(const BitVec& v, std::size_t n)
{
    BitVec r(n);
    for (std::size_t i = v.next_set(0); i < v.size() && i < n; i = v.next_set(i + 1))
        r.set(i);
    return r;
}

}  // namespace

std::vector<Monomial> MargolisData::module_basis(int t, int d) const
{
    std::vector<Monomial> out;
    if (d < 0 || t < 0 || d > q_->q()->max_u())
        return out;
    const int q0 = q_->q()->slot(FamilyId::Q, 0);
    for (const auto& m : enumerate_basis(*q_->q(), d, t))
        if (!q_->mod_q0() || m.e[q0] == 0)
            out.push_back(m);
    return out;
}

PolyF2 MargolisData::p1(const Monomial& m) const
{
    const Monomial z1 = q_->p().zeta()->generator(FamilyId::Zeta, 1);
    PolyF2 out(q_->q());
    for (const auto& term : q_->coaction(m))
        if (term.slot == z1)
            out.add(term.prefix, term.coef);
    return out;
}

const MargolisDegree& MargolisData::at(int t, int d)
{
    auto key = std::make_pair(t, d);
    if (auto it = cache_.find(key); it != cache_.end())
        return *it->second;
    // The image of P^1 comes from degree d + 2, which must lie inside the truncation.
    if (d + 2 > q_->q()->max_u())
        throw TruncationError(fmt::format("Margolis homology at d={} needs degree {} > max_u={}", d, d + 2, q_->q()->max_u()));
    auto g = std::make_unique<MargolisDegree>();
    g->t = t;
    g->d = d;
    g->basis = module_basis(t, d);
    const std::size_t n = g->basis.size();
    g->image = RowReducer(n);
    g->classes = RowReducer(n, true);
    for (const auto& m : module_basis(t, d + 2))
        g->image.insert(poly_vector(g->basis, p1(m)));

    const auto below = module_basis(t, d - 2);
    RowReducer images(below.size(), true);
    for (std::size_t i = 0; i < n; ++i) {
        BitVec rel;
        if (images.insert(poly_vector(below, p1(g->basis[i])), &rel))
            continue;
        ++g->kernel_dim;
        BitVec k = resized(rel, n);
        BitVec w = k;
        g->image.reduce(w);
        if (w.any() && g->classes.insert(w))
            g->homology.push_back(k);
    }
    if (g->kernel_dim != g->image.rank() + g->homology.size())
        throw CertificationError(fmt::format("P^1 is not a differential at (t={}, d={})", t, d));
    return *cache_.emplace(key, std::move(g)).first->second;
}

BitVec MargolisData::express(const PolyF2& m, int t, int d)
{
    const MargolisDegree& g = at(t, d);
    if (m.is_zero())
        return BitVec(g.homology.size());
    PolyF2 image(q_->q());
    for (const auto& [mono, c] : m.terms())
        image += p1(mono);
    if (!image.is_zero())
        throw CertificationError("element is not a P^1-cycle");
    BitVec v = poly_vector(g.basis, m);
    g.image.reduce(v);
    BitVec tag = g.classes.reduce(v);
    if (v.any())
        throw CertificationError("P^1-cycle outside image + homology basis");
    return resized(tag, g.homology.size());
}

MargolisData margolis(std::shared_ptr<const QCoaction> q)
{
    return MargolisData(std::move(q));
}

int predicted_margolis_dimension(bool mod2, int t, int d)
{
    // Generators (degree, Novikov weight): q_1^2 or q_1, then q_n for n >= 2.
    std::vector<std::pair<int, int>> gens;
    gens.emplace_back(mod2 ? 2 : 4, mod2 ? 1 : 2);
    for (int n = 2; (1 << (n + 1)) - 2 <= d; ++n)
        gens.emplace_back((1 << (n + 1)) - 2, 1);
    std::function<int(std::size_t, int, int)> count = [&](std::size_t i, int tt, int dd) {
        if (dd == 0)
            return tt == 0 ? 1 : 0;
        if (i == gens.size() || tt <= 0)
            return 0;
        int total = 0;
        for (int k = 0; k * gens[i].first <= dd && k * gens[i].second <= tt; ++k)
            total += count(i + 1, tt - k * gens[i].second, dd - k * gens[i].first);
        return total;
    };
    if (t < 0 || d < 0)
        return 0;
    return count(0, t, d);
}

PolyF2 restrict_to_E(const PQAlgebroid& pq, const Cochain<F2>& z)
{
    const Monomial z1 = pq.word_ctx()->generator(FamilyId::Zeta, 1);
    PolyF2 out(pq.prefix_ctx());
    for (const auto& [k, c] : z.terms()) {
        bool all = true;
        for (const auto& g : k.word)
            all = all && g == z1;
        if (all)
            out.add(k.prefix, c);
    }
    return out;
}

NovikovLayer::NovikovLayer(int max_u, bool mod2, std::size_t budget)
    : max_u_(max_u),
      mod2_(mod2),
      p_(std::make_shared<PStructure>(max_u)),
      q_(std::make_shared<QCoaction>(p_, mod2)),
      pq_(std::make_shared<PQAlgebroid>(q_)),
      engine_(pq_, budget),
      margolis_(q_),
      bps_(std::make_shared<BPStructure>(max_u)),
      bp_(bps_),
      bp2_(bps_)
{
}

BitVec NovikovLayer::restrict_class(const ExtClass& x)
{
    const auto& d = x.degree;
    if (d.s < 1)
        throw GradingError("restriction to E is only tracked for s >= 1");
    return margolis_.express(restrict_to_E(*pq_, engine_.representative(x)), d.t, d.u - 2 * d.s);
}

BitMatrix NovikovLayer::restriction_matrix(int s, int t, int u)
{
    const int n = engine_.dimension(s, t, u);
    const auto cols = static_cast<std::size_t>(margolis_.dimension(t, u - 2 * s));
    BitMatrix m(0, cols);
    for (int i = 0; i < n; ++i)
        m.push_row(restrict_class(engine_.basis_class(s, t, u, i)));
    return m;
}

LocalizedGroup NovikovLayer::localized_group(int s, int t, int u)
{
    LocalizedGroup g;
    g.stem = u - s;
    g.s = s;
    g.t = t;
    g.dimension_P = engine_.dimension(s, t, u);
    g.dimension_E = margolis_.dimension(t, u - 2 * s);
    g.restriction_rank = static_cast<int>(rank(restriction_matrix(s, t, u)));
    g.surjective = g.restriction_rank == g.dimension_E;
    g.bijective = g.surjective && g.dimension_P == g.restriction_rank;
    g.in_surjective_region = g.stem < 5 * s - 4;
    g.certified = g.stem < 5 * s - 10;
    g.predicted = predicted_margolis_dimension(mod2_, t, u - 2 * s);
    return g;
}

std::map<std::tuple<int, int, int>, LocalizedGroup> NovikovLayer::localize_h0(const Region& r)
{
    std::map<std::tuple<int, int, int>, LocalizedGroup> out;
    std::vector<std::string> failures;
    bool any_certified = false;
    for (int u = 0; u <= std::min(r.max_u, max_u_); u += 2)
        for (int s = 1; s <= r.max_s; ++s)
            for (int t = 0; t <= r.max_t; ++t) {
                if (!r.contains(s, t, u) || u < 2 * s)
                    continue;
                LocalizedGroup g = localized_group(s, t, u);
                any_certified = any_certified || g.certified;
                if ((g.in_surjective_region && !g.surjective) || (g.certified && !g.bijective))
                    failures.push_back(fmt::format("(stem={},s={},t={})", g.stem, s, t));
                out.emplace(std::make_tuple(g.stem, s, t), g);
            }
    if (!any_certified)
        throw CertificationError("region contains no bidegree with u-s < 5s-10");
    if (!failures.empty()) {
        std::string list;
        for (const auto& f : failures)
            list += (list.empty() ? "" : " ") + f;
        throw CertificationError("localization map fails its certified property at " + list);
    }
    return out;
}

ExtClass NovikovLayer::d1_of_cocycle(const Cochain<F2>& z)
{
    MultiDegree deg = engine_.degree_of(z);
    MultiDegree target{deg.s + 1, deg.t + 1, deg.u, std::nullopt};
    Cochain<F2> gr;
    if (mod2_) {
        Cochain<F2> lift = split_lift(bp2_, z);
        Cochain<F2> dz = differential(bp2_, lift, deg.t + 2);
        if (!dz.is_zero() && filtration(bp2_, dz) <= deg.t)
            throw FiltrationError("d of the lift does not raise filtration; input is not a cocycle");
        gr = gr_project(bp2_, *pq_, dz, deg.t + 1);
    } else {
        Cochain<LocalRational> lift = split_lift(bp_, z);
        Cochain<LocalRational> dz = differential(bp_, lift, deg.t + 2);
        if (!dz.is_zero() && filtration(bp_, dz) <= deg.t)
            throw FiltrationError("d of the lift does not raise filtration; input is not a cocycle");
        gr = gr_project(bp_, *pq_, dz, deg.t + 1);
    }
    return engine_.express(gr, target);
}

ExtClass NovikovLayer::d1(const ExtClass& x)
{
    const auto& d = x.degree;
    if (x.is_zero())
        return engine_.zero_class(d.s + 1, d.t + 1, d.u);
    return d1_of_cocycle(engine_.representative(x));
}

NovikovLayer::Lift NovikovLayer::minimal_lift(const Monomial& target, int t, int max_n)
{
    const int d = static_cast<int>(target.deg);
    PolyF2 tp(q_->q(), target);
    BitVec goal = margolis_.express(tp, t, d);
    if (!goal.any())
        throw SearchError("target is zero in Margolis homology");
    for (int n = 1; n <= max_n; ++n) {
        const int u = d + 2 * n;
        if (u > max_u_)
            break;
        BitMatrix r = restriction_matrix(n, t, u);
        // Solve x^T R = goal, i.e. R^T x = goal.
        auto x = solve(r.transpose(), goal);
        if (!x)
            continue;
        Lift out;
        out.exponent = n;
        out.cls = ExtClass{MultiDegree{n, t, u, std::nullopt}, *x, ""};
        out.representative = engine_.representative(out.cls);
        return out;
    }
    throw SearchError(fmt::format("no lift of the target found with N <= {}", max_n));
}

NovikovLayer::Lift minimal_lift_exponent(NovikovLayer& layer, int n, int max_n)
{
    const auto& q = *layer.pq().prefix_ctx();
    if (n == 0)
        return layer.minimal_lift(q.generator(FamilyId::Q, 1, 2), 2, max_n);
    return layer.minimal_lift(q.generator(FamilyId::Q, n + 1), 1, max_n);
}

namespace {

Monomial word_gen(const RingContext& t, int i, int power = 1)
{
    return t.generator(FamilyId::T, i, power);
}

std::string monomial_name(const RingContext& q, const Monomial& m)
{
    return q.format(m);
}

}  // namespace

AlphaRecord detect_alpha(NovikovLayer& sphere, NovikovLayer& mod2, int s)
{
    if (s < 1 || s == 2)
        throw GradingError("alpha detection is defined for s >= 1, s != 2");
    AlphaRecord rec;
    rec.s = s;
    if (s % 2 == 1) {
        const BPAlgebroid& bp = sphere.bp();
        const auto& v = *bp.prefix_ctx();
        const auto& t = *bp.word_ctx();
        Cochain<LocalRational> z(bp.prefix_ctx(), bp.word_ctx());
        // ((v_1 + 2t_1)^s - v_1^s)/2 = sum_{k>=1} C(s,k) 2^{k-1} v_1^{s-k} t_1^k.
        mpz_class binom = 1;
        for (int k = 1; k <= s; ++k) {
            binom = binom * (s - k + 1) / k;
            mpz_class c = binom;
            c <<= (k - 1);
            Monomial pre = s - k == 0 ? Monomial{} : v.generator(FamilyId::V, 1, s - k);
            z.add(pre, Word{word_gen(t, 1, k)}, LocalRational::from(Rational(mpq_class(c))));
        }
        rec.integral = true;
        rec.integral_rep = z;
        rec.cocycle = differential(bp, z).is_zero();
        if (!rec.cocycle)
            throw GroundTruthError(fmt::format("alpha_{} representative is not a cocycle", s));
        rec.filtration = filtration(bp, z);
        Cochain<F2> gr = gr_project(bp, sphere.pq(), z, rec.filtration);
        PolyF2 m = restrict_to_E(sphere.pq(), gr);
        if (m.size() != 1)
            throw GroundTruthError(fmt::format("alpha_{} restriction is not a single monomial", s));
        rec.detecting_monomial = m.terms().begin()->first;
        rec.h0_power = 1;
        rec.detected_by = monomial_name(*sphere.pq().prefix_ctx(), rec.detecting_monomial) + " h0";
        return rec;
    }

    const BPMod2Algebroid& bp = mod2.bp_mod2();
    const auto& v = *bp.prefix_ctx();
    const auto& t = *bp.word_ctx();
    auto vpow = [&](int i, int e) { return e == 0 ? Monomial{} : v.generator(FamilyId::V, i, e); };
    Cochain<F2> z(bp.prefix_ctx(), bp.word_ctx());
    if (s == 4) {
        z.add(Monomial{}, Word{word_gen(t, 1, 4)}, F2::one());
        z.add(vpow(2, 1), Word{word_gen(t, 1)}, F2::one());
        z.add(vpow(1, 1), Word{word_gen(t, 2)}, F2::one());
        z.add(vpow(1, 1), Word{word_gen(t, 1, 3)}, F2::one());
        z.add(vpow(1, 2), Word{word_gen(t, 1, 2)}, F2::one());
    } else {
        z.add(vpow(1, s - 4) * vpow(2, 1), Word{word_gen(t, 1)}, F2::one());
        z.add(vpow(1, s - 3), Word{word_gen(t, 2)}, F2::one());
        z.add(vpow(1, s - 3), Word{word_gen(t, 1, 3)}, F2::one());
    }
    rec.mod2_rep = z;
    rec.cocycle = differential(bp, z).is_zero();
    if (!rec.cocycle)
        throw GroundTruthError(fmt::format("alpha_{} mod-2 representative is not a cocycle", s));

    if (s > 4) {
        rec.filtration = filtration(bp, z);
        Cochain<F2> gr = gr_project(bp, mod2.pq(), z, rec.filtration);
        PolyF2 m = restrict_to_E(mod2.pq(), gr);
        if (m.size() != 1)
            throw GroundTruthError(fmt::format("alpha_{} restriction is not a single monomial", s));
        rec.detecting_monomial = m.terms().begin()->first;
        rec.h0_power = 1;
        rec.detected_by = monomial_name(*mod2.pq().prefix_ctx(), rec.detecting_monomial) + " h0";
        return rec;
    }

    // s = 4: alpha_1^3 alpha_4 lives in filtration 1.
    rec.filtration = 0;
    const PQAlgebroid& pq = mod2.pq();
    const auto& zc = *pq.word_ctx();
    const Monomial z1 = zc.generator(FamilyId::Zeta, 1);
    Cochain<F2> target(pq.prefix_ctx(), pq.word_ctx());
    target.add(Monomial{}, Word{zc.generator(FamilyId::Zeta, 1, 4), z1, z1, z1}, F2::one());
    auto y = mod2.engine().solve_coboundary(target);
    if (!y)
        throw GroundTruthError("[zeta1^4|zeta1|zeta1|zeta1] is not a coboundary");
    Cochain<F2> cube(bp.prefix_ctx(), bp.word_ctx());
    const Monomial t1 = word_gen(t, 1);
    cube.add(Monomial{}, Word{t1, t1, t1}, F2::one());
    Cochain<F2> w = product(bp, z, cube);
    w += differential(bp, split_lift(bp, *y));
    if (!w.is_zero() && filtration(bp, w) < 1)
        throw GroundTruthError("alpha_1^3 alpha_4 correction leaves filtration-0 terms");
    Cochain<F2> part(bp.prefix_ctx(), bp.word_ctx());
    for (const auto& [k, c] : w.terms()) {
        bool single = true;
        for (const auto& g : k.word)
            single = single && g == t1;
        if (single && k.prefix.total_exponent() == 1)
            part.add(k, c);
    }
    rec.alpha1_cubed_alpha4_part = part;
    if (part.size() == 1) {
        const auto& key = part.terms().begin()->first;
        const auto& qctx = *pq.prefix_ctx();
        Monomial q;
        for (int i = 1; i <= v.truncation_index(FamilyId::V); ++i)
            if (int e = key.prefix.e[v.slot(FamilyId::V, i)])
                q = q * qctx.generator(FamilyId::Q, i, e);
        rec.detecting_monomial = q;
        rec.h0_power = static_cast<int>(key.word.size());
        rec.detected_by = fmt::format("{} h0^{}", qctx.format(q), rec.h0_power);
    }
    return rec;
}

LaurentDGA localized_novikov_e1(bool mod2, const LocalizedD1& d1, int max_d)
{
    if (!d1.q1sq_cycle || !d1.q2_cycle)
        throw CertificationError("d_1 on the q_1 and q_2 towers is not certified zero");
    std::vector<LaurentDGA::Generator> gens;
    gens.push_back(mod2 ? LaurentDGA::Generator{"q1", {0, 1, 2}} : LaurentDGA::Generator{"q1^2", {0, 2, 4}});
    for (int n = 2; (1 << (n + 1)) - 2 <= max_d + 2; ++n)
        gens.push_back({fmt::format("q{}", n), {0, 1, (1 << (n + 1)) - 2}});
    if (gens.size() > 3)
        throw CertificationError("window reaches q_4, whose d_1 is not computed");
    LaurentDGA dga({"h0", {1, 0, 2}}, gens, {-2, 0, 1}, {1, 1, 0});
    if (gens.size() == 3) {
        if (!d1.q3_hits_q2_squared_h0)
            throw CertificationError("window reaches q_3 but d_1 q_3 is not certified");
        dga.set_differential(2, {{1, 0, 2, 0}});
    }
    return dga;
}

PageTable assemble_einfty(bool mod2, const LocalizedD1& d1, int max_d)
{
    const LaurentDGA dga = localized_novikov_e1(mod2, d1, max_d);
    PageTable table;
    for (int d = 0; d <= max_d; d += 2)
        for (int t = 0; t <= d; ++t) {
            const LaurentDGA::Degree at{0, t, d};
            const int e1 = dga.chain_dimension(at);
            if (e1 == 0)
                continue;
            table.e1[{t, d}] = e1;
            table.e2[{t, d}] = dga.homology_dimension(at);
            // h0^k q1^{2a} q2^eps (sphere) or h0^k q1^a q2^eps (mod 2).
            int pred = 0;
            for (int eps = 0; eps <= 1; ++eps) {
                const int rd = d - 6 * eps, rt = t - eps;
                if (rd >= 0 && rt >= 0 && rd == 2 * rt && (mod2 || rt % 2 == 0))
                    ++pred;
            }
            table.predicted[{t, d}] = pred;
        }
    return table;
}

int sphere_to_moore_rank(const LocalizedD1& sphere, const LocalizedD1& moore, int t, int d, int max_d)
{
    const LaurentDGA src = localized_novikov_e1(false, sphere, max_d);
    const LaurentDGA dst = localized_novikov_e1(true, moore, max_d);
    const LaurentDGA::Degree at{0, t, d};
    std::vector<std::vector<LaurentDGA::Exponents>> images;
    for (const auto& cycle : src.homology_basis(at)) {
        std::vector<LaurentDGA::Exponents> image;
        for (auto e : cycle) {
            e[1] *= 2;  // q_1^2 -> q_1 * q_1
            image.push_back(e);
        }
        std::sort(image.begin(), image.end());
        images.push_back(image);
    }
    return dst.rank_in_homology(images, at);
}

}  // namespace ank

namespace ank {

std::vector<Cochain<LocalRational>> bp_permanent_cocycles(const BPAlgebroid& bp)
{
    const auto& v = *bp.prefix_ctx();
    const auto& t = *bp.word_ctx();
    auto V = [&](int i, int e = 1) { return v.generator(FamilyId::V, i, e); };
    auto T = [&](int i, int e = 1) { return t.generator(FamilyId::T, i, e); };
    auto make = [&](std::initializer_list<std::tuple<LocalRational, Monomial, Word>> terms) {
        Cochain<LocalRational> z(bp.prefix_ctx(), bp.word_ctx());
        for (const auto& [c, m, w] : terms)
            z.add(m, w, c);
        return z;
    };
    const Monomial one;
    std::vector<Cochain<LocalRational>> out;
    out.push_back(make({{LocalRational(1), one, Word{}}}));
    out.push_back(make({{LocalRational(1), one, Word{T(1)}}}));
    out.push_back(make({{LocalRational(1), V(1, 2), Word{T(1)}},
                        {LocalRational(2), V(1), Word{T(1, 2)}},
                        {LocalRational::from(Rational(4, 3)), one, Word{T(1, 3)}}}));
    out.push_back(make({{LocalRational(1), V(2), Word{T(1), T(1)}},
                        {LocalRational(1), V(1), Word{T(1), T(1, 3)}},
                        {LocalRational(-1), V(1), Word{T(1, 2), T(1, 2)}},
                        {LocalRational(1), V(1), Word{T(1, 3), T(1)}},
                        {LocalRational(-3), V(1), Word{T(1), T(2)}},
                        {LocalRational(2), one, Word{T(1), T(1) * T(2)}},
                        {LocalRational(2), one, Word{T(1, 2), T(1, 3)}},
                        {LocalRational(-2), one, Word{T(1, 2), T(2)}},
                        {LocalRational(2), one, Word{T(1) * T(2), T(1)}}}));
    return out;
}

std::vector<Cochain<F2>> pq_permanent_cocycles(const PQAlgebroid& pq)
{
    const auto& q = *pq.prefix_ctx();
    const auto& z = *pq.word_ctx();
    auto Q = [&](int i, int e = 1) { return q.generator(FamilyId::Q, i, e); };
    auto Z = [&](int i, int e = 1) { return z.generator(FamilyId::Zeta, i, e); };
    const Monomial one;
    std::vector<Cochain<F2>> out;
    out.push_back(make_cochain(pq, {{one, Word{}}}));
    out.push_back(make_cochain(pq, {{one, Word{Z(1)}}}));
    out.push_back(make_cochain(pq, {{Q(1, 2), Word{Z(1)}}, {Q(0) * Q(1), Word{Z(1, 2)}}, {Q(0, 2), Word{Z(1, 3)}}}));
    out.push_back(make_cochain(pq, {{Q(2), Word{Z(1), Z(1)}},
                                    {Q(1), Word{Z(1), Z(1, 3)}},
                                    {Q(1), Word{Z(1, 2), Z(1, 2)}},
                                    {Q(1), Word{Z(1, 3), Z(1)}},
                                    {Q(1), Word{Z(1), Z(2)}},
                                    {Q(0), Word{Z(1), Z(1) * Z(2)}},
                                    {Q(0), Word{Z(1, 2), Z(1, 3)}},
                                    {Q(0), Word{Z(1, 2), Z(2)}},
                                    {Q(0), Word{Z(1) * Z(2), Z(1)}}}));
    return out;
}

Cochain<F2> massey_witness(const PQAlgebroid& pq)
{
    const auto& q = *pq.prefix_ctx();
    const auto& z = *pq.word_ctx();
    auto Q = [&](int i) { return q.generator(FamilyId::Q, i); };
    auto Z = [&](int i, int e = 1) { return z.generator(FamilyId::Zeta, i, e); };
    return make_cochain(pq, {{Q(2), Word{Z(1)}}, {Q(1), Word{Z(2)}}, {Q(1), Word{Z(1, 3)}}, {Q(0), Word{Z(1) * Z(2)}}});
}

}  // namespace ank
