#include "ank/ext.hpp"

#include <fmt/format.h>

namespace ank {

namespace {

BitVec resized(const BitVec& v, std::size_t n)
{
    BitVec r(n);
    for (std::size_t i = v.next_set(0); i < v.size(); i = v.next_set(i + 1))
        r.set(i);
    return r;
}

BitVec row_vector(const ComplexBlock& b, std::size_t i, std::size_t target)
{
    BitVec v(target);
    for (int j : b.d_out[i])
        v.set(static_cast<std::size_t>(j));
    return v;
}

}  // namespace

bool MasseyCoset::contains(const ExtClass& x) const
{
    if (!(x.degree == representative.degree))
        return false;
    RowReducer r(x.coords.size());
    for (const auto& v : indeterminacy)
        r.insert(v);
    BitVec diff = x.coords;
    diff ^= representative.coords;
    return r.in_span(diff);
}

ExtEngine::ExtEngine(std::shared_ptr<const PQAlgebroid> pq, std::size_t budget) : pq_(std::move(pq)), budget_(budget) {}

ComplexBlock& ExtEngine::block_mut(int s, int t, int u)
{
    auto key = std::make_tuple(s, t, u);
    auto it = blocks_.find(key);
    if (it != blocks_.end())
        return *it->second;
    auto b = std::make_unique<ComplexBlock>(
        make_block(MultiDegree{s, t, u, std::nullopt}, pq_basis(*pq_, s, t, u, budget_)));
    return *blocks_.emplace(key, std::move(b)).first->second;
}

const ComplexBlock& ExtEngine::block(int s, int t, int u)
{
    ComplexBlock& b = block_mut(s, t, u);
    if (b.d_out.size() != b.size()) {
        const ComplexBlock& next = block_mut(s + 1, t, u);
        attach_differential(*pq_, b, next);
    }
    return b;
}

const ExtBlock& ExtEngine::ext(int s, int t, int u)
{
    auto key = std::make_tuple(s, t, u);
    auto it = ext_.find(key);
    if (it != ext_.end())
        return *it->second;

    const ComplexBlock& c = block(s, t, u);
    const std::size_t n = c.size();
    const std::size_t next = block_mut(s + 1, t, u).size();
    auto e = std::make_unique<ExtBlock>();
    e->degree = MultiDegree{s, t, u, std::nullopt};
    e->boundaries = RowReducer(n);
    e->classes = RowReducer(n, true);
    if (s >= 1) {
        const ComplexBlock& prev = block(s - 1, t, u);
        for (std::size_t i = 0; i < prev.size(); ++i)
            e->boundaries.insert(row_vector(prev, i, n));
    }
    e->boundary_dim = e->boundaries.rank();

    RowReducer images(next, true);
    for (std::size_t i = 0; i < n; ++i) {
        BitVec rel;
        if (images.insert(row_vector(c, i, next), &rel))
            continue;
        ++e->cocycle_dim;
        BitVec k = resized(rel, n);
        BitVec w = k;
        e->boundaries.reduce(w);
        if (!w.any())
            continue;
        if (e->classes.insert(w)) {
            e->rep_vectors.push_back(k);
            e->representatives.push_back(from_vector(c, k, pq_->prefix_ctx(), pq_->word_ctx()));
        }
    }
    e->dimension = static_cast<int>(e->representatives.size());
    if (e->cocycle_dim != e->boundary_dim + static_cast<std::size_t>(e->dimension))
        throw CertificationError(fmt::format("rank bookkeeping failed at {}", to_string(e->degree)));
    return *ext_.emplace(key, std::move(e)).first->second;
}

std::map<std::tuple<int, int, int>, const ExtBlock*> ExtEngine::cohomology(const Region& r)
{
    std::map<std::tuple<int, int, int>, const ExtBlock*> out;
    for (int u = 0; u <= std::min(r.max_u, max_u()); u += 2)
        for (int s = 0; s <= r.max_s; ++s)
            for (int t = 0; t <= r.max_t; ++t)
                if (r.contains(s, t, u))
                    out[{s, t, u}] = &ext(s, t, u);
    return out;
}

MultiDegree ExtEngine::degree_of(const Cochain<F2>& z) const
{
    if (z.is_zero())
        throw GradingError("degree of the zero cochain is undefined");
    std::optional<MultiDegree> d;
    for (const auto& [k, c] : z.terms()) {
        int u = k.prefix.deg;
        for (const auto& m : k.word)
            u += m.deg;
        MultiDegree here{static_cast<int>(k.word.size()), pq_->prefix_ctx()->family_exponent(k.prefix, FamilyId::Q), u,
                         std::nullopt};
        if (d && !(*d == here))
            throw GradingError("inhomogeneous cochain");
        d = here;
    }
    return *d;
}

bool ExtEngine::is_cocycle(const Cochain<F2>& z)
{
    return differential(*pq_, z).is_zero();
}

ExtClass ExtEngine::zero_class(int s, int t, int u)
{
    return ExtClass{MultiDegree{s, t, u, std::nullopt}, BitVec(static_cast<std::size_t>(ext(s, t, u).dimension)), ""};
}

ExtClass ExtEngine::basis_class(int s, int t, int u, int i)
{
    ExtClass x = zero_class(s, t, u);
    x.coords.set(static_cast<std::size_t>(i));
    return x;
}

ExtClass ExtEngine::express(const Cochain<F2>& z, MultiDegree deg)
{
    const ExtBlock& e = ext(deg.s, deg.t, deg.u);
    if (z.is_zero())
        return zero_class(deg.s, deg.t, deg.u);
    const ComplexBlock& c = block(deg.s, deg.t, deg.u);
    BitVec v = to_vector(c, z);
    BitVec dz(block_mut(deg.s + 1, deg.t, deg.u).size());
    for (std::size_t i = v.next_set(0); i < v.size(); i = v.next_set(i + 1))
        for (int j : c.d_out[i])
            dz.flip(static_cast<std::size_t>(j));
    if (dz.any())
        throw CertificationError(fmt::format("not a cocycle: {}", z.str()));
    e.boundaries.reduce(v);
    BitVec tag = e.classes.reduce(v);
    if (v.any())
        throw CertificationError("cocycle outside boundaries + representatives");
    return ExtClass{deg, resized(tag, static_cast<std::size_t>(e.dimension)), ""};
}

ExtClass ExtEngine::express(const Cochain<F2>& z)
{
    return express(z, degree_of(z));
}

Cochain<F2> ExtEngine::representative(const ExtClass& x)
{
    const ExtBlock& e = ext(x.degree.s, x.degree.t, x.degree.u);
    Cochain<F2> r = zero();
    for (std::size_t i = x.coords.next_set(0); i < x.coords.size(); i = x.coords.next_set(i + 1))
        r += e.representatives[i];
    return r;
}

void ExtEngine::check_region(int s, int t, int u) const
{
    if (u > pq_->prefix_ctx()->max_u() || (region_ && !region_->contains(s, t, u)))
        throw RegionError(fmt::format("tridegree (s={},t={},u={}) outside the computed region", s, t, u));
}

ExtClass ExtEngine::product(const ExtClass& a, const ExtClass& b)
{
    MultiDegree d = a.degree + b.degree;
    check_region(d.s, d.t, d.u);
    Cochain<F2> z = ank::product(*pq_, representative(a), representative(b));
    return express(z, d);
}

std::optional<Cochain<F2>> ExtEngine::solve_coboundary(const Cochain<F2>& z)
{
    if (z.is_zero())
        return zero();
    MultiDegree d = degree_of(z);
    if (d.s == 0)
        return std::nullopt;
    auto key = std::make_tuple(d.s - 1, d.t, d.u);
    const ComplexBlock& prev = block(d.s - 1, d.t, d.u);
    const ComplexBlock& cur = block_mut(d.s, d.t, d.u);
    auto it = solvers_.find(key);
    if (it == solvers_.end()) {
        auto r = std::make_unique<RowReducer>(cur.size(), true);
        for (std::size_t i = 0; i < prev.size(); ++i)
            r->insert(row_vector(prev, i, cur.size()));
        it = solvers_.emplace(key, std::move(r)).first;
    }
    BitVec v = to_vector(cur, z);
    BitVec tag = it->second->reduce(v);
    if (v.any())
        return std::nullopt;
    return from_vector(prev, resized(tag, prev.size()), pq_->prefix_ctx(), pq_->word_ctx());
}

MasseyCoset ExtEngine::massey(const ExtClass& a, const ExtClass& b, const ExtClass& c)
{
    Cochain<F2> ra = representative(a), rb = representative(b), rc = representative(c);
    MultiDegree home = a.degree + b.degree + c.degree;
    home.s -= 1;
    check_region(home.s, home.t, home.u);

    auto ab = ank::product(*pq_, ra, rb);
    auto bc = ank::product(*pq_, rb, rc);
    std::optional<Cochain<F2>> u = ab.is_zero() ? std::optional<Cochain<F2>>(zero()) : solve_coboundary(ab);
    std::optional<Cochain<F2>> v = bc.is_zero() ? std::optional<Cochain<F2>>(zero()) : solve_coboundary(bc);
    if (!u || !v)
        throw NotDefinedError("Massey product undefined: a*b or b*c is nonzero");

    Cochain<F2> z = ank::product(*pq_, *u, rc) + ank::product(*pq_, ra, *v);
    MasseyCoset out;
    out.cochain = z;
    out.representative = express(z, home);

    // Indeterminacy a * H^{|b|+|c|-1} + H^{|a|+|b|-1} * c.
    RowReducer span(out.representative.coords.size());
    auto absorb = [&](const ExtClass& x) {
        if (span.insert(x.coords))
            out.indeterminacy.push_back(x.coords);
    };
    MultiDegree bcd = b.degree + c.degree;
    bcd.s -= 1;
    if (bcd.s >= 0)
        for (int i = 0; i < ext(bcd.s, bcd.t, bcd.u).dimension; ++i)
            absorb(product(a, basis_class(bcd.s, bcd.t, bcd.u, i)));
    MultiDegree abd = a.degree + b.degree;
    abd.s -= 1;
    if (abd.s >= 0)
        for (int i = 0; i < ext(abd.s, abd.t, abd.u).dimension; ++i)
            absorb(product(basis_class(abd.s, abd.t, abd.u, i), c));
    return out;
}

Cochain<F2> make_cochain(const PQAlgebroid& pq, const std::vector<std::pair<Monomial, Word>>& terms)
{
    Cochain<F2> z(pq.prefix_ctx(), pq.word_ctx());
    for (const auto& [p, w] : terms)
        z.add(p, w, F2::one());
    return z;
}

Cochain<F2> q0_power(const PQAlgebroid& pq, int t)
{
    Monomial m = t == 0 ? Monomial{} : pq.prefix_ctx()->generator(FamilyId::Q, 0, t);
    return make_cochain(pq, {{m, Word{}}});
}

Cochain<F2> h_cochain(const PQAlgebroid& pq, int n)
{
    return make_cochain(pq, {{Monomial{}, Word{pq.word_ctx()->generator(FamilyId::Zeta, 1, 1 << n)}}});
}

}  // namespace ank
