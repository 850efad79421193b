#include "ank/resolution.hpp"

#include <fmt/format.h>

namespace ank {

namespace {

std::uint64_t pair_key(int a, int b)
{
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

MotivicSteenrod::MotivicSteenrod(int max_u) : max_u_(max_u), a_(std::make_shared<const AMotStructure>(max_u))
{
    std::unordered_map<Monomial, int, MonomialHash> id;
    for (int u = 0; u <= max_u; ++u) {
        offset_.push_back(static_cast<int>(mono_.size()));
        std::vector<Monomial> b = u == 0 ? std::vector<Monomial>{Monomial{}} : a_->basis(u);
        for (const auto& m : b) {
            id.emplace(m, static_cast<int>(mono_.size()));
            mono_.push_back(m);
            deg_.push_back(u);
            wt_.push_back(a_->weight(m));
        }
    }
    offset_.push_back(static_cast<int>(mono_.size()));
    for (int m = 0; m < size(); ++m)
        for (const auto& t : a_->diagonal(mono_[static_cast<std::size_t>(m)])) {
            const int j = t.prefix.total_exponent();
            prod_[pair_key(id.at(t.left), id.at(t.right))].emplace_back(m, j);
        }
}

const std::vector<std::pair<int, int>>& MotivicSteenrod::product(int a, int b) const
{
    static const std::vector<std::pair<int, int>> kEmpty;
    auto it = prod_.find(pair_key(a, b));
    return it == prod_.end() ? kEmpty : it->second;
}

MotivicResolution::MotivicResolution(std::shared_ptr<const MotivicSteenrod> a, int max_s, int max_u)
    : a_(std::move(a)), max_s_(max_s), max_u_(max_u)
{
    if (max_u > a_->max_u())
        throw TruncationError(fmt::format("resolution to u={} needs the algebra to that degree", max_u));
    build();
}

const std::vector<int>& MotivicResolution::in_degree(int s, int u) const
{
    static const std::vector<int> kEmpty;
    if (s < 0 || s > max_s_ || u < 0 || u > max_u_)
        return kEmpty;
    return by_degree_[static_cast<std::size_t>(s)][static_cast<std::size_t>(u)];
}

MotivicResolution::Space MotivicResolution::space(int s, int u, int w) const
{
    Space sp;
    if (s < 0 || s > max_s_)
        return sp;
    const auto& gens = gens_[static_cast<std::size_t>(s)];
    for (int g = 0; g < static_cast<int>(gens.size()); ++g) {
        const Generator& gen = gens[static_cast<std::size_t>(g)];
        if (gen.u > u || gen.w > w)
            continue;
        auto [lo, hi] = a_->range(u - gen.u);
        for (int m = lo; m < hi; ++m)
            if (a_->weight(m) <= w - gen.w) {
                sp.index.emplace(std::make_pair(m, g), static_cast<int>(sp.basis.size()));
                sp.basis.emplace_back(m, g);
            }
    }
    return sp;
}

std::vector<std::pair<int, int>> MotivicResolution::apply_d(int s, int m, int g) const
{
    std::map<std::pair<int, int>, bool> acc;
    if (s >= 1)
        for (const auto& [m1, g1] : gens_[static_cast<std::size_t>(s)][static_cast<std::size_t>(g)].d)
            for (const auto& [m2, j] : a_->product(m, m1)) {
                (void)j;
                bool& b = acc[{m2, g1}];
                b = !b;
            }
    std::vector<std::pair<int, int>> out;
    for (const auto& [k, b] : acc)
        if (b)
            out.push_back(k);
    return out;
}

BitVec MotivicResolution::image_vector(int s, int m, int g, const Space& target) const
{
    BitVec v(target.basis.size());
    for (const auto& p : apply_d(s, m, g)) {
        auto it = target.index.find(p);
        if (it == target.index.end())
            throw GradingError("resolution differential leaves its bidegree");
        v.flip(static_cast<std::size_t>(it->second));
    }
    return v;
}

void MotivicResolution::build()
{
    gens_.assign(static_cast<std::size_t>(max_s_) + 1, {});
    gens_[0].push_back(Generator{0, 0, {}});
    for (int u = 0; u <= max_u_; ++u)
        for (int w = 0; 2 * w <= u; ++w)
            for (int s = 1; s <= max_s_; ++s) {
                const Space src = space(s - 1, u, w);
                if (src.basis.empty())
                    continue;
                std::vector<BitVec> kernel;
                if (s == 1) {
                    // ker of the augmentation F_0 -> M_2: all of positive degree.
                    if (u > 0)
                        for (std::size_t i = 0; i < src.basis.size(); ++i) {
                            BitVec v(src.basis.size());
                            v.set(i);
                            kernel.push_back(std::move(v));
                        }
                } else {
                    const Space tgt = space(s - 2, u, w);
                    RowReducer r(tgt.basis.size(), true);
                    for (const auto& [m, g] : src.basis) {
                        BitVec rel;
                        if (!r.insert(image_vector(s - 1, m, g, tgt), &rel)) {
                            BitVec k(src.basis.size());
                            for (std::size_t j = rel.next_set(0); j < rel.size(); j = rel.next_set(j + 1))
                                k.set(j);
                            kernel.push_back(std::move(k));
                        }
                    }
                }
                if (kernel.empty())
                    continue;
                const Space dom = space(s, u, w);
                RowReducer span(src.basis.size());
                for (const auto& [m, g] : dom.basis)
                    span.insert(image_vector(s, m, g, src));
                for (const auto& k : kernel) {
                    if (!span.insert(k))
                        continue;
                    Generator gen{u, w, {}};
                    for (std::size_t j = k.next_set(0); j < k.size(); j = k.next_set(j + 1))
                        gen.d.push_back(src.basis[j]);
                    gens_[static_cast<std::size_t>(s)].push_back(std::move(gen));
                }
            }

    by_degree_.assign(static_cast<std::size_t>(max_s_) + 1,
                      std::vector<std::vector<int>>(static_cast<std::size_t>(max_u_) + 1));
    for (int s = 0; s <= max_s_; ++s)
        for (int g = 0; g < static_cast<int>(gens_[static_cast<std::size_t>(s)].size()); ++g)
            by_degree_[static_cast<std::size_t>(s)][static_cast<std::size_t>(gens_[static_cast<std::size_t>(s)][static_cast<std::size_t>(g)].u)]
                .push_back(g);
    if (max_s_ >= 1)
        for (int g : in_degree(1, 2))
            if (gens_[1][static_cast<std::size_t>(g)].w == 1) {
                if (h0_gen_ >= 0)
                    throw CertificationError("two generators of F_1 in degree (2,1)");
                h0_gen_ = g;
            }
}

const TauComplex& MotivicResolution::hom_complex(int u) const
{
    if (auto it = complexes_.find(u); it != complexes_.end())
        return *it->second;
    auto c = std::make_unique<TauComplex>();
    std::vector<std::map<int, int>> local(static_cast<std::size_t>(max_s_) + 1);
    for (int s = 0; s <= max_s_; ++s) {
        std::vector<int> w;
        for (int g : in_degree(s, u)) {
            local[static_cast<std::size_t>(s)][g] = static_cast<int>(w.size());
            w.push_back(gens_[static_cast<std::size_t>(s)][static_cast<std::size_t>(g)].w);
        }
        c->add_level(std::move(w));
    }
    for (int s = 0; s < max_s_; ++s) {
        std::vector<std::vector<int>> d(in_degree(s, u).size());
        const auto& next = in_degree(s + 1, u);
        for (std::size_t j = 0; j < next.size(); ++j)
            for (const auto& [m, g] : gens_[static_cast<std::size_t>(s) + 1][static_cast<std::size_t>(next[j])].d)
                if (m == a_->unit())
                    d[static_cast<std::size_t>(local[static_cast<std::size_t>(s)].at(g))].push_back(static_cast<int>(j));
        c->set_differential(s, std::move(d));
    }
    return *complexes_.emplace(u, std::move(c)).first->second;
}

BitVec MotivicResolution::h0_times(int s, int u, int w, const BitVec& cocycle) const
{
    if (h0_gen_ < 0 || s + 1 > max_s_ || u + 2 > max_u_)
        throw RegionError(fmt::format("h0 product out of the resolved range at (s={},u={})", s, u));
    const auto& here = in_degree(s, u);
    std::map<int, bool> support;
    for (std::size_t i = cocycle.next_set(0); i < cocycle.size(); i = cocycle.next_set(i + 1))
        support[here[i]] = true;

    const auto& next = in_degree(s + 1, u + 2);
    BitVec out(next.size());
    std::map<int, std::pair<Space, std::unique_ptr<RowReducer>>> solvers;
    for (std::size_t j = 0; j < next.size(); ++j) {
        const Generator& G = gens_[static_cast<std::size_t>(s) + 1][static_cast<std::size_t>(next[j])];
        const int wt = G.w - w;  // weight of the lifted chain map's values in F_0
        if (wt < 1)
            continue;
        // z = Phi_0(d G) in F_0 at (2, wt), where Phi_0(g) = tau^(w(g) - w) g_0.
        const Space f0 = space(0, 2, wt);
        BitVec z(f0.basis.size());
        for (const auto& [m, g] : G.d)
            if (support.count(g) && gens_[static_cast<std::size_t>(s)][static_cast<std::size_t>(g)].u == u)
                z.flip(static_cast<std::size_t>(f0.index.at({m, 0})));
        if (!z.any())
            continue;
        auto it = solvers.find(wt);
        if (it == solvers.end()) {
            Space f1 = space(1, 2, wt);
            auto r = std::make_unique<RowReducer>(f0.basis.size(), true);
            for (const auto& [m, g] : f1.basis)
                r->insert(image_vector(1, m, g, f0));
            it = solvers.emplace(wt, std::make_pair(std::move(f1), std::move(r))).first;
        }
        BitVec tag = it->second.second->reduce(z);
        if (z.any())
            throw CertificationError("chain map lift failed: input is not a cocycle");
        const int slot = it->second.first.index.at({a_->unit(), h0_gen_});
        if (slot < static_cast<int>(tag.size()) && tag.get(static_cast<std::size_t>(slot)))
            out.set(j);
    }
    return out;
}

bool MotivicResolution::d_squared_zero() const
{
    for (int s = 2; s <= max_s_; ++s)
        for (const auto& g : gens_[static_cast<std::size_t>(s)]) {
            std::map<std::pair<int, int>, bool> acc;
            for (const auto& [m, h] : g.d)
                for (const auto& p : apply_d(s - 1, m, h)) {
                    bool& b = acc[p];
                    b = !b;
                }
            for (const auto& [p, b] : acc)
                if (b)
                    return false;
        }
    return true;
}

}  // namespace ank
