#include "ank/tau_complex.hpp"

#include <algorithm>
#include <fmt/format.h>

namespace ank {

int TauModule::dimension(int w) const
{
    if (w > w_high)
        return 0;
    if (w < w_low)
        return free_rank;
    return dims.at(w);
}

void TauComplex::add_level(std::vector<int> weights)
{
    d_.emplace_back(weights.size());
    weights_.push_back(std::move(weights));
    slices_.clear();
}

void TauComplex::set_differential(int s, std::vector<std::vector<int>> d_out)
{
    const auto& src = weights(s);
    if (d_out.size() != src.size())
        throw GradingError("differential row count differs from the level size");
    if (!d_out.empty() && s + 1 >= levels())
        throw GradingError("differential out of the top level");
    for (std::size_t i = 0; i < d_out.size(); ++i)
        for (int j : d_out[i])
            if (weights(s + 1).at(static_cast<std::size_t>(j)) < src[i])
                throw GradingError(fmt::format("negative tau power in level {} differential", s));
    d_[static_cast<std::size_t>(s)] = std::move(d_out);
    slices_.clear();
}

namespace {

BitVec incidence_row(const std::vector<int>& targets, std::size_t n)
{
    BitVec v(n);
    for (int j : targets)
        v.flip(static_cast<std::size_t>(j));
    return v;
}

}  // namespace

bool TauComplex::is_cocycle(int s, const BitVec& v) const
{
    if (s + 1 >= levels())
        return true;
    BitVec dv(weights(s + 1).size());
    for (std::size_t i = v.next_set(0); i < v.size(); i = v.next_set(i + 1))
        dv ^= incidence_row(d_out(s)[i], dv.size());
    return !dv.any();
}

const TauComplex::Slice& TauComplex::slice(int s, int w) const
{
    auto key = std::make_pair(s, w);
    if (auto it = slices_.find(key); it != slices_.end())
        return *it->second;
    auto sl = std::make_unique<Slice>();
    sl->s = s;
    sl->w = w;
    const std::size_t n = s < levels() ? weights(s).size() : 0;
    sl->boundaries = RowReducer(n);
    sl->classes = RowReducer(n, true);
    if (s >= 1 && s < levels()) {
        const auto& prev = weights(s - 1);
        for (std::size_t i = 0; i < prev.size(); ++i)
            if (prev[i] >= w)
                sl->boundaries.insert(incidence_row(d_out(s - 1)[i], n));
    }
    if (n > 0) {
        const std::size_t next = s + 1 < levels() ? weights(s + 1).size() : 0;
        std::vector<std::size_t> order;
        RowReducer images(next, true);
        for (std::size_t i = 0; i < n; ++i) {
            if (weights(s)[i] < w)
                continue;
            order.push_back(i);
            BitVec rel;
            if (images.insert(incidence_row(d_out(s)[i], next), &rel))
                continue;
            BitVec z(n);
            for (std::size_t j = rel.next_set(0); j < rel.size(); j = rel.next_set(j + 1))
                z.flip(order[j]);
            BitVec r = z;
            sl->boundaries.reduce(r);
            if (r.any() && sl->classes.insert(r))
                sl->reps.push_back(z);
        }
    }
    return *slices_.emplace(key, std::move(sl)).first->second;
}

BitVec TauComplex::express(int s, int w, BitVec v) const
{
    const Slice& sl = slice(s, w);
    for (std::size_t i = v.next_set(0); i < v.size(); i = v.next_set(i + 1))
        if (weights(s)[i] < w)
            throw GradingError(fmt::format("cochain has support below weight {}", w));
    if (!is_cocycle(s, v))
        throw CertificationError(fmt::format("not a cocycle at level {}", s));
    sl.boundaries.reduce(v);
    BitVec tag = sl.classes.reduce(v);
    if (v.any())
        throw CertificationError("cocycle outside boundaries + representatives");
    BitVec out(static_cast<std::size_t>(sl.dimension()));
    for (std::size_t i = tag.next_set(0); i < tag.size(); i = tag.next_set(i + 1))
        out.set(i);
    return out;
}

TauMatrix TauComplex::tau_matrix(int s) const
{
    const auto& src = weights(s);
    const std::size_t cols = s + 1 < levels() ? weights(s + 1).size() : 0;
    TauMatrix m(src.size(), std::vector<TauPoly>(cols));
    for (std::size_t i = 0; i < src.size(); ++i)
        for (int j : d_out(s)[i])
            m[i][static_cast<std::size_t>(j)] =
                m[i][static_cast<std::size_t>(j)] + TauPoly::tau_pow(weights(s + 1)[static_cast<std::size_t>(j)] - src[i]);
    return m;
}

TauModule TauComplex::module(int s) const
{
    TauModule out;
    if (s >= levels() || weights(s).empty()) {
        out.snf_agrees = true;
        return out;
    }
    int lo = INT32_MAX, hi = INT32_MIN;
    for (int t = std::max(0, s - 1); t <= std::min(levels() - 1, s + 1); ++t)
        for (int w : weights(t))
            lo = std::min(lo, w);
    for (int w : weights(s))
        hi = std::max(hi, w);
    lo -= 1;  // below every generator weight tau acts bijectively
    out.w_low = lo;
    out.w_high = hi;
    for (int w = lo; w <= hi; ++w)
        out.dims[w] = dimension(s, w);

    // r(w, j): rank of tau^j from weight w to weight w - j.
    auto r = [&](int w, int j) -> int {
        if (w > hi)
            return 0;
        const Slice& from = slice(s, w);
        if (j == 0)
            return from.dimension();
        const Slice& to = slice(s, w - j);
        RowReducer img(weights(s).size());
        for (const auto& z : from.reps) {
            BitVec v = z;
            to.boundaries.reduce(v);
            img.insert(v);
        }
        return static_cast<int>(img.rank());
    };
    // Strings starting at weight w: start(w, >=k) = r(w, k-1) - r(w+1, k).
    for (int w = hi; w >= lo; --w) {
        const int reach = w - lo + 1;  // a string this long goes on forever
        std::vector<int> start(static_cast<std::size_t>(reach) + 2, 0);
        for (int k = 1; k <= reach; ++k)
            start[static_cast<std::size_t>(k)] = r(w, k - 1) - r(w + 1, k);
        for (int k = 1; k < reach; ++k) {
            int exact = start[static_cast<std::size_t>(k)] - start[static_cast<std::size_t>(k) + 1];
            for (int i = 0; i < exact; ++i)
                out.torsion.emplace_back(w, k);
        }
        for (int i = 0; i < start[static_cast<std::size_t>(reach)]; ++i)
            out.free_weights.push_back(w);
    }
    out.free_rank = static_cast<int>(out.free_weights.size());

    // Independent route: invariant factors over F_2[tau].
    const int n = static_cast<int>(weights(s).size());
    int rank_out = 0;
    if (s + 1 < levels())
        rank_out = static_cast<int>(snf_tau(tau_matrix(s), false).diagonal.size());
    std::vector<int> orders;
    int rank_in = 0;
    if (s >= 1) {
        for (const TauPoly& f : snf_tau(tau_matrix(s - 1), false).diagonal) {
            ++rank_in;
            if (f.bits() != TauPoly::tau_pow(f.degree()).bits())
                throw CertificationError("non-monomial invariant factor in a homogeneous complex");
            if (f.degree() > 0)
                orders.push_back(f.degree());
        }
    }
    std::vector<int> mine;
    for (const auto& [w, k] : out.torsion)
        mine.push_back(k);
    std::sort(orders.begin(), orders.end());
    std::sort(mine.begin(), mine.end());
    out.snf_agrees = (n - rank_out - rank_in == out.free_rank) && orders == mine;
    return out;
}

}  // namespace ank
