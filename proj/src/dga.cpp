#include "ank/dga.hpp"

#include "ank/linalg.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <functional>
#include <numeric>

namespace ank {

namespace {

int dot(const std::vector<int>& a, const std::vector<int>& b)
{
    return std::inner_product(a.begin(), a.end(), b.begin(), 0);
}

}  // namespace

LaurentDGA::LaurentDGA(Generator laurent, std::vector<Generator> gens, Degree filter, Degree d_degree)
    : laurent_(std::move(laurent)), gens_(std::move(gens)), filter_(std::move(filter)), d_degree_(std::move(d_degree))
{
    const std::size_t dim = filter_.size();
    if (laurent_.degree.size() != dim || d_degree_.size() != dim)
        throw GradingError("DGA degree vectors disagree in length");
    if (dot(filter_, laurent_.degree) != 0)
        throw GradingError("filter must vanish on the Laurent generator");
    for (const auto& g : gens_)
        if (g.degree.size() != dim || dot(filter_, g.degree) <= 0)
            throw GradingError("filter must be positive on generator " + g.name);
    laurent_axis_ = dim;
    for (std::size_t i = 0; i < dim; ++i)
        if (laurent_.degree[i] != 0) {
            laurent_axis_ = i;
            break;
        }
    if (laurent_axis_ == dim)
        throw GradingError("Laurent generator has degree zero");
    d_.assign(gens_.size(), {});
}

void LaurentDGA::set_differential(std::size_t gen, std::vector<Exponents> value)
{
    Degree want = shift(gens_.at(gen).degree, d_degree_, 1);
    for (const auto& e : value)
        if (degree_of(e) != want)
            throw GradingError(fmt::format("d({}) has a term of the wrong degree", gens_[gen].name));
    d_[gen] = std::move(value);
}

LaurentDGA::Degree LaurentDGA::shift(const Degree& a, const Degree& b, int sign) const
{
    Degree r = a;
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] += sign * b[i];
    return r;
}

LaurentDGA::Degree LaurentDGA::degree_of(const Exponents& e) const
{
    Degree r(filter_.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = e[0] * laurent_.degree[i];
        for (std::size_t j = 0; j < gens_.size(); ++j)
            r[i] += e[j + 1] * gens_[j].degree[i];
    }
    return r;
}

std::vector<LaurentDGA::Exponents> LaurentDGA::monomials(const Degree& total) const
{
    std::vector<Exponents> out;
    const int f = dot(filter_, total);
    if (f < 0)
        return out;
    Exponents cur(gens_.size() + 1, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t j, int left) {
        if (j == gens_.size()) {
            if (left != 0)
                return;
            Degree rest = total;
            for (std::size_t i = 0; i < rest.size(); ++i)
                for (std::size_t g = 0; g < gens_.size(); ++g)
                    rest[i] -= cur[g + 1] * gens_[g].degree[i];
            const int ld = laurent_.degree[laurent_axis_];
            if (rest[laurent_axis_] % ld != 0)
                return;
            const int k = rest[laurent_axis_] / ld;
            for (std::size_t i = 0; i < rest.size(); ++i)
                if (rest[i] != k * laurent_.degree[i])
                    return;
            cur[0] = k;
            out.push_back(cur);
            return;
        }
        const int fg = dot(filter_, gens_[j].degree);
        const int cap = gens_[j].max_exponent;
        for (int k = 0; k * fg <= left && (cap < 0 || k <= cap); ++k) {
            cur[j + 1] = k;
            rec(j + 1, left - k * fg);
        }
        cur[j + 1] = 0;
    };
    rec(0, f);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<LaurentDGA::Exponents> LaurentDGA::apply(const Exponents& e) const
{
    std::map<Exponents, bool> acc;
    for (std::size_t j = 0; j < gens_.size(); ++j) {
        if (e[j + 1] % 2 == 0)
            continue;  // d(x^{2m}) = 0 in characteristic 2
        for (const auto& term : d_[j]) {
            Exponents f = e;
            f[j + 1] -= 1;
            bool vanishes = false;
            for (std::size_t i = 0; i < f.size(); ++i) {
                f[i] += term[i];
                if (i > 0 && gens_[i - 1].max_exponent >= 0 && f[i] > gens_[i - 1].max_exponent)
                    vanishes = true;
            }
            if (!vanishes)
                acc[f] = !acc[f];
        }
    }
    std::vector<Exponents> out;
    for (const auto& [f, b] : acc)
        if (b)
            out.push_back(f);
    return out;
}

std::vector<LaurentDGA::Exponents> LaurentDGA::apply(const std::vector<Exponents>& x) const
{
    std::map<Exponents, bool> acc;
    for (const auto& e : x)
        for (const auto& f : apply(e))
            acc[f] = !acc[f];
    std::vector<Exponents> out;
    for (const auto& [f, b] : acc)
        if (b)
            out.push_back(f);
    return out;
}

std::size_t LaurentDGA::rank_out(const Degree& total) const
{
    const auto src = monomials(total);
    const auto dst = monomials(shift(total, d_degree_, 1));
    RowReducer r(dst.size());
    for (const auto& e : src) {
        BitVec v(dst.size());
        for (const auto& f : apply(e)) {
            auto it = std::lower_bound(dst.begin(), dst.end(), f);
            if (it == dst.end() || *it != f)
                throw GradingError("differential leaves its target degree");
            v.flip(static_cast<std::size_t>(it - dst.begin()));
        }
        r.insert(v);
    }
    return r.rank();
}

int LaurentDGA::homology_dimension(const Degree& total) const
{
    const int n = chain_dimension(total);
    return n - static_cast<int>(rank_out(total)) - static_cast<int>(rank_out(shift(total, d_degree_, -1)));
}

namespace {

BitVec chain_vector(const std::vector<LaurentDGA::Exponents>& basis, const std::vector<LaurentDGA::Exponents>& x)
{
    BitVec v(basis.size());
    for (const auto& e : x) {
        auto it = std::lower_bound(basis.begin(), basis.end(), e);
        if (it == basis.end() || *it != e)
            throw GradingError("chain term outside its degree");
        v.flip(static_cast<std::size_t>(it - basis.begin()));
    }
    return v;
}

}  // namespace

std::vector<std::vector<LaurentDGA::Exponents>> LaurentDGA::homology_basis(const Degree& total) const
{
    const auto here = monomials(total);
    const auto below = monomials(shift(total, d_degree_, -1));
    const auto above = monomials(shift(total, d_degree_, 1));
    RowReducer boundaries(here.size());
    for (const auto& e : below)
        boundaries.insert(chain_vector(here, apply(e)));
    RowReducer images(above.size(), true);
    RowReducer classes(here.size());
    std::vector<std::vector<Exponents>> out;
    for (std::size_t i = 0; i < here.size(); ++i) {
        BitVec rel;
        if (images.insert(chain_vector(above, apply(here[i])), &rel))
            continue;
        BitVec w(here.size());
        std::vector<Exponents> cycle;
        for (std::size_t j = rel.next_set(0); j < rel.size(); j = rel.next_set(j + 1)) {
            w.flip(j);
            cycle.push_back(here[j]);
        }
        boundaries.reduce(w);
        if (w.any() && classes.insert(w))
            out.push_back(cycle);
    }
    return out;
}

int LaurentDGA::rank_in_homology(const std::vector<std::vector<Exponents>>& cycles, const Degree& total) const
{
    const auto here = monomials(total);
    const auto below = monomials(shift(total, d_degree_, -1));
    RowReducer span(here.size());
    for (const auto& e : below)
        span.insert(chain_vector(here, apply(e)));
    const std::size_t base = span.rank();
    for (const auto& c : cycles) {
        if (!apply(c).empty())
            throw CertificationError("rank_in_homology was given a non-cycle");
        span.insert(chain_vector(here, c));
    }
    return static_cast<int>(span.rank() - base);
}

bool LaurentDGA::d_squared_zero(const Degree& total) const
{
    for (const auto& e : monomials(total))
        if (!apply(apply(e)).empty())
            return false;
    return true;
}

std::string LaurentDGA::format(const Exponents& e) const
{
    std::string s;
    auto put = [&](const std::string& name, int k) {
        if (k == 0)
            return;
        if (!s.empty())
            s += ' ';
        s += k == 1 ? name : fmt::format("{}^{}", name, k);
    };
    put(laurent_.name, e[0]);
    for (std::size_t j = 0; j < gens_.size(); ++j)
        put(gens_[j].name, e[j + 1]);
    return s.empty() ? "1" : s;
}

}  // namespace ank
