#include "ank/grading.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <functional>

namespace ank {

std::string to_string(const MultiDegree& d)
{
    if (d.w)
        return fmt::format("(s={},t={},u={},w={})", d.s, d.t, d.u, *d.w);
    return fmt::format("(s={},t={},u={})", d.s, d.t, d.u);
}

int GeneratorFamily::degree(int i) const
{
    switch (id) {
    case FamilyId::MotTau:
        return 0;
    case FamilyId::Tau:
        return (1 << (i + 1)) - 1;
    default:
        return 2 * ((1 << i) - 1);
    }
}

int GeneratorFamily::weight(int i) const
{
    switch (id) {
    case FamilyId::Xi:
    case FamilyId::Tau:
        return (1 << i) - 1;
    case FamilyId::MotTau:
        return -1;
    default:
        return 0;
    }
}

const char* GeneratorFamily::symbol() const
{
    switch (id) {
    case FamilyId::Zeta: return "zeta";
    case FamilyId::Q: return "q";
    case FamilyId::V: return "v";
    case FamilyId::M: return "m";
    case FamilyId::T: return "t";
    case FamilyId::Xi: return "xi";
    case FamilyId::Tau: return "tau";
    case FamilyId::MotTau: return "T";
    }
    return "?";
}

int GeneratorFamily::truncation_index(int max_u) const
{
    if (id == FamilyId::MotTau)
        return 0;
    int i = first_index();
    while (degree(i) <= max_u && i < 30)
        ++i;
    return i - 1;
}

int Monomial::total_exponent() const
{
    int r = 0;
    for (auto x : e)
        r += x;
    return r;
}

Monomial Monomial::operator*(const Monomial& o) const
{
    Monomial r;
    for (std::size_t i = 0; i < kMaxSlots; ++i) {
        int x = e[i] + o.e[i];
        if (x > 255)
            throw TruncationError("monomial exponent overflow");
        r.e[i] = static_cast<std::uint8_t>(x);
    }
    r.deg = static_cast<std::uint16_t>(deg + o.deg);
    return r;
}

bool Monomial::divides(const Monomial& o) const
{
    for (std::size_t i = 0; i < kMaxSlots; ++i)
        if (e[i] > o.e[i])
            return false;
    return true;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept
{
    std::uint64_t a = 0, b = 0;
    for (std::size_t i = 0; i < 8; ++i) {
        a = (a << 8) | m.e[i];
        b = (b << 8) | m.e[i + 8];
    }
    std::uint64_t h = a * 0x9E3779B97F4A7C15ULL ^ (b + 0x632BE59BD9B4E019ULL + (a << 6) + (a >> 2));
    return static_cast<std::size_t>(h ^ (h >> 29));
}

RingContext::RingContext(std::vector<FamilyId> families, int max_u) : families_(std::move(families)), max_u_(max_u)
{
    if (max_u < 0)
        throw ContextError("negative max_u");
    for (FamilyId f : families_) {
        GeneratorFamily fam{f};
        int first = fam.first_index();
        int last = fam.truncation_index(max_u);
        family_slots_.emplace_back(static_cast<int>(vars_.size()), std::max(0, last - first + 1));
        for (int i = first; i <= last; ++i)
            vars_.push_back(Variable{fam, i, fam.degree(i)});
    }
    if (vars_.size() > kMaxSlots)
        throw TruncationError(fmt::format("context needs {} slots, at most {} supported", vars_.size(), kMaxSlots));
}

int RingContext::family_pos(FamilyId f) const
{
    for (std::size_t i = 0; i < families_.size(); ++i)
        if (families_[i] == f)
            return static_cast<int>(i);
    throw ContextError(fmt::format("family {} not in context", GeneratorFamily{f}.symbol()));
}

int RingContext::truncation_index(FamilyId f) const
{
    GeneratorFamily fam{f};
    return fam.first_index() + family_slots_[family_pos(f)].second - 1;
}

int RingContext::slot(FamilyId f, int i) const
{
    auto [start, count] = family_slots_[family_pos(f)];
    int k = i - GeneratorFamily{f}.first_index();
    if (k < 0 || k >= count)
        throw TruncationError(fmt::format("{}_{} exceeds truncation at max_u={}", GeneratorFamily{f}.symbol(), i, max_u_));
    return start + k;
}

Monomial RingContext::generator(FamilyId f, int i, int power) const
{
    Monomial m;
    int sl = slot(f, i);
    m.e[sl] = static_cast<std::uint8_t>(power);
    m.deg = static_cast<std::uint16_t>(vars_[sl].degree * power);
    return m;
}

Monomial RingContext::make(std::initializer_list<std::pair<int, int>> slot_powers) const
{
    Monomial m;
    for (auto [sl, p] : slot_powers)
        m.e[sl] = static_cast<std::uint8_t>(m.e[sl] + p);
    m.deg = static_cast<std::uint16_t>(degree(m));
    return m;
}

int RingContext::degree(const Monomial& m) const
{
    int d = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        d += m.e[i] * vars_[i].degree;
    return d;
}

int RingContext::family_exponent(const Monomial& m, FamilyId f) const
{
    auto [start, count] = family_slots_[family_pos(f)];
    int r = 0;
    for (int i = start; i < start + count; ++i)
        r += m.e[i];
    return r;
}

int RingContext::weight(const Monomial& m) const
{
    int w = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        w += m.e[i] * vars_[i].family.weight(vars_[i].index);
    return w;
}

std::string RingContext::format(const Monomial& m) const
{
    std::string out;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (!m.e[i])
            continue;
        out += fmt::format("{}{}", vars_[i].family.symbol(), vars_[i].index);
        if (m.e[i] > 1)
            out += fmt::format("^{}", m.e[i]);
    }
    return out.empty() ? "1" : out;
}

RingContextPtr make_context(std::vector<FamilyId> families, int max_u)
{
    return std::make_shared<const RingContext>(std::move(families), max_u);
}

std::vector<Monomial> enumerate_basis(const RingContext& ctx, int u, std::optional<int> t)
{
    if (u > ctx.max_u())
        throw TruncationError(fmt::format("degree {} exceeds max_u={}", u, ctx.max_u()));
    const auto& vars = ctx.variables();
    bool has_zero_degree = std::any_of(vars.begin(), vars.end(), [](const Variable& v) { return v.degree == 0; });
    if (has_zero_degree && !t)
        throw ContextError("degree-zero generator present: a Novikov degree t is required");
    bool track_t = t.has_value();

    std::vector<Monomial> out;
    if (u < 0 || (track_t && *t < 0))
        return out;
    Monomial cur;
    // Depth-first over slots; higher slots first so that remaining degree in
    // low slots (degree-zero q_0 last) closes the Novikov count.
    std::function<void(int, int, int)> rec = [&](int slot, int remaining_u, int remaining_t) {
        if (slot < 0) {
            if (remaining_u == 0 && (!track_t || remaining_t == 0)) {
                cur.deg = static_cast<std::uint16_t>(u);
                out.push_back(cur);
            }
            return;
        }
        const Variable& var = vars[slot];
        bool counts_t = track_t && var.family.id == FamilyId::Q;
        if (var.degree == 0) {
            int p = counts_t ? remaining_t : 0;
            if (remaining_u == 0 && p <= 255) {
                cur.e[slot] = static_cast<std::uint8_t>(p);
                rec(slot - 1, 0, counts_t ? 0 : remaining_t);
                cur.e[slot] = 0;
            }
            return;
        }
        for (int p = 0; p * var.degree <= remaining_u; ++p) {
            if (counts_t && p > remaining_t)
                break;
            cur.e[slot] = static_cast<std::uint8_t>(p);
            rec(slot - 1, remaining_u - p * var.degree, counts_t ? remaining_t - p : remaining_t);
        }
        cur.e[slot] = 0;
    };
    // If t is given but the context has no Q family, t is ignored.
    bool has_q = std::find(ctx.families().begin(), ctx.families().end(), FamilyId::Q) != ctx.families().end();
    if (!has_q)
        track_t = false;
    rec(static_cast<int>(vars.size()) - 1, u, track_t ? *t : 0);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ank
