#include "ank/cobar.hpp"

#include <algorithm>
#include <fmt/format.h>

namespace ank {

namespace {

template <class C>
C minus_one()
{
    return C::from_int(-1);
}

template <class C>
void push_left(const Algebroid<C>& alg, Cochain<C>& out, const C& c, const Monomial& carry, const Monomial& coef,
               const Word& word, int gap, int cutoff)
{
    if (gap == 0 || coef.is_one()) {
        Monomial pre = carry * coef;
        if (alg.filtration(pre, c) < cutoff)
            out.add(pre, word, c);
        return;
    }
    for (const auto& u : alg.right_unit(coef)) {
        C c2 = c * u.coef;
        if (c2.is_zero())
            continue;
        Word w2 = word;
        auto [scalar, prod] = alg.multiply_word(w2[gap - 1], u.slot);
        w2[gap - 1] = prod;
        Monomial carry2 = scalar.is_one() ? carry : carry * scalar;
        if (alg.filtration(carry2 * u.prefix, c2) >= cutoff)
            continue;
        push_left(alg, out, c2, carry2, u.prefix, w2, gap - 1, cutoff);
    }
}

template <class C>
void canon_rec(const Algebroid<C>& alg, Cochain<C>& out, const C& c, std::vector<Monomial>& gaps, Word& word, int j)
{
    if (j == 0) {
        out.add(gaps[0], word, c);
        return;
    }
    Monomial a = gaps[j];
    if (a.is_one()) {
        canon_rec(alg, out, c, gaps, word, j - 1);
        return;
    }
    Monomial saved_gap = gaps[j - 1];
    Monomial saved_slot = word[j - 1];
    for (const auto& u : alg.right_unit(a)) {
        C c2 = c * u.coef;
        if (c2.is_zero())
            continue;
        auto [scalar, prod] = alg.multiply_word(saved_slot, u.slot);
        word[j - 1] = prod;
        gaps[j - 1] = saved_gap * u.prefix * scalar;
        canon_rec(alg, out, c2, gaps, word, j - 1);
    }
    gaps[j - 1] = saved_gap;
    word[j - 1] = saved_slot;
}

Monomial translate(const Monomial& m, const RingContext& from, const RingContext& to, FamilyId target)
{
    Monomial r;
    for (std::size_t sl = 0; sl < from.variables().size(); ++sl)
        if (m.e[sl]) {
            int dst = to.slot(target, from.variables()[sl].index);
            r.e[dst] = static_cast<std::uint8_t>(r.e[dst] + m.e[sl]);
        }
    r.deg = static_cast<std::uint16_t>(to.degree(r));
    return r;
}

Word translate(const Word& w, const RingContext& from, const RingContext& to, FamilyId target)
{
    Word r;
    r.reserve(w.size());
    for (const auto& m : w)
        r.push_back(translate(m, from, to, target));
    return r;
}

}  // namespace

AMotAlgebroid::AMotAlgebroid(std::shared_ptr<const AMotStructure> a) : a_(std::move(a))
{
    for (int k = 0; k < 256; ++k) {
        Monomial m = k == 0 ? Monomial{} : a_->scalar()->generator(FamilyId::MotTau, 0, k);
        units_.push_back({UnitTerm<F2>{F2::one(), m, Monomial{}}});
    }
}

const std::vector<UnitTerm<F2>>& AMotAlgebroid::right_unit(const Monomial& m) const
{
    return units_.at(m.total_exponent());
}

std::pair<Monomial, Monomial> AMotAlgebroid::multiply_word(const Monomial& a, const Monomial& b) const
{
    auto [k, prod] = a_->multiply(a, b);
    Monomial scalar = k == 0 ? Monomial{} : a_->scalar()->generator(FamilyId::MotTau, 0, k);
    return {scalar, prod};
}

template <class C>
Cochain<C> canonicalize(const Algebroid<C>& alg, const std::vector<RawTerm<C>>& raw)
{
    Cochain<C> out(alg.prefix_ctx(), alg.word_ctx());
    for (const auto& t : raw) {
        if (t.gaps.size() != t.word.size() + 1)
            throw GradingError("raw cochain term needs one coefficient per gap");
        std::vector<Monomial> gaps = t.gaps;
        Word word = t.word;
        canon_rec(alg, out, t.coef, gaps, word, static_cast<int>(word.size()));
    }
    return out;
}

template <class C>
Cochain<C> canonicalize(const Algebroid<C>& alg, const Cochain<C>& x)
{
    std::vector<RawTerm<C>> raw;
    for (const auto& [k, c] : x.terms()) {
        std::vector<Monomial> gaps(k.word.size() + 1);
        gaps[0] = k.prefix;
        raw.push_back(RawTerm<C>{c, std::move(gaps), k.word});
    }
    return canonicalize(alg, raw);
}

template <class C>
Cochain<C> differential(const Algebroid<C>& alg, const Cochain<C>& x, int cutoff)
{
    Cochain<C> out(alg.prefix_ctx(), alg.word_ctx());
    for (const auto& [k, c] : x.terms()) {
        for (const auto& u : alg.right_unit(k.prefix)) {
            if (u.slot.is_one())
                continue;
            C c2 = c * u.coef;
            if (alg.filtration(u.prefix, c2) >= cutoff)
                continue;
            Word w;
            w.reserve(k.word.size() + 1);
            w.push_back(u.slot);
            w.insert(w.end(), k.word.begin(), k.word.end());
            out.add(u.prefix, w, c2);
        }
        const std::size_t s = k.word.size();
        for (std::size_t i = 1; i <= s; ++i) {
            C sign_c = (i % 2 == 1) ? c * minus_one<C>() : c;
            for (const auto& d : alg.reduced_diagonal(k.word[i - 1])) {
                Word w;
                w.reserve(s + 1);
                w.insert(w.end(), k.word.begin(), k.word.begin() + static_cast<long>(i - 1));
                w.push_back(d.left);
                w.push_back(d.right);
                w.insert(w.end(), k.word.begin() + static_cast<long>(i), k.word.end());
                push_left(alg, out, sign_c * d.coef, k.prefix, d.prefix, w, static_cast<int>(i - 1), cutoff);
            }
        }
    }
    return out;
}

template <class C>
Cochain<C> product(const Algebroid<C>& alg, const Cochain<C>& x, const Cochain<C>& y, int cutoff)
{
    Cochain<C> out(alg.prefix_ctx(), alg.word_ctx());
    for (const auto& [kx, cx] : x.terms())
        for (const auto& [ky, cy] : y.terms()) {
            Word w = kx.word;
            w.insert(w.end(), ky.word.begin(), ky.word.end());
            push_left(alg, out, cx * cy, kx.prefix, ky.prefix, w, static_cast<int>(kx.word.size()), cutoff);
        }
    return out;
}

template <class C>
int filtration(const Algebroid<C>& alg, const Cochain<C>& x)
{
    int f = INT_MAX;
    for (const auto& [k, c] : x.terms())
        f = std::min(f, alg.filtration(k.prefix, c));
    return f;
}

template <class C>
Cochain<C> truncate_filtration(const Algebroid<C>& alg, const Cochain<C>& x, int cutoff)
{
    Cochain<C> out(alg.prefix_ctx(), alg.word_ctx());
    for (const auto& [k, c] : x.terms())
        if (alg.filtration(k.prefix, c) < cutoff)
            out.add(k, c);
    return out;
}

template Cochain<F2> canonicalize(const Algebroid<F2>&, const std::vector<RawTerm<F2>>&);
template Cochain<LocalRational> canonicalize(const Algebroid<LocalRational>&, const std::vector<RawTerm<LocalRational>>&);
template Cochain<F2> canonicalize(const Algebroid<F2>&, const Cochain<F2>&);
template Cochain<LocalRational> canonicalize(const Algebroid<LocalRational>&, const Cochain<LocalRational>&);
template Cochain<F2> differential(const Algebroid<F2>&, const Cochain<F2>&, int);
template Cochain<LocalRational> differential(const Algebroid<LocalRational>&, const Cochain<LocalRational>&, int);
template Cochain<F2> product(const Algebroid<F2>&, const Cochain<F2>&, const Cochain<F2>&, int);
template Cochain<LocalRational> product(const Algebroid<LocalRational>&, const Cochain<LocalRational>&,
                                        const Cochain<LocalRational>&, int);
template int filtration(const Algebroid<F2>&, const Cochain<F2>&);
template int filtration(const Algebroid<LocalRational>&, const Cochain<LocalRational>&);
template Cochain<F2> truncate_filtration(const Algebroid<F2>&, const Cochain<F2>&, int);
template Cochain<LocalRational> truncate_filtration(const Algebroid<LocalRational>&, const Cochain<LocalRational>&, int);

Cochain<F2> gr_project(const BPAlgebroid& bp, const PQAlgebroid& pq, const Cochain<LocalRational>& x, int f)
{
    const RingContext& v = *bp.prefix_ctx();
    const RingContext& t = *bp.word_ctx();
    const RingContext& q = *pq.prefix_ctx();
    const RingContext& z = *pq.word_ctx();
    Cochain<F2> out(pq.prefix_ctx(), pq.word_ctx());
    for (const auto& [k, c] : x.terms()) {
        int e = c.nu2();
        int tf = e + k.prefix.total_exponent();
        if (tf < f)
            throw FiltrationError(fmt::format("gr^{} of a term in filtration {}", f, tf));
        if (tf > f)
            continue;
        Monomial pre = translate(k.prefix, v, q, FamilyId::Q);
        if (e > 0)
            pre = pre * q.generator(FamilyId::Q, 0, e);
        out.add(pre, translate(k.word, t, z, FamilyId::Zeta), F2::one());
    }
    return out;
}

Cochain<F2> gr_project(const BPMod2Algebroid& bp, const PQAlgebroid& pq, const Cochain<F2>& x, int f)
{
    const RingContext& v = *bp.prefix_ctx();
    const RingContext& t = *bp.word_ctx();
    const RingContext& q = *pq.prefix_ctx();
    const RingContext& z = *pq.word_ctx();
    Cochain<F2> out(pq.prefix_ctx(), pq.word_ctx());
    for (const auto& [k, c] : x.terms()) {
        int tf = k.prefix.total_exponent();
        if (tf < f)
            throw FiltrationError(fmt::format("gr^{} of a term in filtration {}", f, tf));
        if (tf == f)
            out.add(translate(k.prefix, v, q, FamilyId::Q), translate(k.word, t, z, FamilyId::Zeta), c);
    }
    return out;
}

namespace {

// Split a Q-monomial into (q_0 exponent, q_0-free part).
std::pair<int, Monomial> split_q0(const RingContext& q, const Monomial& m)
{
    int sl = q.slot(FamilyId::Q, 0);
    int e = m.e[sl];
    Monomial rest = m;
    rest.e[sl] = 0;
    return {e, rest};
}

}  // namespace

Cochain<LocalRational> split_lift(const BPAlgebroid& bp, const Cochain<F2>& z)
{
    const RingContext& q = *z.prefix_ctx();
    const RingContext& zc = *z.word_ctx();
    Cochain<LocalRational> out(bp.prefix_ctx(), bp.word_ctx());
    for (const auto& [k, c] : z.terms()) {
        auto [e, rest] = split_q0(q, k.prefix);
        mpz_class two_e = 1;
        two_e <<= e;
        LocalRational coef = LocalRational::from(Rational(mpq_class(two_e)));
        out.add(translate(rest, q, *bp.prefix_ctx(), FamilyId::V), translate(k.word, zc, *bp.word_ctx(), FamilyId::T),
                coef);
    }
    return out;
}

Cochain<F2> split_lift(const BPMod2Algebroid& bp, const Cochain<F2>& z)
{
    const RingContext& q = *z.prefix_ctx();
    const RingContext& zc = *z.word_ctx();
    Cochain<F2> out(bp.prefix_ctx(), bp.word_ctx());
    for (const auto& [k, c] : z.terms()) {
        auto [e, rest] = split_q0(q, k.prefix);
        if (e > 0)
            continue;  // q_0 -> 2 = 0 in BP_*/2
        out.add(translate(rest, q, *bp.prefix_ctx(), FamilyId::V), translate(k.word, zc, *bp.word_ctx(), FamilyId::T), c);
    }
    return out;
}

Cochain<F2> reduce_mod2(const Cochain<LocalRational>& x)
{
    Cochain<F2> out(x.prefix_ctx(), x.word_ctx());
    for (const auto& [k, c] : x.terms())
        out.add(k, c.mod2());
    return out;
}

std::vector<Word> enumerate_words(const std::function<const std::vector<Monomial>&(int)>& basis_of, int s, int u)
{
    std::vector<Word> out;
    if (s == 0) {
        if (u == 0)
            out.emplace_back();
        return out;
    }
    Word cur(s);
    std::function<void(int, int)> rec = [&](int slot, int remaining) {
        if (slot == s - 1) {
            for (const auto& m : basis_of(remaining)) {
                cur[slot] = m;
                out.push_back(cur);
            }
            return;
        }
        // Each later slot needs degree >= 1.
        for (int d = 1; d <= remaining - (s - 1 - slot); ++d)
            for (const auto& m : basis_of(d)) {
                cur[slot] = m;
                rec(slot + 1, remaining - d);
            }
    };
    if (u >= s)
        rec(0, u);
    return out;
}

std::vector<Word> enumerate_words(const RingContext& word_ctx, int s, int u)
{
    std::vector<std::vector<Monomial>> by_degree(static_cast<std::size_t>(std::max(u, 0)) + 1);
    for (int d = 1; d <= u; ++d)
        by_degree[d] = enumerate_basis(word_ctx, d);
    static const std::vector<Monomial> kEmpty;
    return enumerate_words([&](int d) -> const std::vector<Monomial>& { return d >= 1 && d <= u ? by_degree[d] : kEmpty; },
                           s, u);
}

std::vector<TermKey> pq_basis(const PQAlgebroid& pq, int s, int t, int u, std::size_t budget)
{
    const RingContext& q = *pq.prefix_ctx();
    const RingContext& z = *pq.word_ctx();
    if (u > q.max_u())
        throw TruncationError(fmt::format("u={} exceeds MAX_U={}", u, q.max_u()));
    std::vector<TermKey> out;
    if (u < 2 * s || t < 0)
        return out;
    int q0 = q.slot(FamilyId::Q, 0);
    for (int up = 0; up <= u - 2 * s; up += 2) {
        std::vector<Monomial> prefixes;
        for (const auto& m : enumerate_basis(q, up, t))
            if (!pq.coaction().mod_q0() || m.e[q0] == 0)
                prefixes.push_back(m);
        if (prefixes.empty())
            continue;
        auto words = enumerate_words(z, s, u - up);
        if (out.size() + prefixes.size() * words.size() > budget)
            throw BudgetError(fmt::format("block (s={},t={},u={}) exceeds budget of {} rows (at least {})", s, t, u,
                                          budget, out.size() + prefixes.size() * words.size()));
        for (const auto& p : prefixes)
            for (const auto& w : words)
                out.push_back(TermKey{p, w});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TermKey> amot_basis(const AMotAlgebroid& a, int s, int u, int w, std::size_t budget)
{
    const AMotStructure& st = a.structure();
    if (u > st.max_u())
        throw TruncationError(fmt::format("u={} exceeds MAX_U={}", u, st.max_u()));
    std::vector<std::vector<Monomial>> by_degree(static_cast<std::size_t>(std::max(u, 0)) + 1);
    for (int d = 1; d <= u; ++d)
        by_degree[d] = st.basis(d);
    static const std::vector<Monomial> kEmpty;
    auto words = enumerate_words(
        [&](int d) -> const std::vector<Monomial>& { return d >= 1 && d <= u ? by_degree[d] : kEmpty; }, s, u);
    std::vector<TermKey> out;
    for (const auto& word : words) {
        int wt = 0;
        for (const auto& m : word)
            wt += st.weight(m);
        int k = wt - w;  // tau has weight -1
        if (k < 0)
            continue;
        Monomial pre = k == 0 ? Monomial{} : st.scalar()->generator(FamilyId::MotTau, 0, k);
        out.push_back(TermKey{pre, word});
        if (out.size() > budget)
            throw BudgetError(fmt::format("motivic block (s={},u={},w={}) exceeds budget of {} rows", s, u, w, budget));
    }
    std::sort(out.begin(), out.end());
    return out;
}

ComplexBlock make_block(MultiDegree deg, std::vector<TermKey> basis)
{
    ComplexBlock b;
    b.degree = deg;
    b.basis = std::move(basis);
    b.index.reserve(b.basis.size());
    for (std::size_t i = 0; i < b.basis.size(); ++i)
        b.index.emplace(b.basis[i], static_cast<int>(i));
    return b;
}

void attach_differential(const Algebroid<F2>& alg, ComplexBlock& src, const ComplexBlock& dst)
{
    src.d_out.assign(src.size(), {});
    for (std::size_t i = 0; i < src.size(); ++i) {
        Cochain<F2> x(alg.prefix_ctx(), alg.word_ctx());
        x.add(src.basis[i], F2::one());
        Cochain<F2> dx = differential(alg, x);
        auto& row = src.d_out[i];
        row.reserve(dx.size());
        for (const auto& [k, c] : dx.terms()) {
            int j = dst.find(k);
            if (j < 0)
                throw GradingError(fmt::format("differential of {} leaves the target block {}", x.str(), to_string(dst.degree)));
            row.push_back(j);
        }
        std::sort(row.begin(), row.end());
    }
}

ComplexBlock build_block(const PQAlgebroid& pq, int s, int t, int u, std::size_t budget)
{
    ComplexBlock src = make_block(MultiDegree{s, t, u, std::nullopt}, pq_basis(pq, s, t, u, budget));
    ComplexBlock dst = make_block(MultiDegree{s + 1, t, u, std::nullopt}, pq_basis(pq, s + 1, t, u, budget));
    attach_differential(pq, src, dst);
    return src;
}

BitVec to_vector(const ComplexBlock& b, const Cochain<F2>& x)
{
    BitVec v(b.size());
    for (const auto& [k, c] : x.terms()) {
        int i = b.find(k);
        if (i < 0)
            throw GradingError(fmt::format("term outside block {}", to_string(b.degree)));
        v.flip(static_cast<std::size_t>(i));
    }
    return v;
}

Cochain<F2> from_vector(const ComplexBlock& b, const BitVec& v, RingContextPtr prefix, RingContextPtr word)
{
    Cochain<F2> x(std::move(prefix), std::move(word));
    for (std::size_t i = v.next_set(0); i < v.size(); i = v.next_set(i + 1))
        x.add(b.basis[i], F2::one());
    return x;
}

BitMatrix differential_rows(const ComplexBlock& src, std::size_t target_size)
{
    BitMatrix m(src.size(), target_size);
    for (std::size_t i = 0; i < src.d_out.size(); ++i)
        for (int j : src.d_out[i])
            m.set(i, static_cast<std::size_t>(j));
    return m;
}

}  // namespace ank
