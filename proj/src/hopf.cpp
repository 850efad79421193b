#include "ank/hopf.hpp"

#include <fmt/format.h>
#include <mutex>

namespace ank {

namespace {

// All monomials of degree 1..max_deg whose zero-degree slots are unused, in
// canonical order (increasing degree).
std::vector<Monomial> positive_monomials(const RingContext& ctx, int max_deg)
{
    std::vector<Monomial> out;
    for (int u = 1; u <= max_deg; ++u) {
        bool has_zero = false;
        for (const auto& v : ctx.variables())
            has_zero |= v.degree == 0;
        if (!has_zero) {
            auto b = enumerate_basis(ctx, u);
            out.insert(out.end(), b.begin(), b.end());
            continue;
        }
        // Contexts with q_0: collect q_0-free monomials over every Novikov degree.
        for (int t = 0; t <= u; ++t)
            for (const auto& m : enumerate_basis(ctx, u, t)) {
                bool zero_free = true;
                for (std::size_t i = 0; i < ctx.variables().size(); ++i)
                    if (ctx.variables()[i].degree == 0 && m.e[i])
                        zero_free = false;
                if (zero_free)
                    out.push_back(m);
            }
    }
    return out;
}

// Lowest occupied slot of a non-unit monomial.
int lowest_slot(const Monomial& m)
{
    for (std::size_t i = 0; i < kMaxSlots; ++i)
        if (m.e[i])
            return static_cast<int>(i);
    return -1;
}

Monomial divide(const Monomial& m, const Monomial& x)
{
    Monomial r = m;
    for (std::size_t i = 0; i < kMaxSlots; ++i)
        r.e[i] = static_cast<std::uint8_t>(r.e[i] - x.e[i]);
    r.deg = static_cast<std::uint16_t>(m.deg - x.deg);
    return r;
}

Monomial single(const RingContext& ctx, int slot, int power)
{
    Monomial m;
    m.e[slot] = static_cast<std::uint8_t>(power);
    m.deg = static_cast<std::uint16_t>(ctx.variables()[slot].degree * power);
    return m;
}

// Products in Gamma (one slot, possibly 1) and Gamma (x) Gamma (two slots);
// all coefficients sit on the left, where they commute.
template <class C>
Cochain<C> tensor_mul(const Cochain<C>& a, const Cochain<C>& b)
{
    Cochain<C> r(a.prefix_ctx(), a.word_ctx());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            Word w(ka.word.size());
            for (std::size_t i = 0; i < w.size(); ++i)
                w[i] = ka.word[i] * kb.word[i];
            r.add(ka.prefix * kb.prefix, w, ca * cb);
        }
    return r;
}

template <class C>
Cochain<C> tensor_pow(const Cochain<C>& a, int k, std::size_t slots)
{
    Cochain<C> r(a.prefix_ctx(), a.word_ctx());
    r.add(Monomial{}, Word(slots), C::from_int(1));
    for (int i = 0; i < k; ++i)
        r = tensor_mul(r, a);
    return r;
}

template <class C>
std::vector<DiagTerm<C>> to_diag_terms(const Cochain<C>& x)
{
    std::vector<DiagTerm<C>> out;
    for (const auto& [k, c] : x.terms())
        out.push_back(DiagTerm<C>{c, k.prefix, k.word[0], k.word[1]});
    return out;
}

template <class C>
std::vector<DiagTerm<C>> reduce(const std::vector<DiagTerm<C>>& full)
{
    std::vector<DiagTerm<C>> out;
    for (const auto& d : full)
        if (!d.left.is_one() && !d.right.is_one())
            out.push_back(d);
    return out;
}

template <class Map>
const typename Map::mapped_type& lookup(const Map& table, const Monomial& m, const char* what)
{
    auto it = table.find(m);
    if (it == table.end())
        throw TruncationError(fmt::format("{}: monomial of degree {} outside tabulated range", what, m.deg));
    return it->second;
}

}  // namespace

// ---------------------------------------------------------------------------
// P

PStructure::PStructure(int max_u) : zeta_(make_context({FamilyId::Zeta}, max_u))
{
    const RingContext& z = *zeta_;
    full_[Monomial{}] = {DiagTerm<F2>{F2::one(), {}, {}, {}}};
    for (const Monomial& m : positive_monomials(z, max_u)) {
        int sl = lowest_slot(m);
        Monomial x = single(z, sl, 1);
        Monomial rest = divide(m, x);
        int n = z.variables()[sl].index;

        Cochain<F2> gen(nullptr, zeta_);
        for (int i = 0; i <= n; ++i) {
            Monomial left = i == 0 ? Monomial{} : z.generator(FamilyId::Zeta, i);
            Monomial right = i == n ? Monomial{} : z.generator(FamilyId::Zeta, n - i, 1 << i);
            gen.add(Monomial{}, Word{left, right}, F2::one());
        }
        Cochain<F2> rest_c(nullptr, zeta_);
        for (const auto& d : full_.at(rest))
            rest_c.add(d.prefix, Word{d.left, d.right}, d.coef);
        full_[m] = to_diag_terms(tensor_mul(gen, rest_c));
    }
    for (const auto& [m, terms] : full_)
        reduced_[m] = reduce(terms);
}

const std::vector<DiagTerm<F2>>& PStructure::diagonal(const Monomial& m) const
{
    return lookup(full_, m, "diagonal_P");
}

const std::vector<DiagTerm<F2>>& PStructure::reduced_diagonal(const Monomial& m) const
{
    return lookup(reduced_, m, "diagonal_P");
}

Cochain<F2> diagonal_P(const PStructure& p, const Monomial& m)
{
    Cochain<F2> r(nullptr, p.zeta());
    for (const auto& d : p.diagonal(m))
        r.add(d.prefix, Word{d.left, d.right}, d.coef);
    return r;
}

// ---------------------------------------------------------------------------
// Q

QCoaction::QCoaction(std::shared_ptr<const PStructure> p, bool mod_q0)
    : p_(std::move(p)), q_(make_context({FamilyId::Q}, p_->max_u())), mod_q0_(mod_q0), q0_slot_(q_->slot(FamilyId::Q, 0))
{
    const RingContext& q = *q_;
    const RingContext& z = *p_->zeta();
    table_[Monomial{}] = {UnitTerm<F2>{F2::one(), {}, {}}};
    for (const Monomial& m : positive_monomials(q, q.max_u())) {
        int sl = lowest_slot(m);
        Monomial x = single(q, sl, 1);
        Monomial rest = divide(m, x);
        int n = q.variables()[sl].index;

        Cochain<F2> gen(q_, p_->zeta());
        for (int i = 0; i <= n; ++i) {
            if (mod_q0_ && i == 0)
                continue;
            Monomial slot = i == n ? Monomial{} : z.generator(FamilyId::Zeta, n - i, 1 << i);
            gen.add(q.generator(FamilyId::Q, i), Word{slot}, F2::one());
        }
        Cochain<F2> rest_c(q_, p_->zeta());
        for (const auto& u : table_.at(rest))
            rest_c.add(u.prefix, Word{u.slot}, u.coef);
        std::vector<UnitTerm<F2>> out;
        const auto prod = tensor_mul(gen, rest_c);
        for (const auto& [k, c] : prod.terms())
            out.push_back(UnitTerm<F2>{c, k.prefix, k.word[0]});
        table_[m] = std::move(out);
    }
}

const std::vector<UnitTerm<F2>>& QCoaction::coaction(const Monomial& m) const
{
    int a = m.e[q0_slot_];
    if (a == 0)
        return lookup(table_, m, "coaction_Q");
    static const std::vector<UnitTerm<F2>> kEmpty;
    if (mod_q0_)
        return kEmpty;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = with_q0_.find(m);
    if (it != with_q0_.end())
        return it->second;
    Monomial q0a = single(*q_, q0_slot_, a);
    Monomial rest = divide(m, q0a);
    std::vector<UnitTerm<F2>> out;
    for (auto u : lookup(table_, rest, "coaction_Q")) {
        u.prefix = u.prefix * q0a;
        out.push_back(u);
    }
    return with_q0_.emplace(m, std::move(out)).first->second;
}

Cochain<F2> coaction_Q(const QCoaction& q, const Monomial& m)
{
    Cochain<F2> r(q.q(), q.p().zeta());
    for (const auto& u : q.coaction(m))
        r.add(u.prefix, Word{u.slot}, u.coef);
    return r;
}

// ---------------------------------------------------------------------------
// BP

BPStructure::BPStructure(int max_u)
    : max_u_(max_u),
      k_(GeneratorFamily{FamilyId::T}.truncation_index(max_u)),
      m_(make_context({FamilyId::M}, max_u)),
      v_(make_context({FamilyId::V}, max_u)),
      t_(make_context({FamilyId::T}, max_u))
{
    build_conversions();
    build_right_unit();
    build_diagonal();
}

void BPStructure::build_conversions()
{
    v_in_m_.assign(k_ + 1, PolyQ(m_));
    m_in_v_.assign(k_ + 1, PolyQ(v_));
    for (int n = 1; n <= k_; ++n) {
        // 2 m_n = v_n + sum_{1<=i<n} m_i v_{n-i}^{2^i}
        PolyQ vn = PolyQ::generator(m_, FamilyId::M, n).scaled(Rational(2));
        PolyQ mn = PolyQ::generator(v_, FamilyId::V, n);
        for (int i = 1; i < n; ++i) {
            vn -= PolyQ::generator(m_, FamilyId::M, i) * v_in_m_[n - i].pow(1 << i);
            mn += m_in_v_[i] * PolyQ::generator(v_, FamilyId::V, n - i, 1 << i);
        }
        v_in_m_[n] = vn;
        m_in_v_[n] = mn.scaled(Rational(1, 2));
    }
}

const PolyQ& BPStructure::v_in_m(int n) const
{
    if (n < 1 || n > k_)
        throw TruncationError(fmt::format("v_{} outside truncation K={}", n, k_));
    return v_in_m_[n];
}

const PolyQ& BPStructure::m_in_v(int n) const
{
    if (n < 1 || n > k_)
        throw TruncationError(fmt::format("m_{} outside truncation K={}", n, k_));
    return m_in_v_[n];
}

namespace {

PolyQ substitute(const PolyQ& p, const RingContextPtr& target, const std::vector<PolyQ>& images)
{
    PolyQ r(target);
    const RingContext& src = *p.context();
    for (const auto& [m, c] : p.terms()) {
        PolyQ term = PolyQ::constant(target, c);
        for (std::size_t sl = 0; sl < src.variables().size(); ++sl)
            if (m.e[sl])
                term = term * images[src.variables()[sl].index].pow(m.e[sl]);
        r += term;
    }
    return r;
}

}  // namespace

PolyQ BPStructure::to_v_basis(const PolyQ& in_m) const
{
    return substitute(in_m, v_, m_in_v_);
}

PolyQ BPStructure::to_m_basis(const PolyQ& in_v) const
{
    return substitute(in_v, m_, v_in_m_);
}

namespace {

// Rewrite the m-prefixes of a Gamma-tensor in the v-basis and assert integrality.
Cochain<LocalRational> integral_in_v(const BPStructure& bp, const Cochain<Rational>& in_m)
{
    Cochain<Rational> acc(bp.v(), bp.t());
    for (const auto& [k, c] : in_m.terms()) {
        PolyQ conv = bp.to_v_basis(PolyQ(bp.m(), k.prefix, c));
        for (const auto& [vm, vc] : conv.terms())
            acc.add(vm, k.word, vc);
    }
    Cochain<LocalRational> out(bp.v(), bp.t());
    for (const auto& [k, c] : acc.terms()) {
        try {
            out.add(k, LocalRational::from(c));
        } catch (const NotLocalError& e) {
            throw IntegralityError(fmt::format("BP structure map left Z_(2)[v]: {}", e.what()));
        }
    }
    return out;
}

}  // namespace

void BPStructure::build_right_unit()
{
    const RingContext& t = *t_;
    // eta_R(m_n) = sum_{i+j=n} m_i t_j^{2^i} in the m-basis.
    std::vector<Cochain<Rational>> eta_m(k_ + 1, Cochain<Rational>(m_, t_));
    for (int n = 1; n <= k_; ++n)
        for (int i = 0; i <= n; ++i) {
            Monomial pre = i == 0 ? Monomial{} : m_->generator(FamilyId::M, i);
            Monomial slot = i == n ? Monomial{} : t.generator(FamilyId::T, n - i, 1 << i);
            eta_m[n].add(pre, Word{slot}, Rational(1));
        }
    // eta_R(v_n) = v_n(eta_R m_1, eta_R m_2, ...), then back to the v-basis.
    std::vector<Cochain<LocalRational>> eta_v(k_ + 1);
    for (int n = 1; n <= k_; ++n) {
        Cochain<Rational> acc(m_, t_);
        for (const auto& [mono, c] : v_in_m_[n].terms()) {
            Cochain<Rational> term(m_, t_);
            term.add(Monomial{}, Word{Monomial{}}, c);
            for (std::size_t sl = 0; sl < m_->variables().size(); ++sl)
                if (mono.e[sl])
                    term = tensor_mul(term, tensor_pow(eta_m[m_->variables()[sl].index], mono.e[sl], 1));
            acc += term;
        }
        eta_v[n] = integral_in_v(*this, acc);
    }
    eta_[Monomial{}] = {UnitTerm<LocalRational>{LocalRational(1), {}, {}}};
    for (const Monomial& m : positive_monomials(*v_, max_u_)) {
        int sl = lowest_slot(m);
        Monomial x = single(*v_, sl, 1);
        Monomial rest = divide(m, x);
        Cochain<LocalRational> rest_c(v_, t_);
        for (const auto& u : eta_.at(rest))
            rest_c.add(u.prefix, Word{u.slot}, u.coef);
        std::vector<UnitTerm<LocalRational>> out;
        const auto prod = tensor_mul(eta_v[v_->variables()[sl].index], rest_c);
        for (const auto& [k, c] : prod.terms())
            out.push_back(UnitTerm<LocalRational>{c, k.prefix, k.word[0]});
        eta_[m] = std::move(out);
    }
    for (const auto& [m, terms] : eta_) {
        Cochain<F2> red(v_, t_);
        for (const auto& u : terms)
            red.add(u.prefix, Word{u.slot}, u.coef.mod2());
        std::vector<UnitTerm<F2>> out;
        for (const auto& [k, c] : red.terms())
            out.push_back(UnitTerm<F2>{c, k.prefix, k.word[0]});
        eta2_[m] = std::move(out);
    }
}

void BPStructure::build_diagonal()
{
    const RingContext& t = *t_;
    auto tpow = [&](int j, int e) { return j == 0 ? Monomial{} : t.generator(FamilyId::T, j, e); };
    auto mgen = [&](int i) { return i == 0 ? Monomial{} : m_->generator(FamilyId::M, i); };

    // Delta t_n = sum_{i+j+k=n} m_i t_j^{2^i} (x) t_k^{2^{i+j}} - sum_{i>=1} m_i (Delta t_{n-i})^{2^i}
    std::vector<Cochain<Rational>> delta_m(k_ + 1, Cochain<Rational>(m_, t_));
    delta_m[0].add(Monomial{}, Word{Monomial{}, Monomial{}}, Rational(1));
    for (int n = 1; n <= k_; ++n) {
        Cochain<Rational> acc(m_, t_);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j) {
                int k = n - i - j;
                acc.add(mgen(i), Word{tpow(j, 1 << i), tpow(k, 1 << (i + j))}, Rational(1));
            }
        for (int i = 1; i <= n; ++i) {
            Cochain<Rational> mi(m_, t_);
            mi.add(mgen(i), Word{Monomial{}, Monomial{}}, Rational(1));
            acc -= tensor_mul(mi, tensor_pow(delta_m[n - i], 1 << i, 2));
        }
        delta_m[n] = acc;
    }
    std::vector<Cochain<LocalRational>> delta_v(k_ + 1);
    for (int n = 1; n <= k_; ++n)
        delta_v[n] = integral_in_v(*this, delta_m[n]);

    full_[Monomial{}] = {DiagTerm<LocalRational>{LocalRational(1), {}, {}, {}}};
    for (const Monomial& m : positive_monomials(t, max_u_)) {
        int sl = lowest_slot(m);
        Monomial x = single(t, sl, 1);
        Monomial rest = divide(m, x);
        Cochain<LocalRational> rest_c(v_, t_);
        for (const auto& d : full_.at(rest))
            rest_c.add(d.prefix, Word{d.left, d.right}, d.coef);
        full_[m] = to_diag_terms(tensor_mul(delta_v[t.variables()[sl].index], rest_c));
    }
    for (const auto& [m, terms] : full_) {
        reduced_[m] = reduce(terms);
        Cochain<F2> red(v_, t_);
        for (const auto& d : reduced_[m])
            red.add(d.prefix, Word{d.left, d.right}, d.coef.mod2());
        reduced2_[m] = to_diag_terms(red);
    }
}

const std::vector<UnitTerm<LocalRational>>& BPStructure::right_unit(const Monomial& v) const
{
    return lookup(eta_, v, "eta_R");
}

const std::vector<UnitTerm<F2>>& BPStructure::right_unit_mod2(const Monomial& v) const
{
    return lookup(eta2_, v, "eta_R mod 2");
}

const std::vector<DiagTerm<LocalRational>>& BPStructure::diagonal(const Monomial& t) const
{
    return lookup(full_, t, "diagonal_BP");
}

const std::vector<DiagTerm<LocalRational>>& BPStructure::reduced_diagonal(const Monomial& t) const
{
    return lookup(reduced_, t, "diagonal_BP");
}

const std::vector<DiagTerm<F2>>& BPStructure::reduced_diagonal_mod2(const Monomial& t) const
{
    return lookup(reduced2_, t, "diagonal_BP mod 2");
}

Cochain<LocalRational> eta_R(const BPStructure& bp, const PolyZ2& c)
{
    Cochain<LocalRational> r(bp.v(), bp.t());
    for (const auto& [m, x] : c.terms())
        for (const auto& u : bp.right_unit(m))
            r.add(u.prefix, Word{u.slot}, u.coef * x);
    return r;
}

Cochain<LocalRational> diagonal_BP(const BPStructure& bp, const Monomial& t_monomial)
{
    Cochain<LocalRational> r(bp.v(), bp.t());
    for (const auto& d : bp.diagonal(t_monomial))
        r.add(d.prefix, Word{d.left, d.right}, d.coef);
    return r;
}

// ---------------------------------------------------------------------------
// A_Mot

AMotStructure::AMotStructure(int max_u)
    : word_(make_context({FamilyId::Xi, FamilyId::Tau}, max_u)), scalar_(make_context({FamilyId::MotTau}, max_u))
{
    const RingContext& w = *word_;
    int kt = GeneratorFamily{FamilyId::Tau}.truncation_index(max_u);
    int kx = GeneratorFamily{FamilyId::Xi}.truncation_index(max_u);
    tau_slots_.assign(kt + 1, -1);
    xi_slots_.assign(kx + 1, -1);
    for (int n = 0; n <= kt; ++n)
        tau_slots_[n] = w.slot(FamilyId::Tau, n);
    for (int n = 1; n <= kx; ++n)
        xi_slots_[n] = w.slot(FamilyId::Xi, n);

    auto xi = [&](int n, int e) { return n == 0 ? Monomial{} : w.generator(FamilyId::Xi, n, e); };
    full_[Monomial{}] = {DiagTerm<F2>{F2::one(), {}, {}, {}}};
    for (int u = 1; u <= max_u; ++u)
        for (const Monomial& m : basis(u)) {
            int sl = lowest_slot(m);
            Monomial x = single(w, sl, 1);
            Monomial rest = divide(m, x);
            const Variable& var = w.variables()[sl];
            int n = var.index;
            std::vector<DiagTerm<F2>> gen;
            if (var.family.id == FamilyId::Xi) {
                for (int i = 0; i <= n; ++i)
                    gen.push_back({F2::one(), {}, xi(n - i, 1 << i), xi(i, 1)});
            } else {
                gen.push_back({F2::one(), {}, x, {}});
                for (int i = 0; i <= n; ++i)
                    gen.push_back({F2::one(), {}, xi(n - i, 1 << i), w.generator(FamilyId::Tau, i)});
            }
            Cochain<F2> acc(scalar_, word_);
            for (const auto& g : gen)
                for (const auto& r : full_.at(rest)) {
                    auto [kl, l] = multiply(g.left, r.left);
                    auto [kr, rr] = multiply(g.right, r.right);
                    Monomial pre = r.prefix;
                    if (kl + kr)
                        pre = pre * scalar_->generator(FamilyId::MotTau, 0, kl + kr);
                    acc.add(pre, Word{l, rr}, F2::one());
                }
            full_[m] = to_diag_terms(acc);
        }
    for (const auto& [m, terms] : full_)
        reduced_[m] = reduce(terms);
}

std::pair<int, Monomial> AMotStructure::multiply(const Monomial& a, const Monomial& b) const
{
    Monomial r = a * b;
    int tau_power = 0;
    for (std::size_t n = 0; n < tau_slots_.size(); ++n) {
        int sl = tau_slots_[n];
        if (r.e[sl] < 2)
            continue;
        if (r.e[sl] > 2)
            throw ContextError("A_Mot product of non-basis monomials");
        r.e[sl] = 0;
        ++tau_power;
        int next = static_cast<int>(n) + 1;
        if (next >= static_cast<int>(xi_slots_.size()))
            throw TruncationError(fmt::format("xi_{} exceeds truncation", next));
        r.e[xi_slots_[next]] += 1;
    }
    r.deg = static_cast<std::uint16_t>(word_->degree(r));
    return {tau_power, r};
}

bool AMotStructure::is_basis(const Monomial& m) const
{
    for (int sl : tau_slots_)
        if (m.e[sl] > 1)
            return false;
    return true;
}

std::vector<Monomial> AMotStructure::basis(int u) const
{
    std::vector<Monomial> out;
    for (const auto& m : enumerate_basis(*word_, u))
        if (is_basis(m))
            out.push_back(m);
    return out;
}

const std::vector<DiagTerm<F2>>& AMotStructure::diagonal(const Monomial& m) const
{
    return lookup(full_, m, "diagonal_AMot");
}

const std::vector<DiagTerm<F2>>& AMotStructure::reduced_diagonal(const Monomial& m) const
{
    return lookup(reduced_, m, "diagonal_AMot");
}

Cochain<F2> diagonal_AMot(const AMotStructure& a, const Monomial& m)
{
    Cochain<F2> r(a.scalar(), a.word());
    for (const auto& d : a.diagonal(m))
        r.add(d.prefix, Word{d.left, d.right}, d.coef);
    return r;
}

}  // namespace ank
