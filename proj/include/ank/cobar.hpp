#pragma once

#include "ank/hopf.hpp"
#include "ank/linalg.hpp"

#include <climits>
#include <functional>
#include <memory>
#include <unordered_map>

namespace ank {

// The structure a normalized cobar complex needs: a right unit on coefficient
// monomials, a reduced diagonal on word monomials, and the word-ring product.
// All coefficients are carried on the left.
template <class C>
class Algebroid
{
public:
    virtual ~Algebroid() = default;

    virtual const RingContextPtr& prefix_ctx() const = 0;
    virtual const RingContextPtr& word_ctx() const = 0;
    // eta_R of a prefix monomial, including the slot-1 term equal to the monomial itself.
    virtual const std::vector<UnitTerm<C>>& right_unit(const Monomial& prefix) const = 0;
    virtual const std::vector<DiagTerm<C>>& reduced_diagonal(const Monomial& g) const = 0;
    // Product in the word ring as (central scalar factor for the prefix, monomial).
    virtual std::pair<Monomial, Monomial> multiply_word(const Monomial& a, const Monomial& b) const
    {
        return {Monomial{}, a * b};
    }
    // I-adic filtration degree of the term c * prefix.
    virtual int filtration(const Monomial& prefix, const C& c) const { return prefix.total_exponent() + c.nu2(); }
    virtual std::string name() const = 0;
};

// Omega(P; Q) or Omega(P; Q/(q_0)).
class PQAlgebroid final : public Algebroid<F2>
{
public:
    explicit PQAlgebroid(std::shared_ptr<const QCoaction> q) : q_(std::move(q)) {}
    const RingContextPtr& prefix_ctx() const override { return q_->q(); }
    const RingContextPtr& word_ctx() const override { return q_->p().zeta(); }
    const std::vector<UnitTerm<F2>>& right_unit(const Monomial& m) const override { return q_->coaction(m); }
    const std::vector<DiagTerm<F2>>& reduced_diagonal(const Monomial& g) const override
    {
        return q_->p().reduced_diagonal(g);
    }
    int filtration(const Monomial& prefix, const F2&) const override { return prefix.total_exponent(); }
    std::string name() const override { return q_->mod_q0() ? "P;Q/(q0)" : "P;Q"; }
    const QCoaction& coaction() const { return *q_; }
    std::shared_ptr<const QCoaction> coaction_ptr() const { return q_; }

private:
    std::shared_ptr<const QCoaction> q_;
};

// Omega(BP_*BP) with exact Z_(2) coefficients.
class BPAlgebroid final : public Algebroid<LocalRational>
{
public:
    explicit BPAlgebroid(std::shared_ptr<const BPStructure> bp) : bp_(std::move(bp)) {}
    const RingContextPtr& prefix_ctx() const override { return bp_->v(); }
    const RingContextPtr& word_ctx() const override { return bp_->t(); }
    const std::vector<UnitTerm<LocalRational>>& right_unit(const Monomial& m) const override
    {
        return bp_->right_unit(m);
    }
    const std::vector<DiagTerm<LocalRational>>& reduced_diagonal(const Monomial& g) const override
    {
        return bp_->reduced_diagonal(g);
    }
    std::string name() const override { return "BP_*BP"; }
    const BPStructure& structure() const { return *bp_; }

private:
    std::shared_ptr<const BPStructure> bp_;
};

// Omega(BP_*BP; BP_*/2).
class BPMod2Algebroid final : public Algebroid<F2>
{
public:
    explicit BPMod2Algebroid(std::shared_ptr<const BPStructure> bp) : bp_(std::move(bp)) {}
    const RingContextPtr& prefix_ctx() const override { return bp_->v(); }
    const RingContextPtr& word_ctx() const override { return bp_->t(); }
    const std::vector<UnitTerm<F2>>& right_unit(const Monomial& m) const override { return bp_->right_unit_mod2(m); }
    const std::vector<DiagTerm<F2>>& reduced_diagonal(const Monomial& g) const override
    {
        return bp_->reduced_diagonal_mod2(g);
    }
    int filtration(const Monomial& prefix, const F2&) const override { return prefix.total_exponent(); }
    std::string name() const override { return "BP_*BP;BP_*/2"; }
    const BPStructure& structure() const { return *bp_; }

private:
    std::shared_ptr<const BPStructure> bp_;
};

// Omega(A_Mot) over M_2 = F_2[tau]; tau is primitive, so the right unit is trivial.
class AMotAlgebroid final : public Algebroid<F2>
{
public:
    explicit AMotAlgebroid(std::shared_ptr<const AMotStructure> a);
    const RingContextPtr& prefix_ctx() const override { return a_->scalar(); }
    const RingContextPtr& word_ctx() const override { return a_->word(); }
    const std::vector<UnitTerm<F2>>& right_unit(const Monomial& m) const override;
    const std::vector<DiagTerm<F2>>& reduced_diagonal(const Monomial& g) const override
    {
        return a_->reduced_diagonal(g);
    }
    std::pair<Monomial, Monomial> multiply_word(const Monomial& a, const Monomial& b) const override;
    int filtration(const Monomial&, const F2&) const override { return 0; }
    std::string name() const override { return "A_Mot"; }
    const AMotStructure& structure() const { return *a_; }

private:
    std::shared_ptr<const AMotStructure> a_;
    std::vector<std::vector<UnitTerm<F2>>> units_;  // by tau exponent
};

// A cochain whose coefficients may sit between slots: gaps[j] is the
// coefficient monomial to the left of slot j (gaps[s] right of the last slot).
template <class C>
struct RawTerm
{
    C coef;
    std::vector<Monomial> gaps;
    Word word;
};

// Moves every interior coefficient to the prefix by repeated right-unit
// crossings, right to left: [g | a g'] = eta_R(a) [g | g'].
template <class C>
Cochain<C> canonicalize(const Algebroid<C>& alg, const std::vector<RawTerm<C>>& raw);
template <class C>
Cochain<C> canonicalize(const Algebroid<C>& alg, const Cochain<C>& x);

// d(c[g_1|...|g_s]) = [psi~(c)|g_1|...|g_s] + sum_i (-1)^i c[...|Delta~ g_i|...].
// Terms whose filtration reaches `cutoff` are discarded (filtration never drops).
template <class C>
Cochain<C> differential(const Algebroid<C>& alg, const Cochain<C>& x, int cutoff = INT_MAX);

// Cochain product: the right factor's coefficient crosses the left factor's word.
template <class C>
Cochain<C> product(const Algebroid<C>& alg, const Cochain<C>& x, const Cochain<C>& y, int cutoff = INT_MAX);

// min over terms of the algebroid's filtration; INT_MAX for zero.
template <class C>
int filtration(const Algebroid<C>& alg, const Cochain<C>& x);

// Drop every term of filtration >= cutoff.
template <class C>
Cochain<C> truncate_filtration(const Algebroid<C>& alg, const Cochain<C>& x, int cutoff);

// Associated graded: BP cochain -> Omega(P; Q^f), 2 -> q_0, v_i -> q_i, t_i -> zeta_i.
Cochain<F2> gr_project(const BPAlgebroid& bp, const PQAlgebroid& pq, const Cochain<LocalRational>& x, int f);
// Mod 2 version: Omega(BP_*BP; BP_*/2) -> Omega(P; Q/(q_0)^f).
Cochain<F2> gr_project(const BPMod2Algebroid& bp, const PQAlgebroid& pq, const Cochain<F2>& x, int f);
// The non-linear section zeta_i -> t_i, q_i -> v_i, q_0 -> 2.
Cochain<LocalRational> split_lift(const BPAlgebroid& bp, const Cochain<F2>& z);
Cochain<F2> split_lift(const BPMod2Algebroid& bp, const Cochain<F2>& z);
// Reduction Z_(2) -> F_2 of coefficients.
Cochain<F2> reduce_mod2(const Cochain<LocalRational>& x);

// All words of s positive-degree basis monomials with total degree u, where
// basis_of(d) lists the word-ring basis in degree d.
std::vector<Word> enumerate_words(const std::function<const std::vector<Monomial>&(int)>& basis_of, int s, int u);
std::vector<Word> enumerate_words(const RingContext& word_ctx, int s, int u);

// One tridegree of a cobar complex over F_2: basis words, index, and the
// sparse differential into the next block (entries are target indices).
struct ComplexBlock
{
    MultiDegree degree;
    std::vector<TermKey> basis;
    std::unordered_map<TermKey, int, TermKeyHash> index;
    std::vector<std::vector<int>> d_out;

    std::size_t size() const { return basis.size(); }
    int find(const TermKey& k) const
    {
        auto it = index.find(k);
        return it == index.end() ? -1 : it->second;
    }
};

inline constexpr std::size_t kDefaultBlockBudget = std::size_t{1} << 24;

// Basis of Omega^{s,u}(P; Q^t) (or Q/(q_0)^t), canonically ordered.
std::vector<TermKey> pq_basis(const PQAlgebroid& pq, int s, int t, int u, std::size_t budget = kDefaultBlockBudget);
// Basis of Omega^{s,u}(A_Mot) in motivic weight w, prefixes tau^k.
std::vector<TermKey> amot_basis(const AMotAlgebroid& a, int s, int u, int w, std::size_t budget = kDefaultBlockBudget);

ComplexBlock make_block(MultiDegree deg, std::vector<TermKey> basis);
// Fill d_out of `src` against `dst` (the block one cohomological degree up).
void attach_differential(const Algebroid<F2>& alg, ComplexBlock& src, const ComplexBlock& dst);
ComplexBlock build_block(const PQAlgebroid& pq, int s, int t, int u, std::size_t budget = kDefaultBlockBudget);

// Vector <-> cochain over a block basis.
BitVec to_vector(const ComplexBlock& b, const Cochain<F2>& x);
Cochain<F2> from_vector(const ComplexBlock& b, const BitVec& v, RingContextPtr prefix, RingContextPtr word);
// Differential matrix with one row per source basis element.
BitMatrix differential_rows(const ComplexBlock& src, std::size_t target_size);

}  // namespace ank
