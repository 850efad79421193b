#pragma once

#include "ank/cochain.hpp"
#include "ank/polynomial.hpp"

#include <memory>
#include <unordered_map>
#include <vector>

namespace ank {

// One term c * prefix * [slot] of a right unit (or coaction). `slot` may be 1.
template <class C>
struct UnitTerm
{
    C coef;
    Monomial prefix;
    Monomial slot;
};

// One term c * prefix * [left|right] of a diagonal. Sides may be 1 in a full
// diagonal; reduced diagonals keep only terms with both sides of positive degree.
template <class C>
struct DiagTerm
{
    C coef;
    Monomial prefix;
    Monomial left;
    Monomial right;
};

// The Hopf algebra P = F_2[zeta_1, zeta_2, ...] of squares, with
// Delta zeta_n = sum_{i+j=n} zeta_i (x) zeta_j^{2^i}. Tables cover every monomial
// of degree <= max_u and are immutable after construction.
class PStructure
{
public:
    explicit PStructure(int max_u);

    const RingContextPtr& zeta() const { return zeta_; }
    int max_u() const { return zeta_->max_u(); }
    const std::vector<DiagTerm<F2>>& diagonal(const Monomial& m) const;
    const std::vector<DiagTerm<F2>>& reduced_diagonal(const Monomial& m) const;
    F2 counit(const Monomial& m) const { return F2(m.is_one()); }

private:
    RingContextPtr zeta_;
    std::unordered_map<Monomial, std::vector<DiagTerm<F2>>, MonomialHash> full_, reduced_;
};

// The P-comodule algebra Q = F_2[q_0, q_1, ...] with the right coaction
// q_n -> sum_{i+j=n} q_i (x) zeta_j^{2^i}. With mod_q0 the comodule is Q/(q_0):
// q_0-divisible left factors are dropped.
class QCoaction
{
public:
    QCoaction(std::shared_ptr<const PStructure> p, bool mod_q0);

    const RingContextPtr& q() const { return q_; }
    const PStructure& p() const { return *p_; }
    bool mod_q0() const { return mod_q0_; }
    // Full coaction psi(m), including the m (x) 1 term.
    const std::vector<UnitTerm<F2>>& coaction(const Monomial& m) const;

private:
    std::shared_ptr<const PStructure> p_;
    RingContextPtr q_;
    bool mod_q0_;
    int q0_slot_;
    std::unordered_map<Monomial, std::vector<UnitTerm<F2>>, MonomialHash> table_;  // q_0-free monomials
    mutable std::unordered_map<Monomial, std::vector<UnitTerm<F2>>, MonomialHash> with_q0_;
};

// The Hopf algebroid (BP_*, BP_*BP) with Hazewinkel generators v_n. Right unit
// and diagonal are computed in the m-basis of H_*(BP) = Q[m_1, ...] and
// converted back to the v-basis, where 2-local integrality is asserted.
class BPStructure
{
public:
    explicit BPStructure(int max_u);

    const RingContextPtr& m() const { return m_; }
    const RingContextPtr& v() const { return v_; }
    const RingContextPtr& t() const { return t_; }
    int max_u() const { return max_u_; }

    // v_n in Z_(2)[m_1, ...] and m_n in Q[v_1, ...].
    const PolyQ& v_in_m(int n) const;
    const PolyQ& m_in_v(int n) const;
    // Substitute m_i = m_in_v(i) into an m-polynomial.
    PolyQ to_v_basis(const PolyQ& in_m) const;
    PolyQ to_m_basis(const PolyQ& in_v) const;

    // eta_R of a v-monomial, as sum c * v^a * t^b (includes the t^0 term).
    const std::vector<UnitTerm<LocalRational>>& right_unit(const Monomial& v_monomial) const;
    const std::vector<DiagTerm<LocalRational>>& diagonal(const Monomial& t_monomial) const;
    const std::vector<DiagTerm<LocalRational>>& reduced_diagonal(const Monomial& t_monomial) const;
    // Mod 2 reductions of the same tables.
    const std::vector<UnitTerm<F2>>& right_unit_mod2(const Monomial& v_monomial) const;
    const std::vector<DiagTerm<F2>>& reduced_diagonal_mod2(const Monomial& t_monomial) const;

private:
    void build_conversions();
    void build_right_unit();
    void build_diagonal();

    int max_u_;
    int k_;  // truncation index shared by m, v, t
    RingContextPtr m_, v_, t_;
    std::vector<PolyQ> v_in_m_, m_in_v_;  // index n (0 unused)
    std::unordered_map<Monomial, std::vector<UnitTerm<LocalRational>>, MonomialHash> eta_;
    std::unordered_map<Monomial, std::vector<UnitTerm<F2>>, MonomialHash> eta2_;
    std::unordered_map<Monomial, std::vector<DiagTerm<LocalRational>>, MonomialHash> full_, reduced_;
    std::unordered_map<Monomial, std::vector<DiagTerm<F2>>, MonomialHash> reduced2_;
};

// The motivic dual Steenrod algebra over M_2 = F_2[tau] for an algebraically
// closed field of characteristic 0:
//   A_Mot = M_2[tau_0, tau_1, ..., xi_1, xi_2, ...] / (tau_n^2 = tau xi_{n+1}),
//   Delta xi_n  = sum_i xi_{n-i}^{2^i} (x) xi_i,
//   Delta tau_n = tau_n (x) 1 + sum_i xi_{n-i}^{2^i} (x) tau_i.
// Degrees: |xi_n| = 2^{n+1}-2, |tau_n| = 2^{n+1}-1, weights 2^n-1. Basis
// monomials have every tau_n exponent in {0, 1}; the scalar tau is carried in
// the prefix context {MotTau}.
class AMotStructure
{
public:
    explicit AMotStructure(int max_u);

    const RingContextPtr& word() const { return word_; }
    const RingContextPtr& scalar() const { return scalar_; }
    int max_u() const { return word_->max_u(); }

    // Product of basis monomials: returns (tau power, normalized monomial).
    std::pair<int, Monomial> multiply(const Monomial& a, const Monomial& b) const;
    const std::vector<DiagTerm<F2>>& diagonal(const Monomial& m) const;
    const std::vector<DiagTerm<F2>>& reduced_diagonal(const Monomial& m) const;
    bool is_basis(const Monomial& m) const;
    // Basis monomials of internal degree u (tau exponents 0/1).
    std::vector<Monomial> basis(int u) const;
    int weight(const Monomial& m) const { return word_->weight(m); }

private:
    RingContextPtr word_, scalar_;
    std::vector<int> tau_slots_, xi_slots_;  // slot of tau_n (index n), xi_n (index n, 0 unused)
    std::unordered_map<Monomial, std::vector<DiagTerm<F2>>, MonomialHash> full_, reduced_;
};

// Operation-level entry points over shared default structures.
Cochain<F2> diagonal_P(const PStructure& p, const Monomial& m);
Cochain<F2> coaction_Q(const QCoaction& q, const Monomial& m);
Cochain<LocalRational> eta_R(const BPStructure& bp, const PolyZ2& c);
Cochain<LocalRational> diagonal_BP(const BPStructure& bp, const Monomial& t_monomial);
Cochain<F2> diagonal_AMot(const AMotStructure& a, const Monomial& m);

}  // namespace ank
