#pragma once

#include "ank/dga.hpp"
#include "ank/ext.hpp"

#include <map>
#include <memory>
#include <tuple>

namespace ank {

// Homology of the operator P^1 (the zeta_1-component of the coaction) on M^t
// in internal degree d, where M is Q or Q/(q_0).
struct MargolisDegree
{
    int t = 0;
    int d = 0;
    std::vector<Monomial> basis;         // monomial basis of M^t_d
    std::vector<BitVec> homology;        // chosen kernel representatives (over basis)
    RowReducer image{0};                 // im(P^1 : M^t_{d+2} -> M^t_d)
    RowReducer classes{0, true};         // homology representatives modulo image
    std::size_t kernel_dim = 0;
    int dimension() const { return static_cast<int>(homology.size()); }
};

class MargolisData
{
public:
    explicit MargolisData(std::shared_ptr<const QCoaction> q) : q_(std::move(q)) {}

    const QCoaction& module() const { return *q_; }
    // P^1 applied to a monomial, as a polynomial over F_2.
    PolyF2 p1(const Monomial& m) const;
    const MargolisDegree& at(int t, int d);
    int dimension(int t, int d) { return at(t, d).dimension(); }
    // Coordinates in the homology basis of a P^1-cycle given as a polynomial.
    BitVec express(const PolyF2& m, int t, int d);

private:
    std::vector<Monomial> module_basis(int t, int d) const;
    std::shared_ptr<const QCoaction> q_;
    std::map<std::pair<int, int>, std::unique_ptr<MargolisDegree>> cache_;
};

MargolisData margolis(std::shared_ptr<const QCoaction> q);

// Monomial counts used as independent predictions.
// Number of monomials of F_2[q_1^2, q_2, q_3, ...] (sphere) or F_2[q_1, q_2, ...]
// (mod 2) with Novikov degree t and internal degree d.
int predicted_margolis_dimension(bool mod2, int t, int d);

// All-zeta_1 part of a cocycle of Omega(P; M^t): the element m of M^t_{u-2s}
// with z restricting to m[zeta_1|...|zeta_1].
PolyF2 restrict_to_E(const PQAlgebroid& pq, const Cochain<F2>& z);

struct LocalizedGroup
{
    int stem = 0;
    int s = 0;
    int t = 0;
    int dimension_P = 0;       // dim H^{s,u}(P; M^t)
    int dimension_E = 0;       // dim H^{s,u}(E; M^t) = Margolis homology
    int restriction_rank = 0;  // rank of H(P) -> H(E)
    bool surjective = false;
    bool bijective = false;
    bool in_surjective_region = false;  // u - s < 5s - 4
    bool certified = false;             // u - s < 5s - 10
    int predicted = 0;                  // monomial count of the localized ring
};

class NovikovLayer
{
public:
    // mod2 selects the context S/2: Q/(q_0) and BP_*/2.
    NovikovLayer(int max_u, bool mod2, std::size_t budget = kDefaultBlockBudget);

    bool mod2() const { return mod2_; }
    ExtEngine& engine() { return engine_; }
    MargolisData& margolis_data() { return margolis_; }
    const PQAlgebroid& pq() const { return *pq_; }
    const BPAlgebroid& bp() const { return bp_; }
    const BPMod2Algebroid& bp_mod2() const { return bp2_; }
    std::shared_ptr<const BPStructure> bp_structure() const { return bps_; }

    // Restriction H^{s,u}(P; M^t) -> H(M; P^1)_{t, u-2s} in Margolis coordinates.
    BitVec restrict_class(const ExtClass& x);
    BitMatrix restriction_matrix(int s, int t, int u);
    LocalizedGroup localized_group(int s, int t, int u);
    // Every (s,t,u) of the region; throws CertificationError listing u-s < 5s-10
    // bidegrees of the region that fail bijectivity, or when none is certified.
    std::map<std::tuple<int, int, int>, LocalizedGroup> localize_h0(const Region& r);

    // d_1 of a class of H^{s,u}(P; M^t), landing in H^{s+1,u}(P; M^{t+1}).
    ExtClass d1(const ExtClass& x);
    // d_1 of an explicit cocycle (the representative need not be the basis one).
    ExtClass d1_of_cocycle(const Cochain<F2>& z);

    struct Lift
    {
        int exponent = 0;          // N
        ExtClass cls;              // X in H^{N}(P; M^t)
        Cochain<F2> representative;
    };
    // Smallest N <= max_n with target * h_0^N in the image of H(P) -> H(E).
    Lift minimal_lift(const Monomial& target, int t, int max_n = 8);

private:
    int max_u_;
    bool mod2_;
    std::shared_ptr<const PStructure> p_;
    std::shared_ptr<const QCoaction> q_;
    std::shared_ptr<const PQAlgebroid> pq_;
    ExtEngine engine_;
    MargolisData margolis_;
    std::shared_ptr<const BPStructure> bps_;
    BPAlgebroid bp_;
    BPMod2Algebroid bp2_;
};

// n = 0 searches q_1^2 (Novikov degree 2); n >= 1 searches q_{n+1} (degree 1).
NovikovLayer::Lift minimal_lift_exponent(NovikovLayer& layer, int n, int max_n = 8);

struct AlphaRecord
{
    int s = 0;
    bool integral = false;           // integral cocycle (odd s) or mod-2 (even s)
    Cochain<LocalRational> integral_rep;
    Cochain<F2> mod2_rep;
    int filtration = 0;
    bool cocycle = false;
    std::string detected_by;         // e.g. "q1^2 h0"
    Monomial detecting_monomial;     // in Q or Q/(q_0)
    int h0_power = 1;
    // s = 4 only: the filtration-1 all-t_1 part of (rep)[t1|t1|t1] + dy'.
    Cochain<F2> alpha1_cubed_alpha4_part;
};

// Builds and verifies the representative of alpha_s; throws GroundTruthError on
// a failed cocycle check. Odd s uses `sphere`, even s uses `mod2` layers.
AlphaRecord detect_alpha(NovikovLayer& sphere, NovikovLayer& mod2, int s);

struct LocalizedD1
{
    bool q3_hits_q2_squared_h0 = false;
    bool q1sq_cycle = false;  // d_1 q_1^2 = 0 (sphere) or d_1 q_1 = 0 (mod 2)
    bool q2_cycle = false;
};

// The elements of the BP cobar complex that lift 1, h_0 and the two Massey
// products, and their images in Omega(P; Q).
std::vector<Cochain<LocalRational>> bp_permanent_cocycles(const BPAlgebroid& bp);
std::vector<Cochain<F2>> pq_permanent_cocycles(const PQAlgebroid& pq);
// q_2[zeta_1] + q_1[zeta_2 + zeta_1^3] + q_0[zeta_1 zeta_2], whose coboundary is q_0[zeta_1^2|zeta_1^2].
Cochain<F2> massey_witness(const PQAlgebroid& pq);

// The localized E_1 page F_2[h0^{+-1}] (x) H(M;P^1) as a DGA graded by
// (s, t, u): generators q_1^2 (or q_1 mod 2), q_2, q_3, ... up to internal
// degree max_d + 2, with d_1(q_3) = q_2^2 h_0 when certified.
LaurentDGA localized_novikov_e1(bool mod2, const LocalizedD1& d1, int max_d);

// Dimensions keyed by (t, d = u - 2s); independent of s after inverting h_0.
struct PageTable
{
    std::map<std::pair<int, int>, int> e1, e2;
    std::map<std::pair<int, int>, int> predicted;  // monomial count of the stated E_infinity ring
};

PageTable assemble_einfty(bool mod2, const LocalizedD1& d1, int max_d);

// Rank at (t, d) of the map of E_2 = E_infinity pages induced by S -> S/2.
int sphere_to_moore_rank(const LocalizedD1& sphere, const LocalizedD1& moore, int t, int d, int max_d);

}  // namespace ank
