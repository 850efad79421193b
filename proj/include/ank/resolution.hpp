#pragma once

#include "ank/hopf.hpp"
#include "ank/tau_complex.hpp"

#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

namespace ank {

// The motivic Steenrod algebra A = Hom_{M_2}(A_Mot, M_2), with basis e_m dual
// to the monomial basis of A_Mot. The product is dual to the diagonal:
// e_a e_b = sum tau^j e_m over the terms tau^j (a (x) b) of Delta(m). In A the
// element e_m has weight w(m) and tau has weight +1, so A is connected for the
// lexicographic order on (internal degree, weight).
class MotivicSteenrod
{
public:
    explicit MotivicSteenrod(int max_u);

    int max_u() const { return max_u_; }
    const AMotStructure& dual() const { return *a_; }
    // Global index of the basis element e_m; ids increase with degree.
    int size() const { return static_cast<int>(mono_.size()); }
    const Monomial& monomial(int id) const { return mono_[static_cast<std::size_t>(id)]; }
    int degree(int id) const { return deg_[static_cast<std::size_t>(id)]; }
    int weight(int id) const { return wt_[static_cast<std::size_t>(id)]; }
    int unit() const { return 0; }
    // Ids of degree u.
    std::pair<int, int> range(int u) const { return {offset_.at(static_cast<std::size_t>(u)), offset_.at(static_cast<std::size_t>(u) + 1)}; }
    // e_a e_b as (id, tau power) pairs.
    const std::vector<std::pair<int, int>>& product(int a, int b) const;

private:
    int max_u_;
    std::shared_ptr<const AMotStructure> a_;
    std::vector<Monomial> mono_;
    std::vector<int> deg_, wt_, offset_;
    std::unordered_map<std::uint64_t, std::vector<std::pair<int, int>>> prod_;
};

// A minimal free resolution F_s of M_2 = F_2[tau] over A, minimal with respect
// to the augmentation ideal (positive degree and tau). Generators of F_s occur
// only in weights w <= u/2, the bound satisfied by the cobar construction of
// A_Mot reduced mod tau, so truncating at that weight loses nothing.
//
// An element of F_s is a set of pairs (e_m, g); the tau power of each pair is
// implicit, fixed by the weight of the element. Multiplication by tau is
// therefore the identity on pair sets.
class MotivicResolution
{
public:
    struct Generator
    {
        int u = 0;
        int w = 0;
        std::vector<std::pair<int, int>> d;  // (algebra id, generator of F_{s-1})
    };

    MotivicResolution(std::shared_ptr<const MotivicSteenrod> a, int max_s, int max_u);

    int max_s() const { return max_s_; }
    int max_u() const { return max_u_; }
    const MotivicSteenrod& algebra() const { return *a_; }
    const std::vector<Generator>& generators(int s) const { return gens_.at(static_cast<std::size_t>(s)); }
    // The generators of F_s in internal degree u, as indices into generators(s).
    const std::vector<int>& in_degree(int s, int u) const;

    // Hom_A(F, M_2) restricted to generators of degree u: level s is F_s and
    // the generator g contributes the class dual to g in weight w(g).
    const TauComplex& hom_complex(int u) const;

    // h_0 times a cocycle of level s in degree u and weight w, returned as a
    // cocycle of level s+1 in degree u+2 and weight w+1.
    BitVec h0_times(int s, int u, int w, const BitVec& cocycle) const;

    // d o d = 0 on every generator.
    bool d_squared_zero() const;

private:
    struct Space
    {
        std::vector<std::pair<int, int>> basis;
        std::map<std::pair<int, int>, int> index;
    };
    Space space(int s, int u, int w) const;
    // d of the pair (m, g) of F_s, as pairs of F_{s-1} (for s = 0: empty).
    std::vector<std::pair<int, int>> apply_d(int s, int m, int g) const;
    BitVec image_vector(int s, int m, int g, const Space& target) const;
    void build();

    std::shared_ptr<const MotivicSteenrod> a_;
    int max_s_, max_u_;
    std::vector<std::vector<Generator>> gens_;
    std::vector<std::vector<std::vector<int>>> by_degree_;
    int h0_gen_ = -1;
    mutable std::map<int, std::unique_ptr<TauComplex>> complexes_;
};

}  // namespace ank
