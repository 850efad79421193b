#pragma once

#include "ank/cobar.hpp"
#include "ank/dataset.hpp"
#include "ank/dga.hpp"
#include "ank/resolution.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace ank {

// ---- tau-extension ---------------------------------------------------------

// Weight of tau^n x for a classical class x of internal degree u: u/2 - n.
int tau_weight(int u, int n);

// Every class x becomes tau^n x for 0 <= n <= max_tau with weight u/2 - n. A
// differential x -> y of the classical dataset becomes tau^n x -> tau^(n + (u(y)-u(x))/2) y,
// the unique weight-preserving lift; lifts leaving the tau range are dropped.
SSDataset tau_extend(const SSDataset& classical, int max_tau);

// ---- localized motivic Adams-Novikov (route A) -------------------------------

// (stem, weight) -> dimension.
using BigradedTable = std::map<std::pair<int, int>, int>;

// F_2[abar_1^{+-1}][tau, abar_3, abar_4]/(abar_4^2) graded by (s, stem, weight),
// with d_3(abar_3) = tau abar_1^4 of degree (3, -1, 0). The filter is the
// coweight stem - weight.
LaurentDGA localized_manss_e3();

// Monomial count of F_2[eta^{+-1}, sigma, mu_9]/(sigma^2) in (stem, weight).
int eta_local_dimension(int stem, int w);

struct RouteA
{
    BigradedTable e3, einfty;
    BigradedTable renamed;  // monomial count of F_2[abar_1^{+-1}, abar_4, abar_5]/(abar_4^2)
    BigradedTable target;   // eta_local_dimension
    bool tau_killed = false;      // tau = d(abar_1^{-4} abar_3) and [tau] = 0
    bool d_squared_zero = false;
    bool renamed_spans = false;   // the renamed monomials are independent cycles spanning E_infinity
    std::vector<std::string> mismatches;
    SSDataset classes;  // E_infinity basis by renamed monomial
};

RouteA run_localized_manss(int max_coweight, int max_abs_stem);

// ---- motivic Adams E_2 (route B) ---------------------------------------------

// Ext^{s,u,*}_{A}(M_2, M_2) in one (s, u) as a graded F_2[tau]-module.
struct MotivicExtBlock
{
    int s = 0;
    int u = 0;
    TauModule module;
    int dimension(int w) const { return module.dimension(w); }
};

// The cobar complex Omega(A_Mot) in internal degree u as a tau-complex on its
// tau-free words, levels 0..max_s + 1.
TauComplex cobar_tau_complex(const AMotAlgebroid& a, int u, int max_s);

// Cobar route, for small degrees: every (s, u) with s <= max_s, u <= max_u.
std::map<std::pair<int, int>, MotivicExtBlock> motivic_adams_e2_cobar(int max_u, int max_s);

// Resolution route over the window stem <= max_stem, s <= max_s.
class MotivicAdamsE2
{
public:
    MotivicAdamsE2(int max_stem, int max_s);

    int max_stem() const { return max_stem_; }
    int max_s() const { return max_s_; }
    const MotivicResolution& resolution() const { return *res_; }
    MotivicExtBlock block(int s, int u) const;
    int dimension(int s, int u, int w) const;
    // Is h_0 : (s, u, w) -> (s+1, u+2, w+1) an isomorphism?
    bool h0_iso(int s, int u, int w) const;
    bool in_window(int s, int u) const { return s >= 0 && s <= max_s_ && u - s <= max_stem_ && u >= s; }

private:
    int max_stem_, max_s_;
    std::shared_ptr<const MotivicResolution> res_;
};

// Monomial count of F_2[h0^{+-1}, v_1^4, v_2, v_3, ...] on the h0-line (d, c),
// d = u - 2s, c = u - s - w, where |h0| = (1,2,1), |v_1^4| = (4,12,4) and
// |v_n| = (1, 2^{n+1}-1, 2^n-1).
int predicted_localized_adams(int d, int c);

// The localized E_2 page as a DGA in (s, u, w) with generators v_1^4, v_2, ...
// of coweight <= max_c + 1 and, when requested, d_2 v_{n+1} = v_n^2 h_0 (n >= 2).
LaurentDGA localized_adams_e2(int max_c, bool with_d2);

struct LocalizedLine
{
    int d = 0;
    int c = 0;
    struct Position
    {
        int s, u, w, dimension;
        bool iso_to_next;
    };
    std::vector<Position> positions;
    int stable = -1;
    bool certified = false;  // h0 an isomorphism on the last three steps in the window
    int predicted = 0;
};

struct RouteB
{
    std::map<std::pair<int, int>, LocalizedLine> lines;
    int certified = 0;
    // The d_2 target v_2^2 h_0 at (3,16,7).
    int target_dimension = -1;   // stable localized dimension on its line
    int target_predicted = 0;
    bool target_unique = false;
    bool d2_applied = false;
    bool weight_preserved = false;
    BigradedTable e2, einfty;  // by (stem, weight), summed over lines
    std::vector<std::string> mismatches;
};

RouteB localized_motivic_adams(const MotivicAdamsE2& e2, int max_coweight, int max_abs_stem);

struct RouteComparison
{
    // (stem, weight) -> {route A, route B, eta-local ring}
    std::map<std::pair<int, int>, std::array<int, 3>> table;
    std::vector<std::string> mismatches;
    bool agree() const { return mismatches.empty(); }
};

RouteComparison compare_routes(const RouteA& a, const RouteB& b);

}  // namespace ank
