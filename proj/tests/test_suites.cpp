#include "report.hpp"

#include <doctest.h>

using namespace ank;

TEST_CASE("BP cobar cocycles of the three generators") { require_all(suite_lemma61(shared_workspace())); }
TEST_CASE("Massey product memberships in the P cobar complex")
{
    require_all(suite_cor62_massey(shared_workspace()));
}
TEST_CASE("right unit formulas") { require_all(suite_eta_r(shared_workspace())); }
TEST_CASE("algebraic Novikov E1 chart") { require_all(suite_figure1(shared_workspace())); }
TEST_CASE("vanishing lines") { require_all(suite_vanishing(shared_workspace())); }
TEST_CASE("Margolis homology and h0 localization") { require_all(suite_margolis(shared_workspace())); }
TEST_CASE("d1 on the q2 squared family") { require_all(suite_novikov_d1(shared_workspace())); }
TEST_CASE("alpha family representatives") { require_all(suite_alpha(shared_workspace())); }
TEST_CASE("localized E infinity") { require_all(suite_einfty(shared_workspace())); }
TEST_CASE("motivic Adams-Novikov route") { require_all(suite_manss(shared_workspace())); }
TEST_CASE("motivic Adams route") { require_all(suite_gi_e2(shared_workspace())); }
TEST_CASE("module invariants") { require_all(suite_properties(shared_workspace())); }
