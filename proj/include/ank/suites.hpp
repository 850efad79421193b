#pragma once

#include "ank/motivic.hpp"
#include "ank/novikov.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace ank {

struct CheckResult
{
    std::string name;
    bool passed = false;
    std::string detail;
    std::string kind;  // error tag when the check threw
};

struct SuiteReport
{
    std::string suite;
    std::vector<CheckResult> checks;
    std::string summary;
    double seconds = 0;

    bool passed() const;
    int passed_count() const;
    void add(std::string name, bool ok, std::string detail = {});
};

// Shared, lazily built computational state. Layers are built on first use and
// reused by every suite that asks for the same bound.
class Workspace
{
public:
    explicit Workspace(int max_u = 24, std::size_t budget = kDefaultBlockBudget) : max_u_(max_u), budget_(budget) {}

    int max_u() const { return max_u_; }
    NovikovLayer& sphere();
    NovikovLayer& mod2();
    const MotivicAdamsE2& motivic_adams();
    const RouteA& route_a();
    const RouteB& route_b();

    // Region of the reference E1 chart: stem <= 15, s <= 8, s + t <= 8.
    static Region figure_region();

private:
    int max_u_;
    std::size_t budget_;
    std::unique_ptr<NovikovLayer> sphere_, mod2_;
    std::unique_ptr<MotivicAdamsE2> adams_;
    std::unique_ptr<RouteA> route_a_;
    std::unique_ptr<RouteB> route_b_;
};

// Each suite catches its own errors: a throw becomes a failed check tagged
// with the error kind.
SuiteReport suite_lemma61(Workspace& ws);
SuiteReport suite_cor62_massey(Workspace& ws);
SuiteReport suite_eta_r(Workspace& ws);
SuiteReport suite_figure1(Workspace& ws);
SuiteReport suite_vanishing(Workspace& ws);
SuiteReport suite_margolis(Workspace& ws);
SuiteReport suite_novikov_d1(Workspace& ws);
SuiteReport suite_alpha(Workspace& ws);
SuiteReport suite_einfty(Workspace& ws);
SuiteReport suite_manss(Workspace& ws);
SuiteReport suite_gi_e2(Workspace& ws);
SuiteReport suite_properties(Workspace& ws);

struct SuiteEntry
{
    std::string name;
    std::function<SuiteReport(Workspace&)> run;
};

// Every suite by CLI name, in acceptance order.
const std::vector<SuiteEntry>& all_suites();
const SuiteEntry& find_suite(const std::string& name);

}  // namespace ank
