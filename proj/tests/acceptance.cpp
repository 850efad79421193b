#include "ank/suites.hpp"

#include <fmt/core.h>

#include <string>
#include <vector>

using namespace ank;

namespace {

struct Criterion
{
    int id;
    std::string suite;
    double max_seconds;  // wall time of the suite with earlier layers already built
};

// Equality throughout; only runtimes carry limits. Criteria without a stated
// bound get ten minutes.
const std::vector<Criterion> kCriteria = {
    {1, "lemma61", 1.0},        {2, "cor62-massey", 10.0}, {3, "figure1", 600.0},  {4, "vanishing", 600.0},
    {5, "margolis", 600.0},     {6, "novikov-d1", 1800.0}, {7, "alpha", 600.0},    {8, "einfty", 60.0},
    {9, "manss", 60.0},         {10, "gi-e2", 3600.0},     {11, "properties", 600.0},
};

}  // namespace

int main()
{
    Workspace ws(24);
    int failed = 0;
    for (const auto& c : kCriteria) {
        const SuiteReport r = find_suite(c.suite).run(ws);
        const bool in_time = r.seconds < c.max_seconds;
        const bool ok = r.passed() && in_time;
        failed += !ok;
        fmt::print("{} criterion {}: {} ({}/{} checks, {:.2f} s, limit {:.0f} s)\n", ok ? "PASS" : "FAIL", c.id, c.suite,
                   r.passed_count(), r.checks.size(), r.seconds, c.max_seconds);
        for (const auto& ch : r.checks)
            if (!ch.passed)
                fmt::print("    failed: {} {}\n", ch.name, ch.detail);
    }
    fmt::print("{} of {} criteria passed\n", kCriteria.size() - static_cast<std::size_t>(failed), kCriteria.size());
    return failed == 0 ? 0 : 1;
}
