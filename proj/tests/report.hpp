#pragma once

#include "ank/suites.hpp"

#include <doctest.h>

// Every check of a suite becomes one assertion, so a failure names the check.
inline void require_all(const ank::SuiteReport& r)
{
    REQUIRE_FALSE(r.checks.empty());
    for (const auto& c : r.checks) {
        INFO(r.suite << ": " << c.name << " -- " << c.detail << " " << c.kind);
        CHECK(c.passed);
    }
}

// One workspace for the whole binary; layers are reused across test cases.
inline ank::Workspace& shared_workspace()
{
    static ank::Workspace ws(24);
    return ws;
}
