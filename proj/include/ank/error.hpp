#pragma once

#include <stdexcept>
#include <string>

namespace ank {

// Base of every error raised by the library. `kind()` is the short
// machine-readable tag used in CLI failure reports.
class Error : public std::runtime_error
{
public:
    Error(std::string kind, const std::string& what) : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define ANK_DEFINE_ERROR(Name, tag)                                          \
    class Name : public Error                                                \
    {                                                                        \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(tag, what) {}         \
    };

ANK_DEFINE_ERROR(TruncationError, "truncation")
ANK_DEFINE_ERROR(ContextError, "context")
ANK_DEFINE_ERROR(NotLocalError, "not-2-local")
ANK_DEFINE_ERROR(IntegralityError, "integrality")
ANK_DEFINE_ERROR(FiltrationError, "filtration")
ANK_DEFINE_ERROR(BudgetError, "budget")
ANK_DEFINE_ERROR(RegionError, "region")
ANK_DEFINE_ERROR(NotDefinedError, "not-defined")
ANK_DEFINE_ERROR(SearchError, "search")
ANK_DEFINE_ERROR(CertificationError, "certification")
ANK_DEFINE_ERROR(GradingError, "grading")
ANK_DEFINE_ERROR(GroundTruthError, "ground-truth")
ANK_DEFINE_ERROR(CacheError, "cache")
ANK_DEFINE_ERROR(ConfigError, "config")

#undef ANK_DEFINE_ERROR

}  // namespace ank
