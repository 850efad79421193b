#pragma once

#include "ank/grading.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ank {

// One basis element of a spectral sequence page.
struct SSClass
{
    MultiDegree degree;
    std::string label;
    bool tower = false;      // generates an h0-tower that continues past the region
    bool unbounded = false;  // member of the q0-tower drawn as the infinity marker
};

// A differential between two classes of the same dataset.
struct SSArrow
{
    std::size_t source = 0;
    std::size_t target = 0;
    int page = 1;
    bool input = false;  // supplied as an annotation rather than computed
    // Input arrows may end at an empty position; then `target` is unused.
    std::optional<MultiDegree> target_degree;
};

// A multiplicative structure line: target has a nonzero component in
// `factor` times source.
struct SSLine
{
    std::size_t source = 0;
    std::size_t target = 0;
    std::string factor;  // "h0" or "q0"
};

// The bounds inside which every block of the dataset was computed.
struct SSCoverage
{
    int max_stem = 0;
    int max_s = 0;
    int max_t = 0;
    std::optional<int> max_s_plus_t;
};

struct SSDataset
{
    std::string name;
    std::vector<SSClass> classes;
    std::vector<SSArrow> arrows;
    std::vector<SSLine> lines;
    std::optional<SSCoverage> coverage;
};

}  // namespace ank
