#pragma once

#include "ank/dataset.hpp"
#include "ank/novikov.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ank {

enum class Projection { Novikov, Adams };

// Novikov: (u - s, s). Adams: (u - s, s + t).
std::pair<int, int> project(Projection p, const MultiDegree& d);
Projection parse_projection(const std::string& name);
std::string to_string(Projection p);

struct ChartRegion
{
    int min_stem = 0;
    int max_stem = 15;
    int min_y = 0;
    int max_y = 8;
    bool contains(int x, int y) const { return x >= min_stem && x <= max_stem && y >= min_y && y <= max_y; }
};

struct ChartSpec
{
    Projection projection = Projection::Novikov;
    ChartRegion region;
    bool q0_lines = true;
    bool h0_lines = true;
    bool differentials = true;
    bool input_arrows = true;
    int multiplicity_threshold = 1;  // more classes than this collapse to a square
};

// An outgoing mark of a node. Differentials and structure lines carry the
// target position; tower marks do not.
struct ChartEdge
{
    std::string kind;  // "d<r>", "input-d<r>", "h0", "q0", "h0-tower", "q0-tower"
    int x = 0;
    int y = 0;
    auto operator<=>(const ChartEdge&) const = default;
};

struct ChartNode
{
    int x = 0;
    int y = 0;
    std::vector<int> t;        // distinct Novikov degrees, increasing
    std::vector<int> weights;  // distinct motivic weights, increasing
    int multiplicity = 0;
    std::vector<std::string> labels;  // sorted
    std::vector<ChartEdge> edges;     // sorted, with repetition
    bool operator==(const ChartNode&) const = default;
};

// The plotted nodes of one projection; nodes sorted by (x, y).
struct ChartTable
{
    Projection projection = Projection::Novikov;
    std::vector<ChartNode> nodes;
    bool operator==(const ChartTable&) const = default;
    const ChartNode* at(int x, int y) const;
};

// Groups the classes of `ds` inside the region by projected position. Throws
// RegionError listing the uncovered positions when the dataset's coverage
// does not contain the region.
ChartTable tabulate(const ChartSpec& spec, const SSDataset& ds);

inline constexpr const char* kTsvHeader = "stem\ty\tt\tweight\tmultiplicity\tlabels\tarrows";

std::string emit_tsv(const ChartTable& table);
ChartTable parse_tsv(const std::string& text, Projection p);
std::string emit_svg(const ChartSpec& spec, const ChartTable& table);

enum class ChartFormat { Svg, Tsv };
std::string emit(const ChartSpec& spec, const SSDataset& ds, ChartFormat f);

// H^*(P; Q) (or Q/(q_0)) over the region as displayed classes: at (s, t, u)
// the h_0-multiples of classes from (s-1, t, u-2) that survive localization
// are absorbed into the tower through their source, so the block contributes
// dim - c classes, c being the restriction rank one step down. Of those,
// r - c generate towers, r being the restriction rank here. Stem 0 carries the
// q_0-tower. Arrows are computed d_1's; lines are h_0 and q_0 products.
SSDataset novikov_chart_dataset(NovikovLayer& layer, const Region& region);

// Attach input differentials given as (source degree, target degree) pairs;
// each links the first class found at the source to the first class at the
// target, or to the bare target position when no class sits there.
void add_input_arrows(SSDataset& ds, const std::vector<std::pair<MultiDegree, MultiDegree>>& arrows, int page);

}  // namespace ank
