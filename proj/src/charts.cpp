#include "ank/charts.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <map>
#include <set>
#include <sstream>

namespace ank {

std::pair<int, int> project(Projection p, const MultiDegree& d)
{
    return {d.u - d.s, p == Projection::Novikov ? d.s : d.s + d.t};
}

Projection parse_projection(const std::string& name)
{
    if (name == "novikov")
        return Projection::Novikov;
    if (name == "adams")
        return Projection::Adams;
    throw ConfigError(fmt::format("unknown projection '{}' (novikov|adams)", name));
}

std::string to_string(Projection p)
{
    return p == Projection::Novikov ? "novikov" : "adams";
}

const ChartNode* ChartTable::at(int x, int y) const
{
    for (const auto& n : nodes)
        if (n.x == x && n.y == y)
            return &n;
    return nullptr;
}

namespace {

// Offset of a page-r differential in each projection: d_r raises s by 1 and
// t by r, keeping u.
std::pair<int, int> differential_offset(Projection p, int r)
{
    return {-1, p == Projection::Novikov ? 1 : 1 + r};
}

bool covers(const SSCoverage& c, Projection p, int x, int y)
{
    if (x > c.max_stem || x < 0 || y < 0)
        return false;
    if (p == Projection::Novikov)
        return y <= c.max_s;
    // Every split y = s + t must be inside.
    if (c.max_s_plus_t)
        return y <= *c.max_s_plus_t;
    return y <= std::min(c.max_s, c.max_t);
}

void check_field(const std::string& s)
{
    if (s.find_first_of("\t\n;") != std::string::npos)
        throw ConfigError(fmt::format("label '{}' contains a reserved character", s));
}

}  // namespace

ChartTable tabulate(const ChartSpec& spec, const SSDataset& ds)
{
    const auto& reg = spec.region;
    if (ds.coverage) {
        std::vector<std::string> missing;
        for (int x = std::max(reg.min_stem, 0); x <= reg.max_stem; ++x)
            for (int y = std::max(reg.min_y, 0); y <= reg.max_y; ++y)
                if (!covers(*ds.coverage, spec.projection, x, y))
                    missing.push_back(fmt::format("({},{})", x, y));
        if (!missing.empty()) {
            std::string list;
            for (const auto& m : missing)
                list += (list.empty() ? "" : " ") + m;
            throw RegionError("dataset does not cover the chart region; missing blocks at " + list);
        }
    } else if (!ds.classes.empty()) {
        throw RegionError("dataset without coverage cannot be charted");
    }

    std::map<std::pair<int, int>, ChartNode> nodes;
    std::vector<std::pair<int, int>> pos(ds.classes.size());
    std::vector<bool> inside(ds.classes.size());
    for (std::size_t i = 0; i < ds.classes.size(); ++i) {
        const auto& c = ds.classes[i];
        pos[i] = project(spec.projection, c.degree);
        inside[i] = reg.contains(pos[i].first, pos[i].second);
        if (!inside[i])
            continue;
        ChartNode& n = nodes[pos[i]];
        n.x = pos[i].first;
        n.y = pos[i].second;
        ++n.multiplicity;
        n.t.push_back(c.degree.t);
        if (c.degree.w)
            n.weights.push_back(*c.degree.w);
        if (!c.label.empty()) {
            check_field(c.label);
            n.labels.push_back(c.label);
        }
        if (c.tower)
            n.edges.push_back({"h0-tower", 0, 0});
        if (c.unbounded && std::none_of(n.edges.begin(), n.edges.end(), [](const ChartEdge& e) { return e.kind == "q0-tower"; }))
            n.edges.push_back({"q0-tower", 0, 0});
    }
    for (const auto& a : ds.arrows) {
        const bool free_target = a.input && a.target_degree;
        if (a.source >= ds.classes.size() || (!free_target && a.target >= ds.classes.size()))
            throw GradingError("arrow references a missing class");
        const auto tpos = free_target ? project(spec.projection, *a.target_degree) : pos[a.target];
        if (!inside[a.source] || !reg.contains(tpos.first, tpos.second))
            continue;
        if (a.input ? !spec.input_arrows : !spec.differentials)
            continue;
        const auto [dx, dy] = differential_offset(spec.projection, a.page);
        if (!a.input && (tpos.first != pos[a.source].first + dx || tpos.second != pos[a.source].second + dy))
            throw GradingError(fmt::format("d_{} arrow from ({},{}) to ({},{}) has the wrong degree", a.page,
                                           pos[a.source].first, pos[a.source].second, tpos.first, tpos.second));
        nodes[pos[a.source]].edges.push_back({fmt::format("{}d{}", a.input ? "input-" : "", a.page), tpos.first, tpos.second});
    }
    for (const auto& l : ds.lines) {
        if (l.source >= ds.classes.size() || l.target >= ds.classes.size())
            throw GradingError("structure line references a missing class");
        if (!inside[l.source] || !inside[l.target])
            continue;
        if ((l.factor == "h0" && !spec.h0_lines) || (l.factor == "q0" && !spec.q0_lines))
            continue;
        // q0 lines collapse inside a Novikov node.
        if (pos[l.source] == pos[l.target])
            continue;
        nodes[pos[l.source]].edges.push_back({l.factor, pos[l.target].first, pos[l.target].second});
    }

    ChartTable out;
    out.projection = spec.projection;
    for (auto& [k, n] : nodes) {
        std::sort(n.t.begin(), n.t.end());
        n.t.erase(std::unique(n.t.begin(), n.t.end()), n.t.end());
        std::sort(n.weights.begin(), n.weights.end());
        n.weights.erase(std::unique(n.weights.begin(), n.weights.end()), n.weights.end());
        std::sort(n.labels.begin(), n.labels.end());
        std::sort(n.edges.begin(), n.edges.end());
        out.nodes.push_back(std::move(n));
    }
    return out;
}

// ---- TSV -------------------------------------------------------------------

namespace {

std::string join_ints(const std::vector<int>& v)
{
    if (v.empty())
        return "-";
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

int parse_int(const std::string& s)
{
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = std::string::npos;
    }
    if (used != s.size())
        throw ConfigError(fmt::format("malformed integer '{}' in chart table", s));
    return v;
}

std::vector<int> parse_ints(const std::string& s)
{
    std::vector<int> out;
    if (s == "-")
        return out;
    for (const auto& p : split(s, ','))
        out.push_back(parse_int(p));
    return out;
}

}  // namespace

std::string emit_tsv(const ChartTable& table)
{
    std::string out = kTsvHeader;
    out += '\n';
    for (const auto& n : table.nodes) {
        std::string labels, arrows;
        for (const auto& l : n.labels)
            labels += (labels.empty() ? "" : ";") + l;
        for (const auto& e : n.edges) {
            arrows += arrows.empty() ? "" : ";";
            if (e.kind == "h0-tower" || e.kind == "q0-tower")
                arrows += e.kind;
            else
                arrows += fmt::format("{}@{},{}", e.kind, e.x, e.y);
        }
        out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\n", n.x, n.y, join_ints(n.t), join_ints(n.weights), n.multiplicity,
                           labels.empty() ? "-" : labels, arrows.empty() ? "-" : arrows);
    }
    return out;
}

ChartTable parse_tsv(const std::string& text, Projection p)
{
    ChartTable table;
    table.projection = p;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kTsvHeader)
        throw ConfigError("chart table lacks the fixed header line");
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty())
            continue;
        auto f = split(line, '\t');
        if (f.size() != 7)
            throw ConfigError(fmt::format("chart table row {} has {} fields, expected 7", row, f.size()));
        ChartNode n;
        n.x = parse_int(f[0]);
        n.y = parse_int(f[1]);
        n.t = parse_ints(f[2]);
        n.weights = parse_ints(f[3]);
        n.multiplicity = parse_int(f[4]);
        if (f[5] != "-")
            n.labels = split(f[5], ';');
        if (f[6] != "-")
            for (const auto& e : split(f[6], ';')) {
                auto at = e.find('@');
                if (at == std::string::npos) {
                    if (e != "h0-tower" && e != "q0-tower")
                        throw ConfigError(fmt::format("unknown mark '{}' in chart table row {}", e, row));
                    n.edges.push_back({e, 0, 0});
                    continue;
                }
                auto xy = split(e.substr(at + 1), ',');
                if (xy.size() != 2)
                    throw ConfigError(fmt::format("malformed arrow '{}' in chart table row {}", e, row));
                n.edges.push_back({e.substr(0, at), parse_int(xy[0]), parse_int(xy[1])});
            }
        table.nodes.push_back(std::move(n));
    }
    return table;
}

// ---- SVG -------------------------------------------------------------------

namespace {

constexpr double kUnit = 40.0;
constexpr double kMargin = 50.0;

struct Canvas
{
    const ChartRegion& r;
    double width() const { return 2 * kMargin + kUnit * (r.max_stem - r.min_stem + 1); }
    double height() const { return 2 * kMargin + kUnit * (r.max_y - r.min_y + 1); }
    double px(double x) const { return kMargin + kUnit * (x - r.min_stem); }
    double py(double y) const { return height() - kMargin - kUnit * (y - r.min_y); }
};

std::string num(double v)
{
    return fmt::format("{:.2f}", v);
}

}  // namespace

std::string emit_svg(const ChartSpec& spec, const ChartTable& table)
{
    const Canvas c{spec.region};
    std::string out;
    out += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\">\n",
                       num(c.width()), num(c.height()));
    out += "<defs><marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" orient=\"auto\">"
           "<path d=\"M0,0 L6,3 L0,6 z\"/></marker></defs>\n";
    // Axes and ticks.
    const double x0 = c.px(spec.region.min_stem), y0 = c.py(spec.region.min_y);
    out += fmt::format("<path d=\"M{},{} L{},{}\" stroke=\"black\"/>\n", num(x0), num(y0), num(c.px(spec.region.max_stem + 0.5)), num(y0));
    out += fmt::format("<path d=\"M{},{} L{},{}\" stroke=\"black\"/>\n", num(x0), num(y0), num(x0), num(c.py(spec.region.max_y + 0.5)));
    for (int x = spec.region.min_stem; x <= spec.region.max_stem; ++x)
        if (x % 2 == 0)
            out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{}</text>\n", num(c.px(x)),
                               num(y0 + 15), x);
    for (int y = spec.region.min_y; y <= spec.region.max_y; ++y)
        if (y % 2 == 0)
            out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">{}</text>\n", num(x0 - 8),
                               num(c.py(y) + 3), y);
    out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\">u-s</text>\n", num(c.px(spec.region.max_stem + 0.5)),
                       num(y0 + 30));
    out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\">{}</text>\n", num(x0 - 30),
                       num(c.py(spec.region.max_y + 0.5)), spec.projection == Projection::Novikov ? "s" : "s+t");

    auto line = [&](double ax, double ay, double bx, double by, const char* colour, bool head, bool dashed) {
        out += fmt::format("<path d=\"M{},{} L{},{}\" stroke=\"{}\"{}{}/>\n", num(c.px(ax)), num(c.py(ay)), num(c.px(bx)),
                           num(c.py(by)), colour, dashed ? " stroke-dasharray=\"3,3\"" : "",
                           head ? " marker-end=\"url(#head)\"" : "");
    };
    for (const auto& n : table.nodes)
        for (const auto& e : n.edges) {
            if (e.kind == "h0" || e.kind == "q0") {
                line(n.x, n.y, e.x, e.y, "black", false, false);
            } else if (e.kind == "h0-tower") {
                // Arrow glyph, then a dashed continuation to the region edge.
                line(n.x, n.y, n.x + 0.8, n.y + 0.8, "blue", true, false);
                const double reach = std::min(spec.region.max_stem - n.x, spec.region.max_y - n.y) + 0.5;
                if (reach > 0.8)
                    line(n.x + 0.8, n.y + 0.8, n.x + reach, n.y + reach, "gray", false, true);
            } else if (e.kind == "q0-tower") {
                if (table.projection == Projection::Adams)
                    line(n.x, n.y, n.x, n.y + 0.8, "blue", true, false);
            } else {
                const bool input = e.kind.rfind("input-", 0) == 0;
                line(n.x, n.y, e.x, e.y, input ? "red" : "green", true, false);
            }
        }
    for (const auto& n : table.nodes) {
        const bool unbounded = std::any_of(n.edges.begin(), n.edges.end(), [](const ChartEdge& e) { return e.kind == "q0-tower"; });
        if (n.multiplicity > spec.multiplicity_threshold || (unbounded && table.projection == Projection::Novikov)) {
            out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"6.00\" height=\"6.00\" fill=\"black\"/>\n", num(c.px(n.x) - 3),
                               num(c.py(n.y) - 3));
            const std::string mark = unbounded && table.projection == Projection::Novikov ? "&#8734;" : std::to_string(n.multiplicity);
            out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"8\" text-anchor=\"end\">{}</text>\n", num(c.px(n.x) - 4),
                               num(c.py(n.y) - 4), mark);
        } else {
            for (int i = 0; i < n.multiplicity; ++i)
                out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"2.50\" fill=\"black\"/>\n", num(c.px(n.x) + 5.0 * i),
                                   num(c.py(n.y)));
        }
        if (!n.labels.empty()) {
            std::string text;
            for (const auto& l : n.labels)
                text += (text.empty() ? "" : " ") + l;
            out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"8\">{}</text>\n", num(c.px(n.x) + 4), num(c.py(n.y) + 10),
                               text);
        }
    }
    out += "</svg>\n";
    return out;
}

std::string emit(const ChartSpec& spec, const SSDataset& ds, ChartFormat f)
{
    ChartTable t = tabulate(spec, ds);
    return f == ChartFormat::Svg ? emit_svg(spec, t) : emit_tsv(t);
}

// ---- Figure dataset ---------------------------------------------------------

namespace {

struct DisplayBlock
{
    MultiDegree degree;
    int dimension = 0;
    int absorbed = 0;                    // c: h0-multiples of localizing classes
    std::unique_ptr<RowReducer> solver;  // rows: absorbed vectors, then displayed basis vectors
    std::vector<std::size_t> displayed;  // basis indices shown as classes
    std::vector<std::size_t> class_ids;  // dataset index of each displayed class
};

}  // namespace

SSDataset novikov_chart_dataset(NovikovLayer& layer, const Region& region)
{
    ExtEngine& eng = layer.engine();
    const PQAlgebroid& pq = layer.pq();
    SSDataset ds;
    ds.name = layer.mod2() ? "H(P;Q/(q0))" : "H(P;Q)";
    ds.coverage = SSCoverage{region.max_stem.value_or(region.max_u), region.max_s, region.max_t, region.max_s_plus_t};

    const ExtClass h0 = eng.express(h_cochain(pq, 0));
    std::optional<ExtClass> q0;
    if (!layer.mod2())
        q0 = eng.express(q0_power(pq, 1));

    // Candidate names, tested by equality of classes.
    std::vector<std::pair<std::string, ExtClass>> names;
    if (!layer.mod2())
        for (int t = 0; t <= region.max_t; ++t)
            names.emplace_back(t == 0 ? "1" : t == 1 ? "q0" : fmt::format("q0^{}", t), eng.express(q0_power(pq, t)));
    if (!layer.mod2()) {
        const auto cyc = pq_permanent_cocycles(pq);
        if (region.contains(1, 2, 6))
            names.emplace_back("Ph0", eng.express(cyc[2]));
        if (region.contains(2, 1, 10))
            names.emplace_back("<h0,q0,h1^2>", eng.express(cyc[3]));
    }
    for (int n = 0; (2 << n) <= layer.engine().max_u(); ++n) {
        if (!region.contains(1, 0, 2 << n))
            continue;
        ExtClass h = eng.express(h_cochain(pq, n));
        names.emplace_back(fmt::format("h{}", n), h);
        if (n >= 1 && region.contains(2, 0, 4 << n))
            names.emplace_back(fmt::format("h{}^2", n), eng.product(h, h));
    }

    std::map<std::tuple<int, int, int>, DisplayBlock> blocks;
    auto in_region = [&](int s, int t, int u) { return region.contains(s, t, u) && u >= 2 * s && u <= eng.max_u(); };
    for (int u = 0; u <= region.max_u; u += 2)
        for (int s = 0; s <= region.max_s; ++s)
            for (int t = 0; t <= region.max_t; ++t) {
                if (!in_region(s, t, u))
                    continue;
                const int n = eng.dimension(s, t, u);
                if (n == 0)
                    continue;
                DisplayBlock b;
                b.degree = MultiDegree{s, t, u, std::nullopt};
                b.dimension = n;
                b.solver = std::make_unique<RowReducer>(static_cast<std::size_t>(n), true);
                if (s >= 2 && in_region(s - 1, t, u - 2)) {
                    const int m = eng.dimension(s - 1, t, u - 2);
                    BitMatrix r = layer.restriction_matrix(s - 1, t, u - 2);
                    RowReducer seen(r.cols());
                    for (int i = 0; i < m; ++i)
                        if (seen.insert(r.row(static_cast<std::size_t>(i)))) {
                            ExtClass x = eng.product(eng.basis_class(s - 1, t, u - 2, i), h0);
                            if (!b.solver->insert(x.coords))
                                throw CertificationError("h0 fails to be injective on a localizing class");
                            ++b.absorbed;
                        }
                }
                for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
                    BitVec e(static_cast<std::size_t>(n));
                    e.set(i);
                    if (b.solver->insert(e))
                        b.displayed.push_back(i);
                }
                // Tower generators: displayed classes whose restrictions are
                // independent of the absorbed ones.
                std::vector<bool> tower(b.displayed.size(), false);
                if (s >= 1) {
                    // Restriction commutes with h0 and keeps Margolis
                    // coordinates, so the absorbed restrictions are those one
                    // step down.
                    BitMatrix r = layer.restriction_matrix(s, t, u);
                    RowReducer restr(r.cols());
                    if (s >= 2 && in_region(s - 1, t, u - 2)) {
                        BitMatrix r1 = layer.restriction_matrix(s - 1, t, u - 2);
                        for (std::size_t i = 0; i < r1.rows(); ++i)
                            restr.insert(r1.row(i));
                    }
                    for (std::size_t k = 0; k < b.displayed.size(); ++k)
                        tower[k] = restr.insert(r.row(b.displayed[k]));
                }
                for (std::size_t k = 0; k < b.displayed.size(); ++k) {
                    SSClass c;
                    c.degree = b.degree;
                    c.tower = tower[k];
                    c.unbounded = !layer.mod2() && s == 0 && u == 0;
                    b.class_ids.push_back(ds.classes.size());
                    ds.classes.push_back(std::move(c));
                }
                blocks.emplace(std::make_tuple(s, t, u), std::move(b));
            }

    // Coordinates of a class over the displayed basis of its block.
    auto displayed_components = [&](const ExtClass& x) -> std::vector<std::size_t> {
        std::vector<std::size_t> out;
        auto it = blocks.find({x.degree.s, x.degree.t, x.degree.u});
        if (it == blocks.end() || x.is_zero())
            return out;
        const DisplayBlock& b = it->second;
        BitVec v = x.coords;
        BitVec tag = b.solver->reduce(v);
        for (std::size_t k = 0; k < b.displayed.size(); ++k)
            if (tag.get(static_cast<std::size_t>(b.absorbed) + k))
                out.push_back(b.class_ids[k]);
        return out;
    };

    for (const auto& [name, cls] : names) {
        auto comps = displayed_components(cls);
        if (comps.size() == 1) {
            auto it = blocks.find({cls.degree.s, cls.degree.t, cls.degree.u});
            BitVec v = cls.coords;
            BitVec tag = it->second.solver->reduce(v);
            if (tag.popcount() == 1)
                ds.classes[comps[0]].label = name;
        }
    }

    for (auto& [key, b] : blocks) {
        const auto [s, t, u] = key;
        for (std::size_t k = 0; k < b.displayed.size(); ++k) {
            BitVec e(static_cast<std::size_t>(b.dimension));
            e.set(b.displayed[k]);
            const ExtClass x{b.degree, e, ""};
            const std::size_t src = b.class_ids[k];
            if (s >= 1 && in_region(s + 1, t + 1, u))
                for (std::size_t tgt : displayed_components(layer.d1(x)))
                    ds.arrows.push_back({src, tgt, 1, false, std::nullopt});
            if (in_region(s + 1, t, u + 2))
                for (std::size_t tgt : displayed_components(eng.product(x, h0)))
                    ds.lines.push_back({src, tgt, "h0"});
            if (q0 && in_region(s, t + 1, u))
                for (std::size_t tgt : displayed_components(eng.product(x, *q0)))
                    ds.lines.push_back({src, tgt, "q0"});
        }
    }
    return ds;
}

void add_input_arrows(SSDataset& ds, const std::vector<std::pair<MultiDegree, MultiDegree>>& arrows, int page)
{
    auto find = [&](const MultiDegree& d) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < ds.classes.size(); ++i) {
            const auto& c = ds.classes[i].degree;
            if (c.s == d.s && c.t == d.t && c.u == d.u)
                return i;
        }
        return std::nullopt;
    };
    for (const auto& [a, b] : arrows) {
        const auto src = find(a);
        if (!src)
            throw RegionError(fmt::format("no class at {} for an input arrow", to_string(a)));
        SSArrow arrow{*src, 0, page, true, std::nullopt};
        if (auto tgt = find(b))
            arrow.target = *tgt;
        else
            arrow.target_degree = b;
        ds.arrows.push_back(arrow);
    }
}

}  // namespace ank
