#include "ank/cache.hpp"
#include "ank/charts.hpp"
#include "ank/suites.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <json.hpp>

using namespace ank;
using json = nlohmann::json;

namespace {

// One JSON object per line on stderr for every failure.
void report_failure(const json& j)
{
    std::cerr << j.dump() << '\n';
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw ConfigError(fmt::format("cannot write {}", path));
    out << text;
}

bool print_report(const SuiteReport& r)
{
    for (const auto& c : r.checks) {
        fmt::print("{} {}: {}{}\n", c.passed ? "PASS" : "FAIL", r.suite, c.name, c.detail.empty() ? "" : " (" + c.detail + ")");
        if (!c.passed)
            report_failure({{"suite", r.suite}, {"check", c.name}, {"kind", c.kind.empty() ? "check" : c.kind}, {"detail", c.detail}});
    }
    fmt::print("{}: {} [{:.2f} s]\n", r.suite, r.summary, r.seconds);
    return r.passed();
}

// Classes named h<n>, q0, with ^k powers and '*' products.
ExtClass parse_class(ExtEngine& e, const std::string& text)
{
    std::optional<ExtClass> acc;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t star = std::min(text.find('*', pos), text.size());
        std::string factor = text.substr(pos, star - pos);
        int power = 1;
        if (auto caret = factor.find('^'); caret != std::string::npos) {
            power = std::stoi(factor.substr(caret + 1));
            factor.erase(caret);
        }
        Cochain<F2> z;
        if (factor == "q0")
            z = q0_power(e.algebroid(), power), power = 1;
        else if (factor.size() >= 2 && factor[0] == 'h')
            z = h_cochain(e.algebroid(), std::stoi(factor.substr(1)));
        else
            throw ConfigError(fmt::format("cannot parse class '{}'", factor));
        ExtClass x = e.express(z);
        for (int i = 1; i < power; ++i)
            x = e.product(x, e.express(z));
        acc = acc ? e.product(*acc, x) : x;
        pos = star + 1;
    }
    return *acc;
}

Region config_region(const RunConfig& c)
{
    Region r;
    r.max_s = c.max_s;
    r.max_t = c.max_t;
    r.max_u = c.max_u;
    return r;
}

// CE differentials drawn as annotations on the chart: (source, target) tridegrees.
const std::vector<std::pair<MultiDegree, MultiDegree>> kChartAnnotations{
    {{1, 2, 6, std::nullopt}, {4, 0, 8, std::nullopt}},
    {{1, 3, 12, std::nullopt}, {4, 1, 14, std::nullopt}},
    {{1, 6, 14, std::nullopt}, {4, 4, 16, std::nullopt}},
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Algebraic Novikov and motivic spectral sequence computations"};
    app.require_subcommand(1);

    std::string config_path, cache_dir;
    bool no_cache = false;
    std::optional<int> max_u, max_s, max_t;
    std::optional<std::size_t> budget;
    std::optional<std::string> context;
    app.add_option("--config", config_path, "key=value configuration file");
    app.add_option("--cache-dir", cache_dir, "cache root (overrides config and ANK_CACHE_DIR)");
    app.add_flag("--no-cache", no_cache, "neither read nor write the block cache");
    app.add_option("--max-u", max_u, "internal degree bound");
    app.add_option("--max-s", max_s, "cohomological degree bound");
    app.add_option("--max-t", max_t, "Novikov degree bound");
    app.add_option("--budget", budget, "largest admissible cochain block");
    app.add_option("--context", context, "sphere | mod2 | motivic");

    std::string out;
    auto* ext = app.add_subcommand("ext", "compute Ext over a region and print a TSV table");
    ext->add_option("--out", out, "output file (default stdout)");

    auto* d1 = app.add_subcommand("novikov-d1", "the d1 differential on the q-towers");
    auto* localize = app.add_subcommand("localize", "localization map H(P;M) -> H(E;M) over the region");
    localize->add_option("--out", out, "output file (default stdout)");

    std::vector<std::string> suites;
    auto* verify = app.add_subcommand("verify", "run verification suites ('all' for every suite)");
    verify->add_option("suite", suites, "suite names")->required();

    std::string ma, mb, mc;
    auto* massey = app.add_subcommand("massey", "Massey product <a,b,c> of named classes, e.g. h1 q0^2 h0");
    massey->add_option("a", ma)->required();
    massey->add_option("b", mb)->required();
    massey->add_option("c", mc)->required();

    std::string route;
    auto* motivic = app.add_subcommand("motivic", "localized motivic spectral sequences");
    motivic->add_option("route", route, "anss | adams | compare")->required()->check(CLI::IsMember({"anss", "adams", "compare"}));
    motivic->add_option("--out", out, "output file (default stdout)");

    std::string projection = "novikov", format = "svg";
    bool annotations = true;
    auto* chart = app.add_subcommand("chart", "chart of H(P;Q) in a projection");
    chart->add_option("--projection", projection)->check(CLI::IsMember({"novikov", "adams"}));
    chart->add_option("--format", format)->check(CLI::IsMember({"svg", "tsv"}));
    chart->add_option("--out", out, "output file (default stdout)");
    chart->add_flag("--annotations,!--no-annotations", annotations, "draw the input differentials");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : RunConfig::load(config_path);
        cfg.apply_environment();
        if (!cache_dir.empty())
            cfg.cache_dir = cache_dir;
        if (max_u)
            cfg.max_u = *max_u;
        if (max_s)
            cfg.max_s = *max_s;
        if (max_t)
            cfg.max_t = *max_t;
        if (budget)
            cfg.budget = *budget;
        if (context)
            cfg.set("context", *context);
        if (out.empty())
            out = cfg.output;

        if (*ext) {
            if (cfg.context == "motivic")
                throw ConfigError("ext computes the sphere or mod2 context; use 'motivic' for the motivic one");
            NovikovLayer layer(cfg.max_u, cfg.context == "mod2", cfg.budget);
            std::optional<BlockCache> cache;
            if (!no_cache)
                cache.emplace(cfg.cache_dir, cfg.hash());
            std::vector<std::string> warnings;
            const auto blocks = ext_region(layer.engine(), config_region(cfg), cache ? &*cache : nullptr, &warnings);
            for (const auto& w : warnings)
                report_failure({{"warning", "cache"}, {"detail", w}});
            write_output(out, format_ext_table(blocks));
            if (cache)
                std::cerr << fmt::format("cache: {} hits, {} misses, {} corrupt, {} writes\n", cache->hits, cache->misses,
                                         cache->corrupt, cache->writes);
            return 0;
        }

        Workspace ws(cfg.max_u, cfg.budget);
        if (*d1)
            return print_report(suite_novikov_d1(ws)) ? 0 : 1;

        if (*verify) {
            std::vector<const SuiteEntry*> run;
            for (const auto& name : suites) {
                if (name == "all")
                    for (const auto& s : all_suites())
                        run.push_back(&s);
                else
                    run.push_back(&find_suite(name));
            }
            bool ok = true;
            for (const auto* s : run)
                ok = print_report(s->run(ws)) && ok;
            return ok ? 0 : 1;
        }

        if (*localize) {
            NovikovLayer& layer = cfg.context == "mod2" ? ws.mod2() : ws.sphere();
            std::string text = "s\tt\tu\tstem\tdim_P\tdim_E\trestriction_rank\tsurjective\tbijective\tcertified\tpredicted\n";
            const auto region = config_region(cfg);
            for (int u = 0; u <= region.max_u; u += 2)
                for (int s = 1; s <= region.max_s; ++s)
                    for (int t = 0; t <= region.max_t; ++t) {
                        if (u < 2 * s)
                            continue;
                        const auto g = layer.localized_group(s, t, u);
                        if (g.dimension_P == 0 && g.dimension_E == 0)
                            continue;
                        text += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", s, t, u, u - s, g.dimension_P,
                                            g.dimension_E, g.restriction_rank, g.surjective, g.bijective, g.certified,
                                            g.predicted);
                    }
            write_output(out, text);
            layer.localize_h0(region);  // throws when a certified tridegree fails
            return 0;
        }

        if (*massey) {
            ExtEngine& e = (cfg.context == "mod2" ? ws.mod2() : ws.sphere()).engine();
            const ExtClass a = parse_class(e, ma), b = parse_class(e, mb), c = parse_class(e, mc);
            const MasseyCoset m = e.massey(a, b, c);
            fmt::print("<{},{},{}> at {}\n", ma, mb, mc, to_string(m.representative.degree));
            fmt::print("representative coordinates {}\n", m.representative.coords.str());
            fmt::print("defining cochain {}\n", m.cochain.str());
            fmt::print("indeterminacy dimension {}\n", m.indeterminacy.size());
            for (const auto& v : m.indeterminacy)
                fmt::print("  {}\n", v.str());
            return 0;
        }

        if (*motivic) {
            std::string text;
            bool ok = true;
            if (route == "anss") {
                const RouteA& a = ws.route_a();
                text = "stem\tweight\te3\teinfty\trenamed\ttarget\n";
                for (const auto& [k, v] : a.einfty)
                    text += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", k.first, k.second, a.e3.count(k) ? a.e3.at(k) : 0, v,
                                        a.renamed.count(k) ? a.renamed.at(k) : 0, a.target.count(k) ? a.target.at(k) : 0);
                ok = a.mismatches.empty() && a.tau_killed && a.d_squared_zero && a.renamed_spans;
                for (const auto& m : a.mismatches)
                    report_failure({{"route", "anss"}, {"kind", "mismatch"}, {"detail", m}});
            } else if (route == "adams") {
                const RouteB& b = ws.route_b();
                text = "d\tc\tcertified\tstable\tpredicted\tpositions\n";
                for (const auto& [k, l] : b.lines) {
                    std::string pos;
                    for (const auto& p : l.positions)
                        pos += fmt::format("{}{}", pos.empty() ? "" : " ", p.dimension) + (p.iso_to_next ? ">" : ".");
                    text += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", k.first, k.second, l.certified, l.stable, l.predicted, pos);
                }
                ok = b.mismatches.empty() && b.target_unique && b.d2_applied && b.weight_preserved;
                for (const auto& m : b.mismatches)
                    report_failure({{"route", "adams"}, {"kind", "mismatch"}, {"detail", m}});
            } else {
                const RouteComparison c = compare_routes(ws.route_a(), ws.route_b());
                text = "stem\tweight\troute_a\troute_b\tring\n";
                for (const auto& [k, v] : c.table)
                    text += fmt::format("{}\t{}\t{}\t{}\t{}\n", k.first, k.second, v[0], v[1], v[2]);
                ok = c.agree();
                for (const auto& m : c.mismatches)
                    report_failure({{"route", "compare"}, {"kind", "mismatch"}, {"detail", m}});
            }
            write_output(out, text);
            return ok ? 0 : 1;
        }

        if (*chart) {
            if (cfg.max_u < 23)
                throw RegionError(fmt::format("the chart needs max_u >= 23, got {}", cfg.max_u));
            SSDataset ds = novikov_chart_dataset(ws.sphere(), Workspace::figure_region());
            if (annotations)
                add_input_arrows(ds, kChartAnnotations, 3);
            ChartSpec spec;
            spec.projection = parse_projection(projection);
            spec.input_arrows = annotations;
            write_output(out, emit(spec, ds, format == "svg" ? ChartFormat::Svg : ChartFormat::Tsv));
            return 0;
        }
    } catch (const Error& e) {
        report_failure({{"error", e.kind()}, {"message", e.what()}});
        return 2;
    } catch (const std::exception& e) {
        report_failure({{"error", "internal"}, {"message", e.what()}});
        return 2;
    }
    return 0;
}
