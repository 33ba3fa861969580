#pragma once

// Command-line frontend: `lattice-scope <subcommand> [--flag value]...`.
//
// Exit status: 0 success, 1 domain or resource error, 2 usage error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arith.hpp"
#include "cover.hpp"
#include "explicit_cover.hpp"
#include "hidden_forest.hpp"
#include "serialize.hpp"
#include "visibility.hpp"

namespace lattice_scope::cli {

enum class OutputFormat { text, json, csv };

struct CliConfig {
    std::string subcommand;
    OutputFormat format = OutputFormat::text;
    std::optional<std::string> output_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> work_budget;
};

/// Bad parameter combinations discovered after parsing; reported as exit 2.
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SeriesKind { density2d, density3d, phi_sum_error };

struct SeriesRow {
    std::uint64_t n = 0;
    double value = 0.0;
    double target = 0.0;
    double abs_gap = 0.0;
};

struct Series {
    std::vector<SeriesRow> rows;
    std::size_t requested = 0;
};

inline constexpr double kInverseZeta3 = 1.0 / 1.2020569031595942;

inline std::uint64_t series_cost(SeriesKind kind, std::uint64_t n) {
    const long double v = static_cast<long double>(n);
    switch (kind) {
        case SeriesKind::density2d: return static_cast<std::uint64_t>(std::min(v * v / 2, 1e19L));
        case SeriesKind::density3d: return static_cast<std::uint64_t>(std::min(v * v * v, 1e19L));
        case SeriesKind::phi_sum_error: return n;
    }
    return n;
}

/// Rows `n,value,target,abs_gap`, stopping at the first n whose cost exceeds
/// the budget.
inline Series emit_convergence_series(SeriesKind kind, const std::vector<std::uint64_t>& n_values,
                                      std::uint64_t budget) {
    Series series;
    series.requested = n_values.size();
    std::optional<SieveTable> table;
    if (kind == SeriesKind::phi_sum_error && !n_values.empty() && n_values.back() <= budget)
        table.emplace(n_values.back());
    for (const std::uint64_t n : n_values) {
        if (series_cost(kind, n) > budget) break;
        SeriesRow row;
        row.n = n;
        switch (kind) {
            case SeriesKind::density2d: {
                const auto r = density_visible(n);
                row.value = r.ratio;
                row.target = r.target;
                break;
            }
            case SeriesKind::density3d:
                row.value = density_nd(n, 3, budget);
                row.target = kInverseZeta3;
                break;
            case SeriesKind::phi_sum_error: {
                const auto r = totient_partial_sum(n, *table);
                row.value = static_cast<double>(r.phi_sum);
                row.target = r.main_term;
                break;
            }
        }
        row.abs_gap = std::fabs(row.value - row.target);
        series.rows.push_back(row);
    }
    return series;
}

inline std::string series_csv(const Series& s) {
    std::string out = "n,value,target,abs_gap\n";
    for (const auto& r : s.rows)
        out += std::to_string(r.n) + "," + format_sig9(r.value) + "," + format_sig9(r.target) + "," +
               format_sig9(r.abs_gap) + "\n";
    return out;
}

namespace detail {

inline std::string csv_field(const json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (const char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return s;
}

inline std::string render(const json& record, OutputFormat format) {
    switch (format) {
        case OutputFormat::json: return record.dump() + "\n";
        case OutputFormat::csv: {
            std::string header, row;
            for (const auto& [key, value] : record.items()) {
                if (!header.empty()) {
                    header += ",";
                    row += ",";
                }
                header += key;
                row += csv_field(value);
            }
            return header + "\n" + row + "\n";
        }
        case OutputFormat::text: {
            std::string out;
            for (const auto& [key, value] : record.items())
                out += key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
            return out;
        }
    }
    return {};
}

inline std::vector<LatticePoint> parse_points(const std::string& text) {
    std::vector<LatticePoint> pts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        const auto comma = item.find(',');
        if (comma == std::string::npos) throw usage_error("malformed point '" + item + "', want x,y");
        try {
            std::size_t used_x = 0, used_y = 0;
            const std::string xs = item.substr(0, comma), ys = item.substr(comma + 1);
            const long long x = std::stoll(xs, &used_x), y = std::stoll(ys, &used_y);
            if (used_x != xs.size() || used_y != ys.size()) throw std::invalid_argument(item);
            pts.push_back({x, y});
        } catch (const std::logic_error&) {
            throw usage_error("malformed point '" + item + "', want x,y");
        }
    }
    if (pts.empty()) throw usage_error("--points needs at least one x,y pair");
    return pts;
}

inline double resolve_g(std::uint64_t n, std::optional<double> g, const std::string& config) {
    if (g) return *g;
    const auto configs = corollary_configs(n);
    if (config == "loglog") return configs[0].g_value;
    if (config == "ratio") return configs[1].g_value;
    throw usage_error("--config must be loglog or ratio");
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Totient and lattice-visibility toolkit", "lattice-scope"};
    app.require_subcommand(1);
    app.fallthrough();

    CliConfig config;
    std::string format_name = "text";
    app.add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    std::string out_path;
    app.add_option("--out", out_path, "Write output to PATH instead of stdout");
    std::uint64_t seed = 0, budget = 0;
    auto* seed_opt = app.add_option("--seed", seed, "Random seed");
    auto* budget_opt = app.add_option("--budget", budget, "Work cap for scans")->check(CLI::PositiveNumber);

    const auto positive = CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max());

    std::uint64_t x = 0, n = 0, k = 0, limit = 0, sample = 0, pair_i = 0, pair_j = 0;
    int dim = 2;
    std::int64_t grid_n = 0;
    double g = 0.0;
    std::string points, cfg_name = "loglog", kind_name;
    std::vector<std::uint64_t> n_list;
    bool with_bounds = false;

    auto* totient_sum = app.add_subcommand("totient-sum", "Exact totient partial sum vs 3x^2/pi^2");
    totient_sum->add_option("--x", x)->required()->check(positive);

    auto* density = app.add_subcommand("density", "Fraction of [1,n]^2 visible from the origin");
    density->add_option("--n", n)->required()->check(positive);

    auto* density_nd_cmd = app.add_subcommand("density-nd", "Primitive-tuple density in [1,n]^d");
    density_nd_cmd->add_option("--n", n)->required()->check(positive);
    density_nd_cmd->add_option("--d", dim)->required()->check(CLI::Range(2, 4));

    auto* hidden_witness = app.add_subcommand("hidden-witness", "CRT-built k x k hidden block");
    hidden_witness->add_option("--k", k)->required()->check(CLI::Range(std::uint64_t{1}, std::uint64_t{kHiddenGridCap}));

    auto* hidden_search = app.add_subcommand("hidden-search", "Scan for the first hidden k x k block");
    hidden_search->add_option("--k", k)->required()->check(CLI::Range(std::uint64_t{1}, std::uint64_t{5}));
    hidden_search->add_option("--limit", limit)->required();

    auto* cover_greedy = app.add_subcommand("cover-greedy", "Greedy visibility cover of A_n");
    cover_greedy->add_option("--n", n)->required()->check(positive);
    cover_greedy->add_flag("--bounds", with_bounds, "Attach the asymptotic size bounds (n >= 16)");

    auto* cover_exact = app.add_subcommand("cover-exact", "Minimum visibility cover of A_n (n <= 8)");
    cover_exact->add_option("--n", n)->required()->check(positive);

    auto* blind = app.add_subcommand("blind-spot", "Point invisible from every given point");
    blind->add_option("--points", points, "Points as x,y;x,y;...")->required();
    auto* grid_opt = blind->add_option("--grid-n", grid_n, "Grid size for the containment check");

    auto* explicit_cmd = app.add_subcommand("explicit-cover", "Build the explicit cover plan");
    explicit_cmd->add_option("--n", n)->required()->check(positive);
    auto* g_opt = explicit_cmd->add_option("--g", g, "Threshold g(n)");
    explicit_cmd->add_option("--config", cfg_name, "loglog | ratio (when --g is absent)");
    auto* i_opt = explicit_cmd->add_option("--pair-i", pair_i, "Also find the coprime pair for block i");
    explicit_cmd->add_option("--pair-j", pair_j, "... and block j")->needs(i_opt);
    i_opt->needs("--pair-j");

    auto* scan = app.add_subcommand("exceptional-scan", "Count grid points not seen from B_n");
    scan->add_option("--n", n)->required()->check(positive);
    auto* scan_g_opt = scan->add_option("--g", g, "Threshold g(n)");
    scan->add_option("--config", cfg_name, "loglog | ratio (when --g is absent)");
    auto* sample_opt = scan->add_option("--sample", sample, "Sample this many points instead of a full scan");

    auto* omega = app.add_subcommand("omega-check", "omega(m) < 2 ln m / ln ln m on [16, limit]");
    omega->add_option("--limit", limit)->required()->check(positive);

    auto* convergence = app.add_subcommand("convergence", "Plot-ready convergence series (CSV)");
    convergence->add_option("--kind", kind_name)->required()->check(
        CLI::IsMember({"density2d", "density3d", "phi_sum_error"}));
    convergence->add_option("--n", n_list, "Ascending n values, comma separated")
        ->required()
        ->delimiter(',')
        ->check(positive);

    std::vector<const char*> argv{"lattice-scope"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    config.subcommand = app.get_subcommands().front()->get_name();
    config.format = format_name == "json" ? OutputFormat::json
                    : format_name == "csv" ? OutputFormat::csv
                                           : OutputFormat::text;
    if (!out_path.empty()) config.output_path = out_path;
    if (*seed_opt) config.seed = seed;
    if (*budget_opt) config.work_budget = budget;

    std::string payload;
    try {
        const std::string& sub = config.subcommand;
        if (sub == "totient-sum") {
            const SieveTable table(x);
            payload = detail::render(to_json(totient_partial_sum(x, table)), config.format);
        } else if (sub == "density") {
            payload = detail::render(to_json(density_visible(n)), config.format);
        } else if (sub == "density-nd") {
            const double v = density_nd(n, dim, config.work_budget.value_or(kDensityNdWorkCap));
            payload = detail::render({{"n", n}, {"d", dim}, {"density", sig9(v)}}, config.format);
        } else if (sub == "hidden-witness") {
            payload = detail::render(to_json(hidden_grid_witness(k)), config.format);
        } else if (sub == "hidden-search") {
            const auto corner = search_hidden_grid(k, limit, config.work_budget.value_or(kHiddenSearchCap));
            json rec = {{"k", k}, {"limit", limit}, {"found", corner.has_value()}};
            rec["a"] = corner ? json(corner->x) : json(nullptr);
            rec["b"] = corner ? json(corner->y) : json(nullptr);
            payload = detail::render(rec, config.format);
        } else if (sub == "cover-greedy") {
            const Grid grid(static_cast<std::int64_t>(n));
            const auto sol = greedy_cover(grid);
            json rec = to_json(sol);
            if (with_bounds) rec["bounds"] = to_json(bound_report(grid.n, sol.points.size()));
            payload = detail::render(rec, config.format);
        } else if (sub == "cover-exact") {
            payload = detail::render(to_json(exact_min_cover(Grid(static_cast<std::int64_t>(n)))), config.format);
        } else if (sub == "blind-spot") {
            const auto pts = detail::parse_points(points);
            const auto spot = blind_spot(pts, *grid_opt ? std::optional<std::int64_t>(grid_n) : std::nullopt);
            json rec = to_json(spot);
            rec["invisible_from_all"] = is_blind_spot(spot.point, pts);
            payload = detail::render(rec, config.format);
        } else if (sub == "explicit-cover") {
            const double gv = detail::resolve_g(n, *g_opt ? std::optional<double>(g) : std::nullopt, cfg_name);
            const SieveTable table(n);
            const auto plan = build_plan(n, gv, table);
            json rec = to_json(plan);
            if (*i_opt) {
                const auto pair = coprime_pair_find(pair_i, pair_j, plan);
                rec["pair"] = {{"i", pair_i}, {"j", pair_j}, {"a", pair.a}, {"b", pair.b}};
            }
            payload = detail::render(rec, config.format);
        } else if (sub == "exceptional-scan") {
            const double gv = detail::resolve_g(n, *scan_g_opt ? std::optional<double>(g) : std::nullopt, cfg_name);
            const SieveTable table(n);
            const auto plan = build_plan(n, gv, table);
            if (*sample_opt) {
                json rec = to_json(sampled_exceptional_estimate(plan, sample, config.seed.value_or(0)));
                rec["n"] = n;
                rec["g"] = sig9(gv);
                rec["seed"] = config.seed.value_or(0);
                payload = detail::render(rec, config.format);
            } else {
                payload = detail::render(
                    to_json(exceptional_scan(plan, config.work_budget.value_or(kExceptionalScanBudget))),
                    config.format);
            }
        } else if (sub == "omega-check") {
            const SieveTable table(limit);
            const auto v = omega_inequality_check(limit, table);
            payload = detail::render({{"limit", limit}, {"violations", v}, {"violation_count", v.size()}},
                                     config.format);
        } else if (sub == "convergence") {
            for (std::size_t i = 1; i < n_list.size(); ++i)
                if (n_list[i] <= n_list[i - 1]) throw usage_error("--n values must be strictly ascending");
            const SeriesKind kind = kind_name == "density2d"   ? SeriesKind::density2d
                                    : kind_name == "density3d" ? SeriesKind::density3d
                                                               : SeriesKind::phi_sum_error;
            const auto series = emit_convergence_series(kind, n_list, config.work_budget.value_or(kDensityNdWorkCap));
            if (series.rows.size() < series.requested)
                err << "warning: series truncated at " << series.rows.size() << " of " << series.requested
                    << " rows (work budget)\n";
            if (config.format == OutputFormat::json) {
                json rows = json::array();
                for (const auto& r : series.rows)
                    rows.push_back({{"n", r.n}, {"value", sig9(r.value)}, {"target", sig9(r.target)},
                                    {"abs_gap", sig9(r.abs_gap)}});
                payload = rows.dump() + "\n";
            } else {
                payload = series_csv(series);
            }
        }
    } catch (const usage_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (config.output_path) {
        std::ofstream file(*config.output_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << *config.output_path << "\n";
            return 1;
        }
        file << payload;
    } else {
        out << payload;
    }
    return 0;
}

}  // namespace lattice_scope::cli
