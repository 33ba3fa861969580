#pragma once

// JSON records for the library's result types.
//
// Canonical form: keys sorted (nlohmann::json's default object map), floats
// rounded to 9 significant digits, big integers as decimal strings.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

#include <json.hpp>

#include "arith.hpp"
#include "cover.hpp"
#include "explicit_cover.hpp"
#include "hidden_forest.hpp"
#include "visibility.hpp"

namespace lattice_scope {

using json = nlohmann::json;

/// "%.9g" rendering used for every float in text, CSV and JSON output.
inline std::string format_sig9(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

/// Rounds to 9 significant digits so the shortest round-trip form that the
/// JSON writer emits is stable.
inline json sig9(double v) {
    if (!std::isfinite(v)) return nullptr;
    return std::strtod(format_sig9(v).c_str(), nullptr);
}

/// Native number when it fits in 64 bits, decimal string otherwise.
inline json exact_integer(u128 v) {
    if (v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(v);
    return to_string(v);
}

inline json to_json(const PartialSumReport& r) {
    return {{"x", r.x},
            {"phi_sum", exact_integer(r.phi_sum)},
            {"main_term", sig9(r.main_term)},
            {"abs_error", sig9(r.abs_error)},
            {"normalized_error", sig9(r.normalized_error)}};
}

inline json to_json(const DensityReport& r) {
    return {{"n", r.n},
            {"visible_count", r.visible_count},
            {"total_count", r.total_count},
            {"ratio", sig9(r.ratio)},
            {"target", sig9(r.target)},
            {"abs_gap", sig9(r.abs_gap)}};
}

inline json to_json(const HiddenGridWitness& w) {
    return {{"k", w.k},
            {"a", to_string(w.a)},
            {"b", to_string(w.b)},
            {"modulus", to_string(w.modulus)},
            {"verified", w.verified}};
}

inline json to_json(const CoverSolution& c) {
    json pts = json::array();
    for (const auto& p : c.points) pts.push_back({p.x, p.y});
    return {{"n", c.n},
            {"method", std::string(to_string(c.method))},
            {"size", c.points.size()},
            {"points", pts},
            {"complete", c.complete}};
}

inline json to_json(const BlindSpot& b) {
    json j = {{"x", to_string(b.point.x)},
              {"y", to_string(b.point.y)},
              {"modulus", to_string(b.modulus)},
              {"shift", b.shift},
              {"containment_bound", to_string(b.containment_bound)}};
    j["in_grid"] = b.in_grid ? json(*b.in_grid) : json(nullptr);
    return j;
}

inline json to_json(const BoundReport& r) {
    json j = {{"n", r.n}, {"lower", sig9(r.lower)}, {"upper", sig9(r.upper)}};
    j["greedy_size"] = r.greedy_size ? json(*r.greedy_size) : json(nullptr);
    j["exact_size"] = r.exact_size ? json(*r.exact_size) : json(nullptr);
    j["greedy_within"] = r.greedy_within;
    j["exact_within"] = r.exact_within;
    return j;
}

/// FNV-1a over the comma-joined decimal members.
inline std::string set_digest(const std::vector<std::uint64_t>& values) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto v : values) {
        for (const char c : std::to_string(v) + ",") {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline constexpr std::size_t kInlineSetLimit = 10'000;

inline json to_json(const ExplicitCoverPlan& p) {
    json j = {{"n", p.n},
              {"g", sig9(p.g_value)},
              {"s", p.s},
              {"t", p.t},
              {"t0", p.t0},
              {"en_g_size", p.en_g.size()},
              {"index_set", p.index_set},
              {"b_n_size", p.b_n.size()}};
    if (p.en_g.size() <= kInlineSetLimit) {
        j["en_g"] = p.en_g;
        json ys = json::object();
        for (const auto& [i, y] : p.y_sets) ys[std::to_string(i)] = y;
        j["y_sets"] = ys;
    } else {
        j["en_g_digest"] = set_digest(p.en_g);
    }
    return j;
}

inline json to_json(const ExceptionalReport& r) {
    return {{"n", r.n},
            {"g", sig9(r.g_value)},
            {"s", r.s},
            {"t", r.t},
            {"t0", r.t0},
            {"en_g_size", r.en_g_size},
            {"index_set_size", r.index_set_size},
            {"b_n_size", r.b_n_size},
            {"exceptional_count", r.exceptional_count},
            {"bound_proof", exact_integer(r.bound_proof)},
            {"bound_theorem_statement", r.bound_theorem_statement},
            {"cardinality_bound", sig9(r.cardinality_bound)},
            {"passed_proof_bound", r.passed_proof_bound},
            {"passed_statement_bound", r.passed_statement_bound},
            {"b_n_within_8st", r.b_n_within_8st},
            {"b_n_within_cardinality_bound", r.b_n_within_cardinality_bound}};
}

inline json to_json(const SampledEstimate& e) {
    return {{"sample_size", e.sample_size},
            {"hits", e.hits},
            {"fraction", sig9(e.fraction)},
            {"ci_low", sig9(e.ci_low)},
            {"ci_high", sig9(e.ci_high)}};
}

inline json to_json(const CorollaryConfig& c) {
    json j = {{"name", c.name}, {"g", sig9(c.g_value)}, {"expects_empty_en_g", c.expects_empty_en_g}};
    j["exceptional_bound"] = c.exceptional_bound ? sig9(*c.exceptional_bound) : json(nullptr);
    j["cardinality_bound"] = c.cardinality_bound ? sig9(*c.cardinality_bound) : json(nullptr);
    return j;
}

}  // namespace lattice_scope
