// Run orchestration: config parsing with field-level validation, the task
// runners behind the command-line verbs, deterministic (sorted-key) JSON
// reports, and the batch certification matrix.
#pragma once

#include <json.hpp>

#include "splm/counting.hpp"
#include "splm/spin.hpp"
#include "splm/verify.hpp"

namespace splm {

using json = nlohmann::ordered_json;  // we sort keys ourselves via canonical_dump

struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& all_tasks() {
    static const std::vector<std::string> tasks{"BUILD",  "SIMPLIFY_VERIFY", "FIBERS",
                                               "SPIN",   "COUNTS",          "CERTIFY_ALL"};
    return tasks;
}

struct RunConfig {
    std::vector<ChartSpec> specs;
    long q = 0;  // 0: use each spec's own p
    long guard_gb = kDefaultPairLimit;
    long guard_enum = kDefaultEnumGuard;
    std::string json_path;
    bool text = true;
    std::vector<std::string> tasks;
};

namespace detail {

inline void reject_unknown_keys(const json& obj, const std::vector<std::string>& allowed,
                                const std::string& where) {
    for (const auto& [key, _] : obj.items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw config_error(where + ": unknown key '" + key + "'");
}

inline long require_int(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw config_error(where + ": missing key '" + key + "'");
    if (!obj[key].is_number_integer()) throw config_error(where + "." + key + ": expected integer");
    return obj[key].get<long>();
}

}  // namespace detail

inline json spec_to_json(const ChartSpec& spec) {
    return json{{"p", spec.p},        {"n", spec.n},         {"r", spec.r},
                {"s", spec.s},        {"chart", spec.chart}, {"pivots", spec.pivots}};
}

inline ChartSpec spec_from_json(const json& obj, const std::string& where) {
    if (!obj.is_object()) throw config_error(where + ": expected object");
    detail::reject_unknown_keys(obj, {"p", "n", "r", "s", "chart", "pivots"}, where);
    ChartSpec spec;
    spec.p = detail::require_int(obj, "p", where);
    spec.n = static_cast<int>(detail::require_int(obj, "n", where));
    spec.r = static_cast<int>(detail::require_int(obj, "r", where));
    spec.s = static_cast<int>(detail::require_int(obj, "s", where));
    spec.chart = static_cast<int>(detail::require_int(obj, "chart", where));
    if (!obj.contains("pivots")) throw config_error(where + ": missing key 'pivots'");
    if (!obj["pivots"].is_array()) throw config_error(where + ".pivots: expected array");
    for (const auto& v : obj["pivots"]) {
        if (!v.is_number_integer()) throw config_error(where + ".pivots: expected integers");
        spec.pivots.push_back(v.get<int>());
    }
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(where + ": " + e.what());
    }
    return spec;
}

/// Parse and validate a JSON run configuration; unknown keys are rejected with
/// messages naming the offending field.
inline RunConfig parse_config(const json& obj) {
    if (!obj.is_object()) throw config_error("config: expected object");
    detail::reject_unknown_keys(obj, {"specs", "q", "guards", "outputs", "tasks"}, "config");
    RunConfig cfg;
    if (obj.contains("specs")) {
        if (!obj["specs"].is_array()) throw config_error("config.specs: expected array");
        size_t i = 0;
        for (const auto& s : obj["specs"])
            cfg.specs.push_back(spec_from_json(s, "config.specs[" + std::to_string(i++) + "]"));
    }
    if (obj.contains("q")) {
        if (!obj["q"].is_number_integer() || obj["q"].get<long>() < 2)
            throw config_error("config.q: expected a prime >= 3");
        cfg.q = obj["q"].get<long>();
    }
    if (obj.contains("guards")) {
        const auto& g = obj["guards"];
        if (!g.is_object()) throw config_error("config.guards: expected object");
        detail::reject_unknown_keys(g, {"gb_pairs", "enum_assignments"}, "config.guards");
        if (g.contains("gb_pairs")) cfg.guard_gb = detail::require_int(g, "gb_pairs", "config.guards");
        if (g.contains("enum_assignments"))
            cfg.guard_enum = detail::require_int(g, "enum_assignments", "config.guards");
        if (cfg.guard_gb <= 0 || cfg.guard_enum <= 0)
            throw config_error("config.guards: guards must be positive");
    }
    if (obj.contains("outputs")) {
        const auto& o = obj["outputs"];
        if (!o.is_object()) throw config_error("config.outputs: expected object");
        detail::reject_unknown_keys(o, {"json_path", "text"}, "config.outputs");
        if (o.contains("json_path")) {
            if (!o["json_path"].is_string()) throw config_error("config.outputs.json_path: expected string");
            cfg.json_path = o["json_path"].get<std::string>();
        }
        if (o.contains("text")) {
            if (!o["text"].is_boolean()) throw config_error("config.outputs.text: expected boolean");
            cfg.text = o["text"].get<bool>();
        }
    }
    if (!obj.contains("tasks") || !obj["tasks"].is_array() || obj["tasks"].empty())
        throw config_error("config.tasks: at least one task is required");
    for (const auto& t : obj["tasks"]) {
        if (!t.is_string()) throw config_error("config.tasks: expected strings");
        std::string name = t.get<std::string>();
        const auto& known = all_tasks();
        if (std::find(known.begin(), known.end(), name) == known.end())
            throw config_error("config.tasks: unknown task '" + name + "'");
        cfg.tasks.push_back(name);
    }
    return cfg;
}

/// Deterministic serialization: objects with sorted keys, two-space indent.
inline std::string canonical_dump(const json& j) {
    std::function<json(const json&)> sorted = [&](const json& in) -> json {
        if (in.is_object()) {
            std::map<std::string, const json*> keys;
            for (const auto& [k, v] : in.items()) keys[k] = &v;
            json out = json::object();
            for (const auto& [k, v] : keys) out[k] = sorted(*v);
            return out;
        }
        if (in.is_array()) {
            json out = json::array();
            for (const auto& v : in) out.push_back(sorted(v));
            return out;
        }
        return in;
    };
    return sorted(j).dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Task runners
// ---------------------------------------------------------------------------

struct TaskResult {
    json report;
    bool pass = true;
};

namespace detail {

inline json histogram_json(const std::map<int, size_t>& h) {
    json out = json::object();
    for (const auto& [k, v] : h) out[std::to_string(k)] = v;
    return out;
}

inline ChartSpec spec_at_q(ChartSpec spec, long q) {
    if (q > 0) {
        spec.p = q;
        spec.validate();
    }
    return spec;
}

}  // namespace detail

inline TaskResult run_build(const ChartSpec& spec) {
    Chart ch = build_chart(spec);
    json rep;
    rep["spec"] = spec_to_json(spec);
    rep["case"] = ch.chart_case;
    rep["raw_generator_count"] = ch.raw_gens.size();
    json simp = json::array();
    for (const auto& g : ch.red_gens) simp.push_back(poly_print(g));
    rep["simplified_generators"] = simp;
    json flags = json::array();
    if (ch.unverified) flags.push_back("unverified-case");
    rep["flags"] = flags;
    return {rep, true};
}

inline TaskResult run_verify(const ChartSpec& spec, long guard_gb) {
    Chart ch = build_chart(spec);
    json rep;
    rep["spec"] = spec_to_json(spec);
    bool ok = true;
    for (Fiber fb : {Fiber::Generic, Fiber::Special}) {
        auto vr = verify_simplification(ch, fb, guard_gb);
        ok = ok && vr.ok;
        json f;
        f["ok"] = vr.ok;
        f["failures"] = vr.failures;
        rep[fiber_name(fb)] = f;
    }
    rep["pass"] = ok;
    return {rep, ok};
}

/// The per-fiber analysis report, matching the documented schema:
/// {spec, fiber, empty, dimension, components, reduced, transverse, principal,
///  flat_principal, worst_fiber_dim, flags}.
inline json fiber_report(const Chart& ch, Fiber fiber, long guard_gb) {
    const ChartSpec& spec = ch.spec;
    json rep;
    rep["spec"] = spec_to_json(spec);
    rep["fiber"] = fiber_name(fiber);
    json flags = json::array();
    if (ch.unverified) flags.push_back("unverified-case");

    bool principal = ch.red_gens.size() <= 1;
    rep["principal"] = principal;
    rep["flat_principal"] = principal ? json(flatness_principal_check(ch)) : json();

    bool has_d = ch.red_ring->index.count("d") > 0;
    if (fiber == Fiber::Generic) {
        bool empty = generic_emptiness(ch, guard_gb);
        rep["empty"] = empty;
        rep["dimension"] =
            empty ? -1 : krull_dim(Ideal<QPi>(ch.red_ring, ch.red_gens), guard_gb);
        rep["components"] = json::array();
        rep["reduced"] = json();
        rep["transverse"] = json();
    } else {
        auto ideal = special_ideal(ch);
        bool empty = !ideal.gens.empty() && is_unit_ideal(ideal, guard_gb);
        rep["empty"] = empty;
        rep["dimension"] = empty ? -1 : krull_dim(ideal, guard_gb);
        json comps = json::array();
        if (!empty && principal && ch.red_gens.size() == 1 && has_d) {
            auto sc = special_components(ch, guard_gb);
            for (const auto* comp : {&sc.comp_d, &sc.comp_q}) {
                json c;
                json gens = json::array();
                for (const auto& g : comp->gens) gens.push_back(poly_print(g));
                c["generators"] = gens;
                c["dim"] = comp == &sc.comp_d ? sc.dim_d : sc.dim_q;
                c["smooth"] = smoothness_check(*comp, guard_gb);
                comps.push_back(c);
            }
            rep["reduced"] = reducedness_check(sc, guard_gb);
            rep["transverse"] = transversality_check(sc, guard_gb);
            if (spec.n > 4) flags.push_back("irreducibility-not-certified");
        } else {
            rep["reduced"] = json();
            rep["transverse"] = json();
        }
        rep["components"] = comps;
    }
    if (spec.chart == 1 || spec.s >= 2)
        rep["worst_fiber_dim"] = worst_fiber_dimension(ch, guard_gb).dim_grassmannian;
    else
        rep["worst_fiber_dim"] = json();
    rep["flags"] = flags;
    return rep;
}

inline TaskResult run_fibers(const ChartSpec& spec, long guard_gb) {
    Chart ch = build_chart(spec);
    json rep = json::array();
    rep.push_back(fiber_report(ch, Fiber::Generic, guard_gb));
    rep.push_back(fiber_report(ch, Fiber::Special, guard_gb));
    return {rep, true};
}

/// Census/audit report: {spec, q, points, violations, isotropy_histogram,
/// worst_fiber_points} plus the rank histogram and the census comparison for
/// flat charts.
inline TaskResult run_spin(const ChartSpec& spec0, long q, long guard_enum) {
    ChartSpec spec = detail::spec_at_q(spec0, q);
    Chart ch = build_chart(spec);
    auto audit = spin_audit(ch, guard_enum);
    json rep;
    rep["spec"] = spec_to_json(spec);
    rep["q"] = spec.p;
    rep["points"] = audit.points;
    rep["violations"] = audit.violations;
    rep["rank_histogram"] = detail::histogram_json(audit.rank_histogram);
    rep["isotropy_histogram"] = detail::histogram_json(audit.isotropy_histogram);
    rep["worst_fiber_points"] = audit.worst_fiber_points;
    bool pass = audit.violations == 0;
    // the raw-vs-simplified census applies to the flat chart families only
    bool flat_chart = (spec.chart == 1 && spec.s % 2 == 0) || (spec.chart == 2 && spec.s % 2 == 1);
    if (flat_chart) {
        auto census = spin_equals_splitting_census(ch, guard_enum);
        json c;
        c["match"] = census.match;
        c["simplified_points"] = census.simplified_points;
        c["raw_points"] = census.raw_points;
        c["filtered_points"] = census.filtered_points;
        c["scope"] = "chart-local point sets";
        rep["census"] = c;
        pass = pass && census.match;
    }
    rep["pass"] = pass;
    return {rep, pass};
}

/// Count report: {target, q, count, method, cross_checks}.
inline TaskResult run_counts(const ChartSpec& spec0, long q, long guard_enum) {
    ChartSpec spec = detail::spec_at_q(spec0, q);
    Chart ch = build_chart(spec);
    json rep;
    rep["target"] = spec.label() + " special fiber";
    rep["q"] = spec.p;
    rep["method"] = "brute";
    json checks = json::array();
    bool pass = true;
    auto ideal = special_ideal(ch);
    long total = static_cast<long>(enumerate_points(ideal, guard_enum).size());
    rep["count"] = total;
    if (ch.red_gens.size() == 1 && ideal.ring->index.count("d")) {
        auto sc = special_components(ch);
        auto cc = component_count_check(sc, guard_enum);
        json c;
        c["name"] = "inclusion_exclusion";
        c["ok"] = cc.inclusion_exclusion_ok && cc.total == total;
        c["detail"] = std::to_string(cc.comp_d) + " + " + std::to_string(cc.comp_q) + " - " +
                      std::to_string(cc.meet) + " = " + std::to_string(cc.total);
        checks.push_back(c);
        json a;
        a["name"] = "affine_space_component";
        a["ok"] = cc.affine_space_count_ok;
        a["detail"] = "|V(I1)| = q^" + std::to_string(sc.dim_d);
        checks.push_back(a);
        pass = cc.inclusion_exclusion_ok && cc.affine_space_count_ok && cc.total == total;
    }
    rep["cross_checks"] = checks;
    rep["pass"] = pass;
    return {rep, pass};
}

// ---------------------------------------------------------------------------
// Certification
// ---------------------------------------------------------------------------

/// Certify one spec: simplification on both fibers, plus the structural bundle
/// appropriate to its chart family (emptiness for the non-flat charts,
/// smooth affine space for chart 2 with s = 1, semi-stability plus the spin
/// census for the flat principal charts).
inline TaskResult certify_spec(const ChartSpec& spec, long guard_gb, long guard_enum) {
    Chart ch = build_chart(spec);
    json rep;
    rep["spec"] = spec_to_json(spec);
    json checks = json::object();
    bool pass = true;
    auto record = [&](const std::string& name, bool ok) {
        checks[name] = ok;
        pass = pass && ok;
    };

    for (Fiber fb : {Fiber::Generic, Fiber::Special})
        record("simplification_" + fiber_name(fb), verify_simplification(ch, fb, guard_gb).ok);

    bool flat_chart = (spec.chart == 1 && spec.s % 2 == 0) || (spec.chart == 2 && spec.s % 2 == 1);
    if (!flat_chart) {
        record("generic_fiber_empty", generic_emptiness(ch, guard_gb));
    } else if (spec.chart == 2 && spec.s == 1) {
        record("free_presentation", ch.red_gens.empty());
        record("generic_dimension",
               krull_dim(Ideal<QPi>(ch.red_ring, ch.red_gens), guard_gb) == spec.n - 1);
        record("special_dimension", krull_dim(special_ideal(ch), guard_gb) == spec.n - 1);
        record("special_smooth", smoothness_check(special_ideal(ch), guard_gb));
        auto audit = spin_audit(ch, guard_enum);
        record("spin_violations_zero", audit.violations == 0);
        record("census_match", spin_equals_splitting_census(ch, guard_enum).match);
    } else {
        record("flat_principal", flatness_principal_check(ch));
        record("generic_dimension",
               krull_dim(Ideal<QPi>(ch.red_ring, ch.red_gens), guard_gb) == spec.r * spec.s);
        auto sc = special_components(ch, guard_gb);
        record("component_dimensions", sc.dim_d == spec.r * spec.s && sc.dim_q == spec.r * spec.s &&
                                           sc.dim_total == spec.r * spec.s);
        record("intersection_dimension", sc.dim_meet == spec.r * spec.s - 1);
        record("reduced", reducedness_check(sc, guard_gb));
        record("components_smooth",
               smoothness_check(sc.comp_d, guard_gb) && smoothness_check(sc.comp_q, guard_gb));
        record("transverse", transversality_check(sc, guard_gb));
        auto audit = spin_audit(ch, guard_enum);
        record("spin_violations_zero", audit.violations == 0);
        record("census_match", spin_equals_splitting_census(ch, guard_enum).match);
        auto cc = component_count_check(sc, guard_enum);
        record("component_counts", cc.affine_space_count_ok && cc.inclusion_exclusion_ok);
    }
    rep["checks"] = checks;
    rep["pass"] = pass;
    return {rep, pass};
}

/// The full desk-scale certification matrix: every chart family at n in {4,6}
/// with s <= n/2, both pivot cases where they differ.
inline std::vector<ChartSpec> certification_matrix(long p) {
    std::vector<ChartSpec> specs;
    for (int n : {4, 6})
        for (int s = 1; s <= n / 2; ++s)
            for (int chart : {1, 2})
                for (int cid : {1, 2}) {
                    ChartSpec cs;
                    try {
                        cs = ChartSpec::with_default_pivots(p, n, n - s, s, chart, cid);
                    } catch (const std::invalid_argument&) {
                        continue;
                    }
                    if (cid == 2 && cs.case_id() != 2) continue;
                    specs.push_back(cs);
                }
    return specs;
}

inline TaskResult certify_all(long p, long guard_gb, long guard_enum) {
    json rep = json::array();
    bool pass = true;
    for (const auto& spec : certification_matrix(p)) {
        auto r = certify_spec(spec, guard_gb, guard_enum);
        pass = pass && r.pass;
        rep.push_back(r.report);
    }
    json out;
    out["certifications"] = rep;
    out["pass"] = pass;
    return {out, pass};
}

}  // namespace splm
