#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "splm/run.hpp"

using namespace splm;

TEST_CASE("config parsing accepts the documented schema") {
    json obj = json::parse(R"({
        "specs": [{"p":3,"n":4,"r":2,"s":2,"chart":1,"pivots":[1,2]}],
        "q": 3,
        "guards": {"gb_pairs": 1000, "enum_assignments": 5000},
        "outputs": {"json_path": "out.json", "text": false},
        "tasks": ["CERTIFY_ALL"]
    })");
    RunConfig cfg = parse_config(obj);
    REQUIRE(cfg.specs.size() == 1);
    CHECK(cfg.specs[0].label() == "p3_n4_s2_chart1_piv1-2");
    CHECK(cfg.q == 3);
    CHECK(cfg.guard_gb == 1000);
    CHECK(cfg.guard_enum == 5000);
    CHECK(cfg.json_path == "out.json");
    CHECK_FALSE(cfg.text);
    CHECK(cfg.tasks == std::vector<std::string>{"CERTIFY_ALL"});
}

TEST_CASE("config parsing rejects malformed input with field-level messages") {
    auto message_of = [](const json& obj) {
        try {
            parse_config(obj);
        } catch (const config_error& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message_of(json::parse(R"({"tasks":["BUILD"],"bogus":1})")).find("bogus") !=
          std::string::npos);
    CHECK(message_of(json::parse(R"({"tasks":[]})")).find("tasks") != std::string::npos);
    CHECK(message_of(json::parse(R"({})")).find("tasks") != std::string::npos);
    CHECK(message_of(json::parse(R"({"tasks":["EXPLODE"]})")).find("EXPLODE") !=
          std::string::npos);
    // r + s != n
    CHECK(message_of(json::parse(
              R"({"specs":[{"p":3,"n":4,"r":3,"s":2,"chart":1,"pivots":[1,2]}],"tasks":["BUILD"]})"))
              .find("specs[0]") != std::string::npos);
    // pivots out of range, named field
    std::string msg = message_of(json::parse(
        R"({"specs":[{"p":3,"n":4,"r":2,"s":2,"chart":1,"pivots":[1,9]}],"tasks":["BUILD"]})"));
    CHECK(msg.find("specs[0]") != std::string::npos);
    CHECK(msg.find("pivot") != std::string::npos);
    // unknown spec key
    CHECK(message_of(json::parse(
              R"({"specs":[{"p":3,"n":4,"r":2,"s":2,"chart":1,"pivots":[1,2],"x":0}],"tasks":["BUILD"]})"))
              .find("'x'") != std::string::npos);
    // non-positive guard
    CHECK(message_of(json::parse(R"({"guards":{"gb_pairs":0},"tasks":["BUILD"]})"))
              .find("guards") != std::string::npos);
}

TEST_CASE("spec JSON round-trip") {
    auto spec = ChartSpec::with_default_pivots(3, 6, 3, 3, 2, 2);
    auto back = spec_from_json(spec_to_json(spec), "spec");
    CHECK(back.label() == spec.label());
}

TEST_CASE("canonical dump sorts keys and is stable") {
    json a, b;
    a["zeta"] = 1;
    a["alpha"] = json{{"y", 2}, {"x", 1}};
    b["alpha"] = json{{"x", 1}, {"y", 2}};
    b["zeta"] = 1;
    CHECK(canonical_dump(a) == canonical_dump(b));
    CHECK(canonical_dump(a).find("alpha") < canonical_dump(a).find("zeta"));
}

TEST_CASE("fiber report fields for a flat principal chart") {
    auto spec = ChartSpec::with_default_pivots(3, 4, 2, 2, 1, 1);
    Chart ch = build_chart(spec);
    json gen = fiber_report(ch, Fiber::Generic, kDefaultPairLimit);
    CHECK(gen["fiber"] == "generic");
    CHECK(gen["empty"] == false);
    CHECK(gen["dimension"] == 4);
    CHECK(gen["principal"] == true);
    CHECK(gen["flat_principal"] == true);
    json sp = fiber_report(ch, Fiber::Special, kDefaultPairLimit);
    CHECK(sp["empty"] == false);
    CHECK(sp["dimension"] == 4);
    CHECK(sp["reduced"] == true);
    CHECK(sp["transverse"] == true);
    CHECK(sp["worst_fiber_dim"] == 4);
    REQUIRE(sp["components"].size() == 2);
    for (const auto& c : sp["components"]) {
        CHECK(c["dim"] == 4);
        CHECK(c["smooth"] == true);
    }
}

TEST_CASE("fiber report for a non-flat chart") {
    auto spec = ChartSpec::with_default_pivots(3, 4, 3, 1, 1);
    Chart ch = build_chart(spec);
    json gen = fiber_report(ch, Fiber::Generic, kDefaultPairLimit);
    CHECK(gen["empty"] == true);
    CHECK(gen["dimension"] == -1);
}

TEST_CASE("certify_spec bundles per chart family") {
    // flat principal chart
    auto flat = certify_spec(ChartSpec::with_default_pivots(3, 4, 2, 2, 1, 1), kDefaultPairLimit,
                             kDefaultEnumGuard);
    CHECK(flat.pass);
    CHECK(flat.report["checks"]["reduced"] == true);
    CHECK(flat.report["checks"]["transverse"] == true);
    CHECK(flat.report["checks"]["census_match"] == true);
    // non-flat chart: only emptiness + simplification
    auto empty = certify_spec(ChartSpec::with_default_pivots(3, 4, 3, 1, 1), kDefaultPairLimit,
                              kDefaultEnumGuard);
    CHECK(empty.pass);
    CHECK(empty.report["checks"]["generic_fiber_empty"] == true);
    // free chart (s = 1, chart 2)
    auto freec = certify_spec(ChartSpec::with_default_pivots(3, 4, 3, 1, 2), kDefaultPairLimit,
                              kDefaultEnumGuard);
    CHECK(freec.pass);
    CHECK(freec.report["checks"]["free_presentation"] == true);
    CHECK(freec.report["checks"]["special_smooth"] == true);
}

TEST_CASE("certification matrix covers the desk scale") {
    auto specs = certification_matrix(3);
    CHECK(specs.size() == 18);
    for (const auto& s : specs) {
        CHECK((s.n == 4 || s.n == 6));
        CHECK(s.s <= 3);
        CHECK_NOTHROW(s.validate());
    }
}

TEST_CASE("task runners report deterministically") {
    auto spec = ChartSpec::with_default_pivots(3, 4, 3, 1, 2);
    auto a = run_spin(spec, 0, kDefaultEnumGuard);
    auto b = run_spin(spec, 0, kDefaultEnumGuard);
    CHECK(canonical_dump(a.report) == canonical_dump(b.report));
    CHECK(a.pass);
    CHECK(a.report["points"] == 27);
    CHECK(a.report["census"]["match"] == true);
}

TEST_CASE("run_counts cross-checks") {
    auto spec = ChartSpec::with_default_pivots(3, 4, 2, 2, 1, 1);
    auto r = run_counts(spec, 0, kDefaultEnumGuard);
    CHECK(r.pass);
    CHECK(r.report["count"] == 135);
    REQUIRE(r.report["cross_checks"].size() == 2);
    for (const auto& c : r.report["cross_checks"]) CHECK(c["ok"] == true);
}
