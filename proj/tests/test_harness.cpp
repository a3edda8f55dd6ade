#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "procomp/catalog.hpp"
#include "procomp/config.hpp"
#include "procomp/harness.hpp"

using namespace procomp;

TEST_CASE("method id resolution") {
    ResolvedMethod plain = resolve_method("BM6_4");
    CHECK(plain.stages == 6);
    CHECK(!plain.processor);
    CHECK(plain.expected_order == 4);

    ResolvedMethod kernel_only = resolve_method("PSI6_4");
    CHECK(!kernel_only.processor);
    CHECK(kernel_only.expected_order == 2);

    ResolvedMethod processed = resolve_method("PSIHAT9_4");
    REQUIRE(processed.processor);
    CHECK(processed.processor->beta.size() == 7);
    CHECK(processed.processor->beta[0] == catalog_get("PROC9_4").beta[0]);
    CHECK(processed.expected_order == 4);

    ResolvedMethod ordered = resolve_method("BM6_4@ACB");
    CHECK(ordered.ordering == "ACB");

    CHECK_THROWS_AS(resolve_method("NOPE"), std::out_of_range);
    CHECK_THROWS_AS(resolve_method("PROC9_4"), std::invalid_argument);
    CHECK_NOTHROW(check_method_id("PSIHAT8_6"));  // no solve triggered
}

TEST_CASE("spec validation") {
    ExperimentSpec s;
    s.experiment = "sweep";
    s.problem.kind = "lorentz";
    s.methods = {"BM6_4"};
    s.cost_budget = 40;
    s.t_f = 10;
    s.sweep_grid = {0.05};
    CHECK_NOTHROW(s.validate());

    ExperimentSpec bad = s;
    bad.h_values = {0.1};  // both budget and h list
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = s;
    bad.methods = {};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = s;
    bad.experiment = "trace";  // trace needs the linear problem
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("all figure recipes produce valid specs") {
    for (const auto& name : figure_recipe_names()) {
        CAPTURE(name);
        ExperimentSpec spec = figure_recipe(name);
        CHECK_NOTHROW(spec.validate());
        CHECK(!plot_script(spec, name + ".csv").empty());
    }
    CHECK_THROWS_AS(figure_recipe("fig-unknown"), std::invalid_argument);
}

TEST_CASE("ordering enumeration") {
    // two-part split: exactly 2 orderings
    CHECK(enumerate_orderings("AB", true, 12, 0).size() == 2);
    // three parts: all 6
    CHECK(enumerate_orderings("ABC", true, 12, 0).size() == 6);
    // five parts, sampled: 12 distinct including canonical and reverse
    auto sample = enumerate_orderings("ABCDE", false, 12, 0);
    CHECK(sample.size() == 12);
    CHECK(std::find(sample.begin(), sample.end(), "ABCDE") != sample.end());
    CHECK(std::find(sample.begin(), sample.end(), "EDCBA") != sample.end());
    std::sort(sample.begin(), sample.end());
    CHECK(std::unique(sample.begin(), sample.end()) == sample.end());
    // exhaustive five parts: 120
    CHECK(enumerate_orderings("ABCDE", true, 12, 0).size() == 120);
}

TEST_CASE("fit_order recovers synthetic power laws") {
    std::vector<ResultRow> rows;
    for (double h : {0.4, 0.2, 0.1, 0.05, 0.025}) {
        ResultRow r;
        r.method = "synthetic";
        r.h = h;
        r.value = 3.0 * std::pow(h, 4.0);
        rows.push_back(r);
    }
    OrderFit fit = fit_order(rows, "synthetic");
    CHECK(fit.slope == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(fit.reliable);

    // error floor: slope flattens below h = 0.05; the asymptotic segment
    // must exclude the flat part
    for (auto& r : rows) r.value = std::max(r.value, 1e-5);
    OrderFit floored = fit_order(rows, "synthetic");
    CHECK(floored.slope == doctest::Approx(4.0).epsilon(0.05));

    OrderFit missing = fit_order(rows, "other");
    CHECK(!missing.reliable);
    CHECK(missing.points == 0);
}

TEST_CASE("trace test: error decreases monotonically over the last halvings") {
    ExperimentSpec s;
    s.experiment = "trace";
    s.problem.kind = "linear";
    s.problem.dim = 20;
    s.problem.matrix_seed = 12345;
    s.map_kind = "first_order";
    s.methods = {"PSI6_4"};
    s.t_f = 2.0;
    s.h_values = {0.08, 0.04, 0.02, 0.01};
    ExperimentResult result = run_trace_test(s);
    REQUIRE(result.rows.size() == 4);
    for (std::size_t i = 1; i < result.rows.size(); ++i)
        CHECK(result.rows[i].value < result.rows[i - 1].value);
}

TEST_CASE("lorentz sweep stays finite in the alpha -> 0 limit") {
    ExperimentSpec s;
    s.experiment = "sweep";
    s.problem.kind = "lorentz";
    s.methods = {"BM6_4"};
    s.cost_budget = 40;
    s.t_f = 5.0;
    s.sweep_variable = "alpha_field";
    s.sweep_grid = {1e-6, 0.05};
    s.jobs = 2;
    ExperimentResult result = run_sweep(s);
    REQUIRE(result.rows.size() == 2);
    for (const auto& r : result.rows) {
        CHECK(std::isfinite(r.value));
        CHECK(r.value < 1e-4);
    }
}

TEST_CASE("drift rows: zero first row, configured checkpoint count, equal spacing") {
    ExperimentSpec s;
    s.experiment = "drift";
    s.problem.kind = "rn";
    s.methods = {"BM6_4"};
    s.cost_budget = 1.0;
    s.t_f = 200.0;
    s.checkpoints = 5;
    ExperimentResult result = run_drift(s);
    // 2 metrics x (checkpoints + t=0)
    REQUIRE(result.rows.size() == 2 * (5 + 1));
    CHECK(result.rows[0].sweep == 0.0);
    CHECK(result.rows[0].value == 0.0);
    CHECK(result.rows[1].value == 0.0);
    std::vector<double> times;
    for (const auto& r : result.rows)
        if (r.metric == "energy_error") times.push_back(r.sweep);
    for (std::size_t i = 1; i < times.size(); ++i)
        CHECK(times[i] - times[i - 1] == doctest::Approx(200.0 / 5).epsilon(1e-12));
}

TEST_CASE("identical spec and seed give bitwise-identical rows") {
    ExperimentSpec s;
    s.experiment = "trace";
    s.problem.kind = "linear";
    s.problem.dim = 16;
    s.problem.matrix_seed = 999;
    s.map_kind = "first_order";
    s.methods = {"PSI4_4", "PSI6_4"};
    s.t_f = 2.0;
    s.cost_budget = 40;
    s.jobs = 2;
    ExperimentResult a = run_trace_test(s);
    ExperimentResult b = run_trace_test(s);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].method == b.rows[i].method);
        CHECK(std::memcmp(&a.rows[i].value, &b.rows[i].value, sizeof(double)) == 0);
        CHECK(a.rows[i].cost == b.rows[i].cost);
        CHECK(std::memcmp(&a.rows[i].h, &b.rows[i].h, sizeof(double)) == 0);
    }
}

TEST_CASE("csv output carries the fixed header and one line per row") {
    std::vector<ResultRow> rows(2);
    rows[0].experiment = "sweep";
    rows[0].method = "BM6_4";
    rows[0].metric = "position_error";
    rows[0].value = 1.25e-9;
    rows[1] = rows[0];
    std::ostringstream out;
    write_csv(rows, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "experiment,method,h,cost,sweep,metric,value,walltime");
    int count = 0;
    while (std::getline(in, line)) {
        CHECK(std::count(line.begin(), line.end(), ',') == 7);
        ++count;
    }
    CHECK(count == 2);
}

TEST_CASE("config round trip rejects unknown keys and honors known ones") {
    const char* text = R"({
        "experiment": "sweep",
        "problem": {"kind": "lorentz", "alpha_field": 0.04},
        "methods": ["BM6_4"],
        "cost_budget": 40,
        "t_f": 20,
        "sweep_variable": "alpha_field",
        "sweep_grid": [0.01, 0.04],
        "seed": 7
    })";
    ExperimentSpec s = parse_experiment_json(text);
    CHECK(s.problem.alpha_field == 0.04);
    CHECK(s.seed == 7);
    CHECK(s.sweep_grid.size() == 2);
    CHECK_NOTHROW(s.validate());
    // round trip through the serializer
    ExperimentSpec round = parse_experiment_json(experiment_to_json(s));
    CHECK(round.methods == s.methods);
    CHECK(round.cost_budget == s.cost_budget);

    CHECK_THROWS_AS(parse_experiment_json(R"({"experiment":"sweep","mystery":1})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_experiment_json(R"({"experiment":"sweep","problem":{"kind":"bogus"}})"),
                    std::invalid_argument);
}
