#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "procomp/catalog.hpp"

using namespace procomp;

TEST_CASE("catalog lookups") {
    CHECK(catalog_get("BM6_4").half_alpha[0] == 0.0792036964311957);
    CHECK(catalog_get("PSI3_4").half_alpha[0] == doctest::Approx(0.67560359597983).epsilon(1e-13));
    CHECK(catalog_get("PROC11_6").beta[22] == 0.1509465011559501);
    CHECK(catalog_get("PROC9_4").beta.size() == 7);
    CHECK(catalog_get("PROC11_6").beta.size() == 23);
    CHECK_THROWS_AS(catalog_get("NOPE"), std::out_of_range);
    try {
        catalog_get("NOPE");
    } catch (const std::out_of_range& e) {
        CHECK(std::string(e.what()).find("BM6_4") != std::string::npos);
    }

    CHECK(catalog_ids().size() >= 20);
    CHECK(catalog_has("PSI11_6"));
    CHECK(!catalog_has("SS7_6"));  // not printed in the catalog source, external only
}

TEST_CASE("every composition entry is consistent (coefficients sum to 1)") {
    for (const std::string& id : catalog_ids()) {
        const CatalogEntry& e = catalog_get(id);
        if (e.kind == SchemeKind::processor) continue;
        CAPTURE(id);
        CHECK_NOTHROW(e.scheme().require_consistent());
    }
}

TEST_CASE("PSI9_4 half coefficients sum to 1/2") {
    const CatalogEntry& e = catalog_get("PSI9_4");
    double sum = 0.0;
    for (double a : e.half_alpha) sum += a;
    CHECK(sum == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("verify_all passes the whole catalog") {
    VerificationReport report = verify_all();
    for (const auto& entry : report.entries) {
        CAPTURE(entry.id);
        CAPTURE(entry.detail);
        CHECK(entry.passed);
    }
    CHECK(report.all_passed());
}

TEST_CASE("a perturbed coefficient is caught") {
    CatalogEntry broken = catalog_get("PSI6_4");
    broken.half_alpha[0] += 1e-3;
    // an unbalanced perturbation breaks consistency outright
    CHECK_THROWS_AS(kernel_report(CompositionScheme{"broken", broken.half_alpha, broken.order,
                                                    broken.effective_order, true}),
                    std::invalid_argument);
    // rebalanced to stay consistent, the order conditions must now fail
    broken.half_alpha.back() -= 1e-3;
    EffectiveOrderReport rep = kernel_report(CompositionScheme{
        "rebalanced", broken.half_alpha, broken.order, broken.effective_order, true});
    CHECK(rep.effective_order != 4);
}

TEST_CASE("external coefficient files extend the catalog") {
    const char* path = "external_catalog_test.json";
    {
        std::ofstream out(path);
        out << R"({"schemes":[{"id":"TEST_STRANG","kind":"classic","order":2,
                   "effective_order":2,"half_alpha":[0.5]}]})";
    }
    auto added = catalog_load_external(path);
    REQUIRE(added == std::vector<std::string>{"TEST_STRANG"});
    CHECK(catalog_has("TEST_STRANG"));
    VerificationReport rep = verify_entry("TEST_STRANG");
    CHECK(rep.all_passed());
    std::remove(path);
}
