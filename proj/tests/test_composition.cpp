#include <doctest.h>

#include <array>
#include <cmath>

#include "procomp/catalog.hpp"
#include "procomp/composition.hpp"
#include "procomp/rng.hpp"

using namespace procomp;

namespace {

// Harmonic oscillator split into drift (q += t p) and kick (p -= t q), with
// chi_h applying the drift first. Exact sub-flows, exact adjoint.
using Vec2 = std::array<double, 2>;

struct HarmonicMap final : BasicMap<Vec2> {
    Vec2 drift(Vec2 y, double t) const { return {y[0] + t * y[1], y[1]}; }
    Vec2 kick(Vec2 y, double t) const { return {y[0], y[1] - t * y[0]}; }
    Vec2 forward(const Vec2& y, double h) const override { return kick(drift(y, h), h); }
    Vec2 adjoint(const Vec2& y, double h) const override { return drift(kick(y, h), h); }
    int flow_count() const override { return 2; }
};

double dist(const Vec2& a, const Vec2& b) {
    return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
}

}  // namespace

TEST_CASE("palindromic_expand") {
    CHECK(palindromic_expand(std::vector<double>{0.25}) == std::vector<double>{0.25, 0.25});

    std::vector<double> full = catalog_get("BM6_4").scheme().full_alpha();
    REQUIRE(full.size() == 12);
    std::vector<double> reversed(full.rbegin(), full.rend());
    CHECK(full == reversed);

    std::vector<double> psi56 = catalog_get("PSI5_6").scheme().full_alpha();
    double sum = 0.0;
    for (double a : psi56) sum += a;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("to_splitting") {
    SplittingScheme leapfrog = to_splitting(std::vector<double>{0.5, 0.5});
    CHECK(leapfrog.a == std::vector<double>{0.5, 0.5});
    CHECK(leapfrog.b == std::vector<double>{1.0});

    SplittingScheme bm = to_splitting(catalog_get("BM6_4").scheme());
    double sa = 0.0, sb = 0.0;
    for (double v : bm.a) sa += v;
    for (double v : bm.b) sb += v;
    // each part advances the full step: sum(a) = sum(b) = sum of all alphas = 1
    CHECK(sa - sb == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sa == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("composition with zero coefficients is the identity and cost is 2sn") {
    HarmonicMap map;
    Vec2 y0{0.3, -1.1};
    std::vector<double> zeros(12, 0.0);
    auto out = apply_composition(map, zeros, 0.7, y0);
    CHECK(dist(out.state, y0) == 0.0);
    CHECK(out.evaluations == 12 * 2);
}

TEST_CASE("adjoint is the inverse of the forward map at -h") {
    HarmonicMap map;
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        Vec2 y0{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const double h = rng.uniform(-0.3, 0.3);
        Vec2 back = map.adjoint(map.forward(y0, h), -h);
        CHECK(dist(back, y0) < 1e-10);
    }
}

TEST_CASE("palindromic compositions are time-symmetric") {
    HarmonicMap map;
    Rng rng(77);
    for (const char* id : {"BM6_4", "PSI6_4", "PSI10_6"}) {
        std::vector<double> full = catalog_get(id).scheme().full_alpha();
        Vec2 y0{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const double h = 0.21;
        Vec2 fwd = apply_composition(map, full, h, y0).state;
        Vec2 back = apply_composition(map, full, -h, fwd).state;
        CHECK(dist(back, y0) < 1e-9);
    }
}

TEST_CASE("splitting path and composition path agree") {
    HarmonicMap map;
    for (const char* id : {"PSI4_4", "BM6_4"}) {
        CAPTURE(id);
        const CompositionScheme scheme = catalog_get(id).scheme();
        const std::vector<double> full = scheme.full_alpha();
        SplittingScheme split = to_splitting(full);

        Vec2 y0{0.7, 0.4};
        const double h = 0.13;
        Vec2 via_composition = apply_composition(map, full, h, y0).state;
        // part 1 (the a coefficients) is the sub-flow chi applies last: the kick
        Vec2 via_splitting = apply_splitting(
            split,
            [&](int part, Vec2 y, double t) { return part == 1 ? map.kick(y, t) : map.drift(y, t); },
            h, y0);
        CHECK(dist(via_composition, via_splitting) < 1e-12);
    }
}

TEST_CASE("processed run with zero processor equals plain kernel steps") {
    HarmonicMap map;
    ProcessedMethod method{"test", catalog_get("PSI6_4").scheme(),
                           ProcessorScheme{"zero", std::vector<double>(7, 0.0)}};
    Vec2 y0{1.0, 0.0};
    const double h = 0.11;
    const int N = 5;

    auto processed = apply_processed(method, map, h, N, y0);
    Vec2 plain = y0;
    const std::vector<double> full = method.kernel.full_alpha();
    std::int64_t plain_cost = 0;
    for (int n = 0; n < N; ++n) {
        auto step = apply_composition(map, full, h, plain);
        plain = step.state;
        plain_cost += step.evaluations;
    }
    CHECK(dist(processed.state, plain) == 0.0);
    CHECK(processed.evaluations == plain_cost + 2 * 7 * map.flow_count());
}

TEST_CASE("observer sees raw kernel states; processed_view applies pi to a copy") {
    HarmonicMap map;
    ProcessedMethod method{"test", catalog_get("PSI6_4").scheme(),
                           ProcessorScheme{"p", {0.01, -0.02, 0.005, 0.0, 0.003, -0.001, 0.002}}};
    Vec2 y0{0.5, 0.5};
    const double h = 0.09;

    std::vector<Vec2> raw_states;
    auto out = apply_processed<Vec2>(method, map, h, 3, y0,
                                     [&](int, const Vec2& s) { raw_states.push_back(s); });
    REQUIRE(raw_states.size() == 3);
    // final processed state = pi applied to the last raw state
    Vec2 processed_last = processed_view(method, map, h, raw_states.back());
    CHECK(dist(processed_last, out.state) < 1e-15);

    // pi* then pi^{-1}: inverse variant round-trips exactly through the kernel-free case
    ProcessedMethod idkernel{"id", CompositionScheme{"zero-step", {0.0}, 0, 0, true},
                             method.processor};
    Vec2 round = apply_processed(idkernel, map, h, 1, y0, {}, ProcessorVariant::inverse).state;
    CHECK(dist(round, y0) < 1e-13);
}

TEST_CASE("inconsistent palindromic schemes are rejected") {
    CompositionScheme bad{"bad", {0.3, 0.3}, 2, 2, true};
    CHECK_THROWS_AS(bad.require_consistent(), std::invalid_argument);
}
