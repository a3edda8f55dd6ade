#include <doctest.h>

#include <cmath>

#include "procomp/catalog.hpp"
#include "procomp/expm.hpp"
#include "procomp/harness.hpp"
#include "procomp/linear_problem.hpp"
#include "procomp/lorentz.hpp"
#include "procomp/reference.hpp"
#include "procomp/reissner_nordstrom.hpp"
#include "procomp/rng.hpp"

using namespace procomp;

TEST_CASE("expm: closed forms and half-step squaring contract") {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
    d.diagonal() << 1.0, -2.0, 0.5;
    Eigen::MatrixXd e = expm(d);
    for (int i = 0; i < 3; ++i)
        CHECK(e(i, i) == doctest::Approx(std::exp(d(i, i))).epsilon(1e-14));

    // 2x2 rotation generator
    Eigen::MatrixXd rot(2, 2);
    const double w = 1.7;
    rot << 0, -w, w, 0;
    Eigen::MatrixXd r = expm(rot);
    CHECK(r(0, 0) == doctest::Approx(std::cos(w)).epsilon(1e-14));
    CHECK(r(1, 0) == doctest::Approx(std::sin(w)).epsilon(1e-14));

    // random 50x50 with norm <= 10: expm(A) vs expm(A/2)^2
    Rng rng(11);
    for (int trial = 0; trial < 3; ++trial) {
        Eigen::MatrixXd a(50, 50);
        for (int i = 0; i < 50; ++i)
            for (int j = 0; j < 50; ++j) a(i, j) = rng.normal();
        a *= 10.0 / a.cwiseAbs().colwise().sum().maxCoeff();
        Eigen::MatrixXd full = expm(a);
        Eigen::MatrixXd half = expm(a / 2.0);
        const double rel =
            (full - half * half).cwiseAbs().maxCoeff() / full.cwiseAbs().maxCoeff();
        CHECK(rel < 1e-13);
    }
}

TEST_CASE("linear basic maps: identity at h=0 and exact inverse pairs") {
    const LinearMatrixProblem problem = LinearMatrixProblem::random_normal(12, 77);
    const Eigen::MatrixXd u0 = Eigen::MatrixXd::Identity(12, 12) +
                               0.1 * LinearMatrixProblem::random_normal(12, 5).parts[0];

    for (LinearMapKind kind : {LinearMapKind::exact, LinearMapKind::first_order}) {
        auto map = linear_basic_map(kind, problem);
        CHECK((map->forward(u0, 0.0) - u0).cwiseAbs().maxCoeff() < 1e-14);
        // forward then adjoint at -h is the exact algebraic inverse
        Eigen::MatrixXd round = map->adjoint(map->forward(u0, 0.05), -0.05);
        CHECK(state_distance(round, u0) < 1e-12);
        CHECK(map->flow_count() == 3);
    }
}

TEST_CASE("composition path equals splitting path on the two-part linear problem") {
    const LinearMatrixProblem problem3 = LinearMatrixProblem::random_normal(10, 3);
    const LinearMatrixProblem problem2 = problem3.merged_tail();
    auto map = linear_basic_map(LinearMapKind::exact, problem2);

    const CompositionScheme scheme = catalog_get("PSI4_4").scheme();
    const std::vector<double> full = scheme.full_alpha();
    const double h = 0.07;
    Eigen::MatrixXd u0 = Eigen::MatrixXd::Identity(10, 10);

    Eigen::MatrixXd via_comp = apply_composition(*map, full, h, u0).state;

    // part 1 of the splitting carries the a coefficients: the flow the
    // adjoint factor applies first, i.e. the LAST part of the forward map
    SplittingScheme split = to_splitting(full);
    Eigen::MatrixXd via_split = apply_splitting(
        split,
        [&](int part, Eigen::MatrixXd u, double t) -> Eigen::MatrixXd {
            return expm(t * problem2.parts[part == 1 ? 1 : 0]) * u;
        },
        h, u0);
    CHECK(state_distance(via_comp, via_split) < 1e-12);
}

TEST_CASE("Lorentz flows: speed preservation and field derivative oracle") {
    LorentzProblem problem;
    problem.alpha_field = 0.07;
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        LorentzState s{{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-1, 1)},
                       {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}};
        if (std::hypot(s.x[0], s.x[1]) < 0.3) continue;
        const double t = rng.uniform(-0.5, 0.5);
        LorentzState rotated = problem.flow('C', s, t);
        CHECK(std::abs(rotated.v.norm() - s.v.norm()) < 1e-14);

        // d/dt of each flow at t=0 matches its vector field piece
        const double eps = 1e-5;
        for (char part : {'A', 'B', 'C'}) {
            LorentzState plus = problem.flow(part, s, eps);
            LorentzState minus = problem.flow(part, s, -eps);
            Eigen::Matrix<double, 6, 1> fd;
            fd.head<3>() = (plus.x - minus.x) / (2 * eps);
            fd.tail<3>() = (plus.v - minus.v) / (2 * eps);
            Eigen::Matrix<double, 6, 1> field = Eigen::Matrix<double, 6, 1>::Zero();
            if (part == 'A') field.head<3>() = s.v;
            if (part == 'B') field.tail<3>() = (problem.q / problem.m) * problem.efield(s.x);
            if (part == 'C')
                field.tail<3>() =
                    problem.cyclotron(s.x) * Eigen::Vector3d(-s.v[1], s.v[0], 0.0);
            CHECK((fd - field).cwiseAbs().maxCoeff() < 1e-6);
        }
    }
}

TEST_CASE("Lorentz invariants are conserved by a fine reference integration") {
    LorentzProblem problem;
    problem.alpha_field = 0.07;
    LorentzState s0{{0.0, -1.0, 0.0}, {0.1, 0.01, 0.0}};
    auto map = lorentz_basic_map(problem);
    const double h0 = problem.energy(s0);
    const double l0 = problem.angular_momentum(s0);
    LorentzState s = reference_processed(*map, s0, 5.0, 0.1 * 32.0);
    CHECK(std::abs(problem.energy(s) - h0) < 1e-9);
    CHECK(std::abs(problem.angular_momentum(s) - l0) < 1e-9);
}

TEST_CASE("Lorentz Euler pair: identity at h=0 and inverse-pair identity") {
    LorentzProblem problem;
    auto map = lorentz_euler_map(EulerKind::explicit_first, problem);
    LorentzState s0{{0.3, -1.1, 0.2}, {0.4, 0.1, -0.2}};

    LorentzState still = map->forward(s0, 0.0);
    CHECK(state_distance(still, s0) == 0.0);

    LorentzState round = map->adjoint(map->forward(s0, 0.04), -0.04);
    CHECK(state_distance(round, s0) < 1e-12);

    // swapped roles are mutually inverse as well
    auto swapped = lorentz_euler_map(EulerKind::implicit_first, problem);
    LorentzState round2 = swapped->adjoint(swapped->forward(s0, 0.04), -0.04);
    CHECK(state_distance(round2, s0) < 1e-12);
}

TEST_CASE("RN sub-flows conserve their sub-Hamiltonians") {
    RNProblem problem;
    Rng rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        RNState s;
        s.r = rng.uniform(5.0, 60.0);
        s.theta = rng.uniform(0.4, 2.7);
        s.p_r = rng.uniform(-0.5, 0.5);
        s.p_theta = rng.uniform(-2.0, 2.0);
        const double tau = rng.uniform(-0.1, 0.1);
        for (char part : {'A', 'B', 'C', 'D', 'E'}) {
            const double before = problem.sub_hamiltonian(part, s);
            const double after = problem.sub_hamiltonian(part, problem.flow(part, s, tau));
            CAPTURE(part);
            CHECK(std::abs(after - before) < 1e-12);
        }
    }
}

TEST_CASE("RN flows match Hamilton's equations of their sub-Hamiltonians") {
    RNProblem problem;
    Rng rng(41);
    const double eps = 1e-5;
    for (int trial = 0; trial < 15; ++trial) {
        RNState s;
        s.r = rng.uniform(6.0, 40.0);
        s.theta = rng.uniform(0.5, 2.6);
        s.p_r = rng.uniform(-0.4, 0.4);
        s.p_theta = rng.uniform(-1.5, 1.5);
        for (char part : {'A', 'B', 'C', 'D', 'E'}) {
            CAPTURE(part);
            RNState plus = problem.flow(part, s, eps);
            RNState minus = problem.flow(part, s, -eps);
            const double dr = (plus.r - minus.r) / (2 * eps);
            const double dth = (plus.theta - minus.theta) / (2 * eps);
            const double dpr = (plus.p_r - minus.p_r) / (2 * eps);
            const double dpth = (plus.p_theta - minus.p_theta) / (2 * eps);

            // analytic Hamilton's equations per part
            const double r = s.r, th = s.theta, pr = s.p_r, pth = s.p_theta;
            const double sn = std::sin(th), cs = std::cos(th);
            const double l2 = problem.angmom * problem.angmom;
            const double e2 = problem.energy * problem.energy;
            const double q2 = problem.charge * problem.charge;
            double hr = 0, hth = 0, hpr = 0, hpth = 0;  // partial derivatives
            switch (part) {
                case 'A': {
                    const double w = problem.metric_w(r);
                    hr = e2 * (1.0 / (r * r) - q2 / (r * r * r)) / (w * w) -
                         l2 / (r * r * r * sn * sn);
                    hth = -l2 * cs / (r * r * sn * sn * sn);
                    break;
                }
                case 'B':
                    hpr = pr;
                    break;
                case 'C':
                    hr = pr * pr / (r * r);
                    hpr = -2.0 * pr / r;
                    break;
                case 'D':
                    hr = -pth * pth / (r * r * r);
                    hpth = pth / (r * r);
                    break;
                case 'E':
                    hr = -q2 * pr * pr / (r * r * r);
                    hpr = q2 * pr / (r * r);
                    break;
            }
            CHECK(std::abs(dr - hpr) < 1e-6);
            CHECK(std::abs(dth - hpth) < 1e-6);
            CHECK(std::abs(dpr + hr) < 1e-6);
            CHECK(std::abs(dpth + hth) < 1e-6);
        }
    }
}

TEST_CASE("paper-literal and exact RN flows coincide at Q=0") {
    RNProblem exact;
    exact.charge = 0.0;
    RNProblem literal = exact;
    literal.paper_literal = true;
    Rng rng(51);
    for (int trial = 0; trial < 10; ++trial) {
        RNState s;
        s.r = rng.uniform(5.0, 50.0);
        s.theta = rng.uniform(0.5, 2.6);
        s.p_r = rng.uniform(-0.4, 0.4);
        s.p_theta = rng.uniform(-1.5, 1.5);
        const double tau = rng.uniform(-0.2, 0.2);
        for (char part : {'A', 'B', 'C', 'D', 'E'})
            CHECK(state_distance(exact.flow(part, s, tau), literal.flow(part, s, tau)) < 1e-14);
    }
}

TEST_CASE("RN initial momentum solves the requested Hamiltonian level") {
    RNProblem problem;
    const double pr = problem.solve_p_r(-0.5, 18.0, 1.5707963267948966, 0.0);
    RNState s{18.0, 1.5707963267948966, pr, 0.0};
    CHECK(problem.hamiltonian(s) == doctest::Approx(-0.5).epsilon(1e-13));
    CHECK(pr > 0.0);
    CHECK(18.0 > problem.horizon());
}

TEST_CASE("RN step failures surface as StepFailure") {
    RNProblem problem;
    RNState s{10.0, 1.5, 2.0, 0.0};
    CHECK_THROWS_AS(problem.flow('C', s, 1e6), StepFailure);   // crosses r = 0
    CHECK_THROWS_AS(problem.flow('E', s, -1e9), StepFailure);  // negative radicand
}

TEST_CASE("reference solution is Richardson-consistent on the Lorentz standard case") {
    LorentzProblem problem;
    problem.alpha_field = 0.0;  // pure magnetic field: |v| exactly conserved
    LorentzState s0{{0.0, -1.0, 0.0}, {0.1, 0.01, 0.0}};
    auto map = lorentz_basic_map(problem);
    LorentzState s = reference_processed(*map, s0, 10.0, 0.2 * 32.0);
    CHECK(std::abs(s.v.norm() - s0.v.norm()) < 1e-12);
}
