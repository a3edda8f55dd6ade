// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here; desk-scale run configurations keep the
// whole suite within a few minutes (the full-scale figure recipes live in the
// harness).

#include <chrono>
#include <cmath>
#include <iomanip>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "procomp/catalog.hpp"
#include "procomp/harness.hpp"
#include "procomp/expm.hpp"
#include "procomp/linear_problem.hpp"
#include "procomp/lorentz.hpp"
#include "procomp/order_conditions.hpp"
#include "procomp/reference.hpp"
#include "procomp/reissner_nordstrom.hpp"
#include "procomp/rng.hpp"

using namespace procomp;

namespace {

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail, double seconds) {
    std::printf("CRITERION %d %-4s (%6.1fs) %s — %s\n", id, pass ? "PASS" : "FAIL", seconds,
                name, detail.c_str());
    if (!pass) ++failures;
}

void run_criterion(int id, const char* name, const std::function<bool(std::ostringstream&)>& fn) {
    std::ostringstream detail;
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    try {
        pass = fn(detail);
    } catch (const std::exception& e) {
        detail << "exception: " << e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(id, name, pass, detail.str(), dt);
}

struct PaperRow {
    const char* id;
    double eff5, eff7, one_norm;  // eff5 < 0 means the paper prints none
};
constexpr PaperRow kTable4[] = {
    {"PSI3_4", 2.2753, 2.5675, 4.4048}, {"PSI4_4", 1.5470, 1.7567, 2.8523},
    {"PSI5_4", 1.3142, 1.5034, 2.3177}, {"PSI6_4", 1.2026, 1.3984, 2.0417},
    {"PSI7_4", 1.1389, 1.3220, 1.8710}, {"PSI8_4", 1.1001, 1.2961, 1.7543},
    {"PSI9_4", 1.0778, 1.2662, 1.6672},
};
constexpr PaperRow kTable6[] = {
    {"PSI5_6", -1, 5.1053, 9.6024}, {"PSI6_6", -1, 3.1347, 5.7329},
    {"PSI7_6", -1, 2.5170, 4.3759}, {"PSI8_6", -1, 2.2193, 3.6553},
    {"PSI9_6", -1, 2.0686, 3.2417}, {"PSI10_6", -1, 1.9488, 2.9099},
    {"PSI11_6", -1, 1.8718, 2.6935},
};

bool criterion1(std::ostringstream& detail) {
    double worst = 0.0;
    for (const auto& row : kTable4) {
        EffectiveOrderReport rep = kernel_report(catalog_get(row.id).scheme());
        worst = std::max({worst, std::fabs(rep.eff5 - row.eff5), std::fabs(rep.eff7 - row.eff7),
                          std::fabs(rep.one_norm - row.one_norm)});
    }
    for (const auto& row : kTable6) {
        EffectiveOrderReport rep = kernel_report(catalog_get(row.id).scheme());
        worst = std::max({worst, std::fabs(rep.eff7 - row.eff7),
                          std::fabs(rep.one_norm - row.one_norm)});
    }
    detail << "max |deviation| over both tables = " << worst << " (gate 5e-4)";
    return worst <= 5e-4;
}

bool criterion2(std::ostringstream& detail) {
    struct {
        const char* id;
        double value;
        bool eff5;
    } named[] = {{"BM6_4", 1.5829, true},
                 {"BCM6_4", 1.3432, true},
                 {"BM10_6", 3.5855, false},
                 {"BCM9_6", 2.2144, false}};
    double worst = 0.0;
    for (const auto& n : named) {
        EffectiveOrderReport rep = kernel_report(catalog_get(n.id).scheme());
        const double got = n.eff5 ? rep.eff5 : rep.eff7;
        worst = std::max(worst, std::fabs(got - n.value));
        detail << n.id << "=" << got << " ";
    }
    detail << "max dev " << worst << " (gate 5e-4)";
    return worst <= 5e-4;
}

bool criterion3(std::ostringstream& detail) {
    bool ok = true;
    for (const auto& row : kTable4) {
        EffectiveOrderReport rep = kernel_report(catalog_get(row.id).scheme());
        const bool good = rep.verified_order == 3 && rep.effective_order == 4 &&
                          rep.time_symmetric && rep.e5 > 1e-9;
        if (!good) {
            ok = false;
            detail << row.id << " verified=" << rep.verified_order << " e5=" << rep.e5 << "; ";
        }
    }
    for (const auto& row : kTable6) {
        EffectiveOrderReport rep = kernel_report(catalog_get(row.id).scheme());
        const bool good = rep.verified_order == 5 && rep.effective_order == 6 &&
                          rep.time_symmetric && rep.e7 > 1e-9;
        if (!good) {
            ok = false;
            detail << row.id << " verified=" << rep.verified_order << " e7=" << rep.e7 << "; ";
        }
    }
    if (ok)
        detail << "all Table-4 kernels pass exactly order 4, all Table-5 kernels exactly "
                  "order 6 (gate 1e-9 relative)";
    return ok;
}

bool criterion4(std::ostringstream& detail) {
    bool ok = true;

    KernelSeries k9 = kernel_report(catalog_get("PSI9_4").scheme()).series;
    ProcessorReport p4 = processor_report(catalog_get("PROC9_4").processor(), k9, 4);
    detail << "pi(9,4): max residual over all 7 conditions " << p4.max_residual;
    ok = ok && p4.max_residual < 1e-6;

    KernelSeries k11 = kernel_report(catalog_get("PSI11_6").scheme()).series;
    ProcessorReport p6 = processor_report(catalog_get("PROC11_6").processor(), k11, 6);
    double first19 = 0.0, tail3 = 0.0;
    for (std::size_t i = 0; i < p6.condition_residuals.size(); ++i) {
        const double a = std::fabs(p6.condition_residuals[i].second);
        (i < 19 ? first19 : tail3) = std::max(i < 19 ? first19 : tail3, a);
    }
    detail << "; pi(11,6): strict-13 " << p6.strict_residual << ", reduction p61..p66 "
           << first19 << " (gates 1e-6); uncorrected tail p67..p69 " << tail3
           << " (= |k7_{8,9,10}| of the kernel, see ledger)";
    ok = ok && first19 < 1e-6;

    std::vector<double> published = catalog_get("PROC9_4").beta;
    std::vector<double> seed = published;
    for (double& b : seed) b += 1e-3;
    auto sols = solve_processor(k9, 4, 7, {seed});
    if (sols.size() != 1) {
        detail << "; re-solve failed to converge";
        return false;
    }
    double dev = 0.0;
    for (int i = 0; i < 7; ++i) dev = std::max(dev, std::fabs(sols[0].beta[i] - published[i]));
    detail << "; re-solved pi(9,4) max |beta - published| = " << dev << " (gate 1e-6)";
    return ok && dev < 1e-6;
}

bool criterion5(std::ostringstream& detail) {
    ExperimentSpec s;
    s.experiment = "efficiency";
    s.problem.kind = "lorentz";
    s.problem.alpha_field = 0.07;
    s.t_f = 20.0;
    s.jobs = 2;

    bool ok = true;
    auto check = [&](const std::vector<std::string>& methods, std::vector<double> h_values,
                     double target, double tol) {
        s.methods = methods;
        s.h_values = std::move(h_values);
        ExperimentResult result = run_efficiency(s);
        for (const auto& id : methods) {
            OrderFit fit = fit_order(result.rows, id);
            const bool good = fit.reliable && std::fabs(fit.slope - target) <= tol;
            if (!good) ok = false;
            detail << id << "=" << std::setprecision(3) << fit.slope << (good ? " " : "(!) ");
        }
    };

    const std::vector<double> h4 = {0.56, 0.396, 0.28, 0.198, 0.14, 0.099, 0.07, 0.056};
    const std::vector<double> h6 = {1.6, 1.13, 0.8, 0.566, 0.4, 0.283, 0.2, 0.16};
    detail << "order-4 (gate 4.0+-0.3): ";
    check({"BM6_4", "PSIHAT4_4", "PSIHAT5_4", "PSIHAT6_4", "PSIHAT7_4", "PSIHAT8_4",
           "PSIHAT9_4"},
          h4, 4.0, 0.3);
    detail << "| order-6 (gate 6.0+-0.4): ";
    check({"BM10_6", "PSIHAT8_6", "PSIHAT10_6", "PSIHAT11_6"}, h6, 6.0, 0.4);
    detail << "| unprocessed kernels (gate 2.0+-0.3): ";
    check({"PSI6_4", "PSI8_6"}, h4, 2.0, 0.3);
    return ok;
}

bool criterion6(std::ostringstream& detail) {
    ExperimentSpec s;
    s.experiment = "trace";
    s.problem.kind = "linear";
    s.problem.dim = 50;
    s.problem.matrix_seed = 12345;
    s.map_kind = "first_order";
    s.methods = {"PSI4_4", "PSI5_4", "PSI6_4", "PSI7_4", "PSI8_4", "PSI9_4"};
    s.t_f = 10.0;
    s.cost_budget = 40.0;
    s.jobs = 2;
    ExperimentResult result = run_trace_test(s);

    std::vector<double> errors, eff5;
    for (const auto& id : s.methods) {
        for (const auto& r : result.rows)
            if (r.method == id) errors.push_back(r.value);
        eff5.push_back(kernel_report(catalog_get(id).scheme()).eff5);
    }
    auto ranks = [](const std::vector<double>& v) {
        std::vector<int> idx(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) idx[i] = static_cast<int>(i);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < idx.size(); ++i) r[idx[i]] = static_cast<double>(i);
        return r;
    };
    const std::vector<double> ra = ranks(errors), rb = ranks(eff5);
    double d2 = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) d2 += (ra[i] - rb[i]) * (ra[i] - rb[i]);
    const double n = static_cast<double>(ra.size());
    const double spearman = 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
    detail << "Spearman(trace-error rank, eff5 rank) over psi4..psi9 = " << spearman
           << " (gate >= 0.8; 50x50, seed 12345, s/h=40, first-order map)";
    return spearman >= 0.8;
}

bool criterion7(std::ostringstream& detail) {
    ExperimentSpec s;
    s.experiment = "sweep";
    s.problem.kind = "lorentz";
    s.t_f = 200.0;
    s.cost_budget = 40.0;
    s.sweep_variable = "alpha_field";
    s.sweep_grid = {0.07};
    s.methods = {"BM6_4", "PSIHAT8_4", "SS3_4"};
    s.jobs = 2;
    ExperimentResult result = run_sweep(s);

    double bm = -1, psi = -1, ss = -1;
    for (const auto& r : result.rows) {
        if (r.method == "BM6_4") bm = r.value;
        if (r.method == "PSIHAT8_4") psi = r.value;
        if (r.method == "SS3_4") ss = r.value;
    }
    detail << "position error at t_f=200, s/h=40: BM6_4=" << bm << " PSIHAT8_4=" << psi
           << " SS3_4=" << ss << " (need PSIHAT8_4 < BM6_4 and SS3_4 > 10x BM6_4)";
    return psi >= 0 && bm >= 0 && ss >= 0 && psi < bm && ss > 10.0 * bm;
}

bool criterion8(std::ostringstream& detail) {
    Rng rng(2026);

    LorentzProblem lorentz;
    double worst_speed = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        LorentzState st{{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-1, 1)},
                        {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}};
        if (std::hypot(st.x[0], st.x[1]) < 0.2) continue;
        LorentzState rot = lorentz.flow('C', st, rng.uniform(-1, 1));
        worst_speed = std::max(worst_speed, std::fabs(rot.v.norm() - st.v.norm()));
    }

    RNProblem rn;
    double worst_subh = 0.0, worst_fd = 0.0;
    const double eps = 1e-5;
    for (int trial = 0; trial < 50; ++trial) {
        RNState st;
        st.r = rng.uniform(5.0, 50.0);
        st.theta = rng.uniform(0.5, 2.6);
        st.p_r = rng.uniform(-0.4, 0.4);
        st.p_theta = rng.uniform(-1.5, 1.5);
        const double tau = rng.uniform(-0.1, 0.1);
        for (char part : {'A', 'B', 'C', 'D', 'E'}) {
            worst_subh = std::max(worst_subh,
                                  std::fabs(rn.sub_hamiltonian(part, rn.flow(part, st, tau)) -
                                            rn.sub_hamiltonian(part, st)));
            RNState plus = rn.flow(part, st, eps), minus = rn.flow(part, st, -eps);
            const double r = st.r, th = st.theta, pr = st.p_r, pth = st.p_theta;
            const double sn = std::sin(th), cs = std::cos(th);
            const double l2 = rn.angmom * rn.angmom, e2 = rn.energy * rn.energy,
                         q2 = rn.charge * rn.charge;
            double hr = 0, hth = 0, hpr = 0, hpth = 0;
            switch (part) {
                case 'A': {
                    const double w = rn.metric_w(r);
                    hr = e2 * (1.0 / (r * r) - q2 / (r * r * r)) / (w * w) -
                         l2 / (r * r * r * sn * sn);
                    hth = -l2 * cs / (r * r * sn * sn * sn);
                    break;
                }
                case 'B': hpr = pr; break;
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
            worst_fd = std::max({worst_fd, std::fabs((plus.r - minus.r) / (2 * eps) - hpr),
                                 std::fabs((plus.theta - minus.theta) / (2 * eps) - hpth),
                                 std::fabs((plus.p_r - minus.p_r) / (2 * eps) + hr),
                                 std::fabs((plus.p_theta - minus.p_theta) / (2 * eps) + hth)});
        }
    }
    detail << "phi_C speed drift " << worst_speed << " (gate 1e-14); RN sub-Hamiltonian drift "
           << worst_subh << " (gate 1e-12); RN Hamilton-equation FD mismatch " << worst_fd
           << " (gate 1e-6)";
    return worst_speed < 1e-14 && worst_subh < 1e-12 && worst_fd < 1e-6;
}

bool criterion9(std::ostringstream& detail) {
    bool ok = true;

    // (a) trace conjugation-invariance under processing (pi^{-1} variant)
    {
        LinearMatrixProblem problem = LinearMatrixProblem::random_normal(50, 12345);
        auto map = linear_basic_map(LinearMapKind::first_order, problem);
        ProcessedMethod method{"c9", catalog_get("PSI9_4").scheme(),
                               catalog_get("PROC9_4").processor()};
        const Eigen::MatrixXd u0 = Eigen::MatrixXd::Identity(50, 50);
        const double h = 0.02;
        const int n = 10;
        Eigen::MatrixXd processed =
            apply_processed(method, *map, h, n, u0, {}, ProcessorVariant::inverse).state;
        Eigen::MatrixXd plain = u0;
        const std::vector<double> full = method.kernel.full_alpha();
        for (int i = 0; i < n; ++i) plain = apply_composition(*map, full, h, plain).state;
        const double rel =
            std::fabs(processed.trace() - plain.trace()) / std::fabs(plain.trace());
        detail << "trace conjugation " << rel << " (gate 1e-10)";
        ok = ok && rel < 1e-10;
    }

    // (b) composition path vs splitting path
    {
        LinearMatrixProblem p2 = LinearMatrixProblem::random_normal(10, 3).merged_tail();
        auto map = linear_basic_map(LinearMapKind::exact, p2);
        const std::vector<double> full = catalog_get("BM6_4").scheme().full_alpha();
        SplittingScheme split = to_splitting(full);
        Eigen::MatrixXd u0 = Eigen::MatrixXd::Identity(10, 10);
        Eigen::MatrixXd a = apply_composition(*map, full, 0.11, u0).state;
        Eigen::MatrixXd b = apply_splitting(
            split,
            [&](int part, Eigen::MatrixXd u, double t) -> Eigen::MatrixXd {
                // part 1 carries the a coefficients: the sub-flow chi applies last
                return expm(t * p2.parts[part == 1 ? 1 : 0]) * u;
            },
            0.11, u0);
        const double rel = state_distance(a, b);
        detail << "; composition-vs-splitting " << rel << " (gate 1e-12)";
        ok = ok && rel < 1e-12;
    }

    // (c) palindromic time-symmetry round trip (exact flows)
    {
        LorentzProblem problem;
        auto map = lorentz_basic_map(problem);
        LorentzState s0{{0.0, -1.0, 0.0}, {0.1, 0.01, 0.0}};
        const std::vector<double> full = catalog_get("PSI6_4").scheme().full_alpha();
        LorentzState fwd = apply_composition(*map, full, 0.2, s0).state;
        LorentzState back = apply_composition(*map, full, -0.2, fwd).state;
        const double rel = state_distance(back, s0);
        detail << "; palindromic round-trip " << rel << " (gate 1e-9)";
        ok = ok && rel < 1e-9;
    }

    // (d) determinism: identical spec + seed -> bitwise-identical rows
    {
        ExperimentSpec s;
        s.experiment = "trace";
        s.problem.kind = "linear";
        s.problem.dim = 30;
        s.problem.matrix_seed = 4321;
        s.map_kind = "first_order";
        s.methods = {"PSI5_4", "PSI7_4"};
        s.t_f = 4.0;
        s.cost_budget = 40.0;
        s.jobs = 2;
        ExperimentResult a = run_trace_test(s);
        ExperimentResult b = run_trace_test(s);
        bool bitwise = a.rows.size() == b.rows.size();
        for (std::size_t i = 0; bitwise && i < a.rows.size(); ++i)
            bitwise = a.rows[i].method == b.rows[i].method &&
                      std::memcmp(&a.rows[i].value, &b.rows[i].value, sizeof(double)) == 0 &&
                      a.rows[i].cost == b.rows[i].cost;
        // and the processor search is deterministic seed-for-seed
        KernelSeries k6 = kernel_report(catalog_get("PSI6_4").scheme()).series;
        auto seeds = processor_seed_cloud(7, 8, 99);
        auto s1 = solve_processor(k6, 4, 7, seeds);
        auto s2 = solve_processor(k6, 4, 7, seeds);
        bool beta_bitwise = s1.size() == s2.size();
        for (std::size_t i = 0; beta_bitwise && i < s1.size(); ++i)
            beta_bitwise = std::memcmp(s1[i].beta.data(), s2[i].beta.data(),
                                       s1[i].beta.size() * sizeof(double)) == 0;
        detail << "; determinism rows=" << (bitwise ? "bitwise" : "DIFFER")
               << " solver=" << (beta_bitwise ? "bitwise" : "DIFFER");
        ok = ok && bitwise && beta_bitwise;
    }
    return ok;
}

}  // namespace

int main() {
    run_criterion(1, "efficiency tables (Table-4/Table-5 rows, <= 5e-4)", criterion1);
    run_criterion(2, "named scheme constants (<= 5e-4)", criterion2);
    run_criterion(3, "effective-order verification (1e-9 relative)", criterion3);
    run_criterion(4, "published processors + re-solve (1e-6)", criterion4);
    run_criterion(5, "Lorentz convergence slopes", criterion5);
    run_criterion(6, "trace-test ranking vs eff5 (Spearman >= 0.8)", criterion6);
    run_criterion(7, "equal-cost efficiency ordering", criterion7);
    run_criterion(8, "exact-flow invariants", criterion8);
    run_criterion(9, "structural invariants", criterion9);
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all 9 criteria PASSED\n");
    return failures == 0 ? 0 : 1;
}
