#include <cstdio>
#include "procomp/harness.hpp"
using namespace procomp;
int main() {
    // criterion 5: PSIHAT11_6 curve
    ExperimentSpec s;
    s.experiment = "efficiency";
    s.problem.kind = "lorentz";
    s.problem.alpha_field = 0.07;
    s.t_f = 20.0;
    s.jobs = 2;
    s.methods = {"PSIHAT11_6", "PSIHAT10_6", "BM10_6"};
    s.h_values = {2.26, 1.6, 1.13, 0.8, 0.566, 0.4, 0.283, 0.2, 0.16, 0.113};
    auto result = run_efficiency(s);
    for (const auto& id : s.methods) {
        printf("%s:\n", id.c_str());
        for (const auto& r : result.rows)
            if (r.method == id) printf("  h=%.3f err=%.3e\n", r.h, r.value);
        OrderFit f = fit_order(result.rows, id);
        printf("  slope %.3f over %d pts\n", f.slope, f.points);
    }

    // criterion 7 metric variants
    for (const char* metric : {"final", "trajectory_max"}) {
        ExperimentSpec c7;
        c7.experiment = "sweep";
        c7.problem.kind = "lorentz";
        c7.t_f = 200.0;
        c7.cost_budget = 40.0;
        c7.sweep_variable = "alpha_field";
        c7.sweep_grid = {0.07};
        c7.methods = {"BM6_4", "PSIHAT8_4", "SS3_4"};
        c7.error_metric = metric;
        c7.checkpoints = 16;
        c7.jobs = 2;
        auto res = run_sweep(c7);
        printf("metric %s: ", metric);
        for (const auto& r : res.rows) printf("%s=%.4e ", r.method.c_str(), r.value);
        printf("\n");
    }
    return 0;
}
