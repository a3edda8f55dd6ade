#include <cstdio>

#include "procomp/harness.hpp"

using namespace procomp;

int main(int argc, char** argv) {
    ExperimentSpec s;
    s.experiment = "efficiency";
    s.problem.kind = "lorentz";
    s.problem.alpha_field = 0.07;
    s.t_f = 20.0;
    s.h_values = {0.4, 0.283, 0.2, 0.141, 0.1, 0.0707, 0.05, 0.0354};
    s.methods = {"BM6_4",     "SS3_4",     "PSI6_4",    "PSIHAT4_4", "PSIHAT6_4",
                 "PSIHAT8_4", "PSIHAT9_4", "BM10_6",    "PSIHAT10_6", "PSIHAT11_6",
                 "BCMHAT6_4", "BCMHAT9_6"};
    s.jobs = argc > 1 ? std::atoi(argv[1]) : 4;

    ExperimentResult result = run_efficiency(s);
    for (const auto& w : result.warnings) std::printf("warning: %s\n", w.c_str());
    for (const auto& id : s.methods) {
        OrderFit fit = fit_order(result.rows, id);
        std::printf("%-11s slope %.3f (points %d, reliable %d)\n", id.c_str(), fit.slope,
                    fit.points, fit.reliable);
    }
    // a peek at raw errors for one method
    for (const auto& r : result.rows)
        if (r.method == "PSIHAT8_4")
            std::printf("  PSIHAT8_4 h=%.4f err=%.3e cost=%lld\n", r.h, r.value,
                        static_cast<long long>(r.cost));
    return 0;
}
