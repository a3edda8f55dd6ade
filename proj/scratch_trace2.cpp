#include <cstdio>
#include <cmath>
#include "procomp/harness.hpp"
#include "procomp/linear_problem.hpp"
using namespace procomp;
int main(int argc, char** argv) {
    const double budget = argc > 1 ? std::atof(argv[1]) : 40.0;
    const std::uint64_t mseed = argc > 2 ? std::atoll(argv[2]) : 12345;
    LinearMatrixProblem p = LinearMatrixProblem::random_normal(50, mseed);
    const double tr_ex = p.exact_at(10.0).trace();
    std::printf("exact trace %.6e  sum-norm %.2f\n", tr_ex, p.sum().operatorNorm());
    ExperimentSpec s;
    s.experiment = "trace";
    s.problem.kind = "linear";
    s.problem.matrix_seed = mseed;
    s.map_kind = "first_order";
    s.methods = {"PSI4_4", "PSI5_4", "PSI6_4", "PSI7_4", "PSI8_4", "PSI9_4"};
    s.t_f = 10.0;
    s.cost_budget = budget;
    s.jobs = 6;
    auto result = run_trace_test(s);
    for (const auto& r : result.rows)
        std::printf("%s h=%.4f abs=%.3e rel=%.3e\n", r.method.c_str(), r.h, r.value,
                    r.value / std::fabs(tr_ex));
    return 0;
}
