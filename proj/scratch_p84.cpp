#include <cstdio>
#include "procomp/catalog.hpp"
#include "procomp/order_conditions.hpp"
#include "procomp/rng.hpp"
using namespace procomp;
int main() {
    KernelSeries k = kernel_report(catalog_get("PSI8_4").scheme()).series;
    ProcessorSolveOptions opt; opt.jobs = 8;
    for (double range : {0.5, 0.25, 0.12}) {
        std::vector<std::vector<double>> seeds;
        seeds.emplace_back(7, 0.0);
        Rng rng(4242);
        for (int i = 0; i < 95; ++i) {
            std::vector<double> s(7);
            for (double& v : s) v = rng.uniform(-range, range);
            seeds.push_back(std::move(s));
        }
        auto sols = solve_processor(k, 4, 7, seeds, opt);
        printf("range %.2f: %zu solutions; 1-norms:", range, sols.size());
        for (std::size_t i = 0; i < std::min<std::size_t>(sols.size(), 6); ++i)
            printf(" %.4f", sols[i].one_norm());
        printf("\n");
    }
    return 0;
}
