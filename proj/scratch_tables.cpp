#include <cmath>
#include <cstdio>
#include <string>

#include "procomp/catalog.hpp"
#include "procomp/order_conditions.hpp"

using namespace procomp;

int main() {
    const double t4[7][3] = {{2.2753, 2.5675, 4.4048}, {1.5470, 1.7567, 2.8523},
                             {1.3142, 1.5034, 2.3177}, {1.2026, 1.3984, 2.0417},
                             {1.1389, 1.3220, 1.8710}, {1.1001, 1.2961, 1.7543},
                             {1.0778, 1.2662, 1.6672}};
    double worst = 0.0;
    printf("s   eff5       eff7       1norm     (deviations)\n");
    for (int s = 3; s <= 9; ++s) {
        EffectiveOrderReport r = kernel_report(catalog_get("PSI" + std::to_string(s) + "_4").scheme());
        const double d5 = std::fabs(r.eff5 - t4[s - 3][0]);
        const double d7 = std::fabs(r.eff7 - t4[s - 3][1]);
        const double dn = std::fabs(r.one_norm - t4[s - 3][2]);
        worst = std::max({worst, d5, d7, dn});
        printf("%d %9.4f %9.4f %9.4f   %.2e %.2e %.2e\n", s, r.eff5, r.eff7, r.one_norm, d5, d7, dn);
    }
    const double t6[7][2] = {{5.1053, 9.6024}, {3.1347, 5.7329}, {2.5170, 4.3759},
                             {2.2193, 3.6553}, {2.0686, 3.2417}, {1.9488, 2.9099},
                             {1.8718, 2.6935}};
    for (int s = 5; s <= 11; ++s) {
        EffectiveOrderReport r = kernel_report(catalog_get("PSI" + std::to_string(s) + "_6").scheme());
        const double d7 = std::fabs(r.eff7 - t6[s - 5][0]);
        const double dn = std::fabs(r.one_norm - t6[s - 5][1]);
        worst = std::max({worst, d7, dn});
        printf("%d        %9.4f %9.4f   %.2e %.2e\n", s, r.eff7, r.one_norm, d7, dn);
    }
    printf("worst deviation: %.3e (gate 5e-4)\n", worst);

    // full-22 solvability for psi_11^{[6]}: seed near the published beta
    KernelSeries k11 = kernel_report(catalog_get("PSI11_6").scheme()).series;
    std::vector<double> seed = catalog_get("PROC11_6").beta;
    auto sols = solve_processor(k11, 6, 23, {seed});
    printf("full-22 system for PSI11_6 from published seed: %zu solutions\n", sols.size());
    if (!sols.empty()) {
        ProcessorReport rep = processor_report(sols[0], k11, 6);
        printf("  max residual %.2e, 1-norm %.4f (published 1-norm %.4f)\n", rep.max_residual,
               sols[0].one_norm(), ProcessorScheme{"", seed}.one_norm());
    }
    auto cloud = processor_seed_cloud(23, 40, 4242);
    auto sols2 = solve_processor(k11, 6, 23, cloud);
    printf("from 40 random seeds: %zu solutions", sols2.size());
    if (!sols2.empty()) printf(", best 1-norm %.4f", sols2[0].one_norm());
    printf("\n");
    return 0;
}
