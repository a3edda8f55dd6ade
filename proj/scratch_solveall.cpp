#include <cstdio>
#include <chrono>
#include "procomp/catalog.hpp"
#include "procomp/order_conditions.hpp"
using namespace procomp;
int main() {
    for (const char* id : {"PSI3_4", "PSI4_4", "PSI5_4", "PSI6_4", "PSI7_4", "PSI8_4",
                           "BCM6_4", "PSI5_6", "PSI6_6", "PSI7_6", "PSI8_6", "PSI9_6",
                           "PSI10_6", "BCM9_6"}) {
        const CatalogEntry& e = catalog_get(id);
        KernelSeries k = kernel_report(e.scheme()).series;
        const int order = e.effective_order;
        const int nb = order == 4 ? 7 : 23;
        auto t0 = std::chrono::steady_clock::now();
        auto sols = solve_processor(k, order, nb, processor_seed_cloud(nb, 24, 0x517cc1b727220a95ull ^ std::hash<std::string>{}(id)));
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (sols.empty()) { std::printf("%-8s order %d: NO SOLUTION (%.1fs)\n", id, order, dt); continue; }
        ProcessorReport r = processor_report(ProcessorScheme{"", sols[0].beta}, k, order);
        std::printf("%-8s order %d: %zu sols, best 1-norm %.4f, strict %.1e, max %.1e (%.1fs)\n",
                    id, order, sols.size(), sols[0].one_norm(), r.strict_residual, r.max_residual, dt);
    }
    return 0;
}
