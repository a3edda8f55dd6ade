#include <cstdio>
#include <chrono>
#include "procomp/harness.hpp"
#include "procomp/order_conditions.hpp"
#include "procomp/catalog.hpp"
using namespace procomp;
int main() {
    for (const char* id : {"PSIHAT3_4", "PSIHAT4_4", "PSIHAT5_4", "PSIHAT6_4", "PSIHAT7_4",
                           "PSIHAT8_4", "PSIHAT9_4", "BCMHAT6_4", "PSIHAT5_6", "PSIHAT6_6",
                           "PSIHAT7_6", "PSIHAT8_6", "PSIHAT9_6", "PSIHAT10_6", "PSIHAT11_6",
                           "BCMHAT9_6"}) {
        auto t0 = std::chrono::steady_clock::now();
        try {
            ResolvedMethod m = resolve_method(id);
            double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            KernelSeries k = kernel_report(m.kernel).series;
            ProcessorReport r = processor_report(*m.processor, k, m.expected_order);
            std::printf("%-11s ok  beta[0]=%+.6f 1-norm %.4f strict %.1e (%.1fs)\n", id,
                        m.processor->beta[0], m.processor->one_norm(), r.strict_residual, dt);
        } catch (const std::exception& e) {
            double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            std::printf("%-11s FAILED: %s (%.1fs)\n", id, e.what(), dt);
        }
    }
    return 0;
}
