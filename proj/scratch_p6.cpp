#include <cstdio>

#include "procomp/catalog.hpp"
#include "procomp/order_conditions.hpp"

using namespace procomp;

int main() {
    KernelSeries k = kernel_report(catalog_get("PSI11_6").scheme()).series;
    KernelSeries praw = LieBasis::instance().project(
        composition_log(std::span<const double>(catalog_get("PROC11_6").beta)));
    // published-table convention
    auto p = [&](int n, int j) { return -praw.k(n, j); };

    const double k32 = k.k(3, 2);
    printf("k32 %.12e k52 %.12e k53 %.12e k54 %.12e\n", k32, k.k(5, 2), k.k(5, 3), k.k(5, 4));
    for (int j = 7; j <= 10; ++j) printf("k7_%d = %.15e\n", j, k.k(7, j));
    for (int j = 7; j <= 9; ++j) printf("p6_%d = %.15e\n", j, p(6, j));
    printf("\ncandidates for p67 (k78 +- k32k54/2): %.3e / %.3e\n",
           p(6, 7) - (k.k(7, 8) - 0.5 * k32 * k.k(5, 4)),
           p(6, 7) - (k.k(7, 8) + 0.5 * k32 * k.k(5, 4)));
    printf("candidates for p68 (k79 +- k32k52/2): %.3e / %.3e\n",
           p(6, 8) - (k.k(7, 9) - 0.5 * k32 * k.k(5, 2)),
           p(6, 8) - (k.k(7, 9) + 0.5 * k32 * k.k(5, 2)));
    printf("candidates for p69 (k7_10 +- k32k53/2): %.3e / %.3e\n",
           p(6, 9) - (k.k(7, 10) - 0.5 * k32 * k.k(5, 3)),
           p(6, 9) - (k.k(7, 10) + 0.5 * k32 * k.k(5, 3)));
    // maybe permuted cross terms
    printf("\np68 - (k79 - k32*k53/2) = %.3e\n", p(6, 8) - (k.k(7, 9) - 0.5 * k32 * k.k(5, 3)));
    printf("p68 - (k79 - k32*k54/2) = %.3e\n", p(6, 8) - (k.k(7, 9) - 0.5 * k32 * k.k(5, 4)));
    printf("p69 - (k7_10 - k32*k52/2) = %.3e\n", p(6, 9) - (k.k(7, 10) - 0.5 * k32 * k.k(5, 2)));
    printf("p69 - (k7_10 - k32*k54/2) = %.3e\n", p(6, 9) - (k.k(7, 10) - 0.5 * k32 * k.k(5, 4)));
    return 0;
}
// extended diagnostics appended as a second binary
