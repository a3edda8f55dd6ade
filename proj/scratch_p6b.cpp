#include <cstdio>
#include "procomp/catalog.hpp"
#include "procomp/order_conditions.hpp"
using namespace procomp;
int main() {
    KernelSeries k = kernel_report(catalog_get("PSI11_6").scheme()).series;
    KernelSeries praw = LieBasis::instance().project(
        composition_log(std::span<const double>(catalog_get("PROC11_6").beta)));
    printf(" j      k7_(j+1)          p6_j(table)      diff\n");
    for (int j = 1; j <= 9; ++j)
        printf("%2d  %+.12e  %+.12e  %+.3e\n", j, k.k(7, j + 1), -praw.k(6, j),
               -praw.k(6, j) - k.k(7, j + 1));
    printf("\nk's grade 5: ");
    for (int j = 1; j <= 6; ++j) printf("%+.3e ", k.k(5, j));
    printf("\np's grade 4: ");
    for (int j = 1; j <= 3; ++j) printf("%+.3e ", -praw.k(4, j));
    printf("\np's grade 2: %+.3e\n", -praw.k(2, 1));
    // same diagnostics for the order-4 pair to see whether p6-style behavior differs
    return 0;
}
