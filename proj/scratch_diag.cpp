#include <Eigen/Dense>
#include <cmath>
#include <cstdio>

#include "procomp/catalog.hpp"
#include "procomp/order_conditions.hpp"

using namespace procomp;

int main() {
    // --- PSI3_4 grade-5 components ---
    EffectiveOrderReport r3 = kernel_report(catalog_get("PSI3_4").scheme());
    printf("PSI3_4 k5: ");
    for (int j = 1; j <= 6; ++j) printf("%+.10f ", r3.series.k(5, j));
    printf("\nE5 mine %.8f; target (2.2753/3)^4 = %.8f\n", r3.e5, std::pow(2.2753 / 3.0, 4));
    printf("k7: ");
    for (int j = 1; j <= 18; ++j) printf("%+.6f ", r3.series.k(7, j));
    printf("\nE7 mine %.8f; target (2.5675/3)^6 = %.8f\n", r3.e7, std::pow(2.5675 / 3.0, 6));

    // combos
    double k51 = r3.series.k(5, 1), k55 = r3.series.k(5, 5), k56 = r3.series.k(5, 6);
    double k52 = r3.series.k(5, 2), k53 = r3.series.k(5, 3), k54 = r3.series.k(5, 4);
    printf("sqrt(k51^2+k55^2+k56^2) = %.8f\n", std::sqrt(k51 * k51 + k55 * k55 + k56 * k56));
    printf("sqrt(all six)           = %.8f\n",
           std::sqrt(k51 * k51 + k52 * k52 + k53 * k53 + k54 * k54 + k55 * k55 + k56 * k56));
    printf("|k51|                   = %.8f\n", std::fabs(k51));
    printf("sqrt(k51^2+k55^2)       = %.8f\n", std::sqrt(k51 * k51 + k55 * k55));
    printf("sqrt(k51^2+k56^2)       = %.8f\n", std::sqrt(k51 * k51 + k56 * k56));

    // --- Jacobian rank of the 22-condition system at the published beta ---
    KernelSeries k11 = kernel_report(catalog_get("PSI11_6").scheme()).series;
    std::vector<double> beta = catalog_get("PROC11_6").beta;
    auto resid = [&](const std::vector<double>& b) {
        KernelSeries praw = LieBasis::instance().project(composition_log(b));
        for (auto& g : praw.coeffs)
            for (double& v : g) v = -v;
        Eigen::VectorXd r(22);
        int i = 0;
        r(i++) = praw.k(1, 1);
        r(i++) = praw.k(2, 1) - k11.k(3, 2);
        r(i++) = praw.k(3, 1);
        r(i++) = praw.k(3, 2);
        for (int j = 0; j < 3; ++j) r(i++) = praw.k(4, 1 + j) - k11.k(5, 2 + j);
        for (int j = 1; j <= 6; ++j) r(i++) = praw.k(5, j);
        for (int l = 0; l < 6; ++l) r(i++) = praw.k(6, 1 + l) - k11.k(7, 2 + l);
        r(i++) = praw.k(6, 7) - (k11.k(7, 8) - 0.5 * k11.k(3, 2) * k11.k(5, 4));
        r(i++) = praw.k(6, 8) - (k11.k(7, 9) - 0.5 * k11.k(3, 2) * k11.k(5, 2));
        r(i++) = praw.k(6, 9) - (k11.k(7, 10) - 0.5 * k11.k(3, 2) * k11.k(5, 3));
        return r;
    };
    Eigen::VectorXd r0 = resid(beta);
    printf("\nresidual at published beta: max %.3e norm %.3e\n", r0.cwiseAbs().maxCoeff(), r0.norm());
    Eigen::MatrixXd J(22, 23);
    const double fd = 1e-7;
    for (int j = 0; j < 23; ++j) {
        std::vector<double> b = beta;
        b[j] += fd;
        J.col(j) = (resid(b) - r0) / fd;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
    printf("singular values of J:\n");
    for (int i = 0; i < 22; ++i) printf("  %2d: %.6e\n", i, svd.singularValues()(i));
    return 0;
}
