#include <cmath>
#include <cstdio>
#include <vector>

#include "procomp/lie_basis.hpp"
#include "procomp/word_algebra.hpp"

using namespace procomp;

int main() {
    // psi_9^{[4]} half coefficients (Table 4)
    std::vector<double> half = {0.082576, 0.082576, 0.082576, 0.082576,
                                0.082576, 0.082576, 0.082576,
                                -0.1668033908821750242843527,
                                0.08877139088217502428435271};
    std::vector<double> full(half);
    full.insert(full.end(), half.rbegin(), half.rend());
    KernelSeries K = LieBasis::instance().project(composition_log(full));
    printf("kernel residual %.3e\n", K.residual);
    printf("k31 %.3e  k32 %.15f\n", K.k(3, 1), K.k(3, 2));
    printf("k51 %.3e k55 %.3e k56 %.15f  -0.5k32^2 %.15f\n", K.k(5, 1), K.k(5, 5), K.k(5, 6),
           -0.5 * K.k(3, 2) * K.k(3, 2));
    printf("k52 %.15f k53 %.15f k54 %.15f\n", K.k(5, 2), K.k(5, 3), K.k(5, 4));

    // E5, eff5 for s=9: expect table 1.0778
    double e5 = std::sqrt(K.k(5, 1) * K.k(5, 1) + K.k(5, 5) * K.k(5, 5) +
                          std::pow(K.k(5, 6) + 0.5 * K.k(3, 2) * K.k(3, 2), 2));
    printf("E5 %.6e  eff5 = s*E5^(1/4) = %.6f (table 1.0778)\n", e5, 9 * std::pow(e5, 0.25));

    // pi^{(9,4)} appendix betas
    std::vector<double> beta = {-0.28566586026506785, 0.015761586550701766, -0.04362530065430363,
                                -0.03618407560045836, 0.05244978481197771, 0.28558661670075497,
                                0.011677248456395364};
    KernelSeries P = LieBasis::instance().project(composition_log(beta));
    printf("\nprocessor residual %.3e\n", P.residual);
    printf("p11 %.3e p31 %.3e p32 %.3e\n", P.k(1, 1), P.k(3, 1), P.k(3, 2));
    printf("p21 %.15f   (k32 = %.15f)\n", P.k(2, 1), K.k(3, 2));
    printf("p41 %.15f   (k52 = %.15f)\n", P.k(4, 1), K.k(5, 2));
    printf("p42 %.15f   (k53 = %.15f)\n", P.k(4, 2), K.k(5, 3));
    printf("p43 %.15f   (k54 = %.15f)\n", P.k(4, 3), K.k(5, 4));

    // reversed beta reading, for comparison
    std::vector<double> beta_rev(beta.rbegin(), beta.rend());
    KernelSeries Pr = LieBasis::instance().project(composition_log(beta_rev));
    printf("\nreversed: p21 %.15f p41 %.15f p42 %.15f p43 %.15f (p11 %.2e p31 %.2e p32 %.2e)\n",
           Pr.k(2, 1), Pr.k(4, 1), Pr.k(4, 2), Pr.k(4, 3), Pr.k(1, 1), Pr.k(3, 1), Pr.k(3, 2));
    return 0;
}
