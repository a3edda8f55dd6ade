#include <Eigen/Dense>
#include <cmath>
#include <cstdio>

#include "procomp/catalog.hpp"
#include "procomp/order_conditions.hpp"
#include "procomp/rng.hpp"

using namespace procomp;

// residuals for a chosen condition count: 13 strict, 19 published-style, 22 full
static Eigen::VectorXd resid(const std::vector<double>& b, const KernelSeries& k, int m) {
    KernelSeries p = LieBasis::instance().project(composition_log(b));
    for (auto& g : p.coeffs)
        for (double& v : g) v = -v;
    Eigen::VectorXd r(m);
    int i = 0;
    r(i++) = p.k(1, 1);
    r(i++) = p.k(2, 1) - k.k(3, 2);
    r(i++) = p.k(3, 1);
    r(i++) = p.k(3, 2);
    for (int j = 0; j < 3 && i < m; ++j) r(i++) = p.k(4, 1 + j) - k.k(5, 2 + j);
    for (int j = 1; j <= 6 && i < m; ++j) r(i++) = p.k(5, j);
    for (int l = 0; l < 6 && i < m; ++l) r(i++) = p.k(6, 1 + l) - k.k(7, 2 + l);
    if (i < m) r(i++) = p.k(6, 7) - (k.k(7, 8) - 0.5 * k.k(3, 2) * k.k(5, 4));
    if (i < m) r(i++) = p.k(6, 8) - (k.k(7, 9) - 0.5 * k.k(3, 2) * k.k(5, 2));
    if (i < m) r(i++) = p.k(6, 9) - (k.k(7, 10) - 0.5 * k.k(3, 2) * k.k(5, 3));
    return r;
}

int main() {
    KernelSeries k11 = kernel_report(catalog_get("PSI11_6").scheme()).series;
    Rng rng(99);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<double> b(23);
        for (double& v : b) v = rng.uniform(-0.4, 0.4);
        Eigen::VectorXd r0 = resid(b, k11, 22);
        Eigen::MatrixXd J(22, 23);
        for (int j = 0; j < 23; ++j) {
            std::vector<double> bb = b;
            bb[j] += 1e-7;
            J.col(j) = (resid(bb, k11, 22) - r0) / 1e-7;
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
        auto sv = svd.singularValues();
        printf("random beta #%d: sv[19..21] = %.3e %.3e %.3e\n", trial, sv(19), sv(20), sv(21));
    }

    // 19-condition solve for several order-6 kernels
    for (const char* id : {"PSI8_6", "PSI10_6", "PSI11_6", "BCM9_6"}) {
        KernelSeries k = kernel_report(catalog_get(id).scheme()).series;
        auto seeds = processor_seed_cloud(23, 10, 2025);
        int found = 0;
        double best = 1e9;
        for (auto& seed : seeds) {
            Eigen::VectorXd beta = Eigen::Map<Eigen::VectorXd>(seed.data(), 23);
            Eigen::VectorXd r = resid(seed, k, 19);
            for (int it = 0; it < 120 && r.cwiseAbs().maxCoeff() >= 1e-11; ++it) {
                Eigen::MatrixXd J(19, 23);
                for (int j = 0; j < 23; ++j) {
                    std::vector<double> bb(beta.data(), beta.data() + 23);
                    bb[j] += 1e-7;
                    J.col(j) = (resid(bb, k, 19) - r) / 1e-7;
                }
                Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(-r);
                double scale = 1.0;
                for (int bt = 0; bt < 30; ++bt) {
                    Eigen::VectorXd cand = beta + scale * step;
                    std::vector<double> bb(cand.data(), cand.data() + 23);
                    Eigen::VectorXd rc = resid(bb, k, 19);
                    if (rc.norm() < r.norm()) {
                        beta = cand;
                        r = rc;
                        break;
                    }
                    scale *= 0.5;
                }
            }
            if (r.cwiseAbs().maxCoeff() < 1e-11) {
                ++found;
                best = std::min(best, beta.lpNorm<1>());
            }
        }
        printf("%s: 19-cond solves %d/10, best 1-norm %.4f\n", id, found, best);
    }

    // --- 3-stage kernel family scan: half = (a1, a2, 0.5-a1-a2), k31 = 0 ---
    printf("\n3-stage scan for E5 minimum:\n");
    const LieBasis& basis = LieBasis::instance();
    double best_e5 = 1e9, best_a1 = 0, best_a2 = 0;
    for (double a1 = 0.1; a1 <= 1.2; a1 += 0.002) {
        // solve k31(a1, a2) = 0 for a2 by bisection-ish Newton in a2
        for (double a2_seed : {-0.8, -0.3, 0.2, 0.7, 1.2}) {
            double a2 = a2_seed;
            bool ok = false;
            for (int it = 0; it < 60; ++it) {
                auto k31 = [&](double x) {
                    std::vector<double> full = palindromic_expand(std::vector<double>{a1, x, 0.5 - a1 - x});
                    return basis.project(composition_log(full)).k(3, 1);
                };
                double f = k31(a2), fp = (k31(a2 + 1e-7) - f) / 1e-7;
                if (std::abs(fp) < 1e-14) break;
                double step = f / fp;
                a2 -= step;
                if (std::abs(step) < 1e-13) {
                    ok = std::abs(k31(a2)) < 1e-11;
                    break;
                }
            }
            if (!ok) continue;
            std::vector<double> half{a1, a2, 0.5 - a1 - a2};
            EffectiveOrderReport rep =
                kernel_report(CompositionScheme{"scan", half, 2, 4, true});
            if (rep.e5 < best_e5) {
                best_e5 = rep.e5;
                best_a1 = a1;
                best_a2 = a2;
            }
        }
    }
    std::vector<double> bh{best_a1, best_a2, 0.5 - best_a1 - best_a2};
    EffectiveOrderReport bestrep = kernel_report(CompositionScheme{"best3", bh, 2, 4, true});
    printf("best: a=(%.6f, %.6f, %.6f) eff5=%.4f eff7=%.4f 1norm=%.4f\n", bh[0], bh[1], bh[2],
           bestrep.eff5, bestrep.eff7, bestrep.one_norm);
    return 0;
}
