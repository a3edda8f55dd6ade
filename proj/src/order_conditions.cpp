#include "procomp/order_conditions.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <thread>

#include "procomp/rng.hpp"

namespace procomp {

namespace {

double slice_norm(const KernelSeries& k, int n) {
    double s = 0.0;
    for (double v : k.coeffs[n]) s += v * v;
    return std::sqrt(s);
}

bool within(const KernelSeries& k, int grade, double residual) {
    return std::abs(residual) <= kConditionTol * (1.0 + slice_norm(k, grade));
}

}  // namespace

EffectiveOrderReport kernel_report(const CompositionScheme& scheme) {
    if (scheme.palindromic) scheme.require_consistent();

    EffectiveOrderReport rep;
    rep.method = scheme.name;
    rep.claimed_effective_order = scheme.effective_order;

    const std::vector<double> full = scheme.full_alpha();
    rep.series = LieBasis::instance().project(composition_log(full));
    const KernelSeries& k = rep.series;

    for (double a : full) rep.one_norm += std::abs(a);

    rep.time_symmetric = true;
    for (int n = 2; n <= 6; n += 2)
        rep.time_symmetric = rep.time_symmetric && slice_norm(k, n) <= kConditionTol * (1.0 + slice_norm(k, n));

    auto& res = rep.condition_residuals;
    res.emplace_back("k11-1", k.k(1, 1) - 1.0);
    res.emplace_back("k31", k.k(3, 1));
    res.emplace_back("k51", k.k(5, 1));
    res.emplace_back("k55", k.k(5, 5));
    res.emplace_back("k56+k32^2/2", k.k(5, 6) + 0.5 * k.k(3, 2) * k.k(3, 2));
    for (int i : {1, 11, 15, 17, 18})
        res.emplace_back("k7_" + std::to_string(i), k.k(7, i));
    res.emplace_back("k7_16-k32^3/6", k.k(7, 16) - std::pow(k.k(3, 2), 3) / 6.0);
    for (int j : {2, 3, 4})
        res.emplace_back("k7_" + std::to_string(10 + j) + "+k32*k5" + std::to_string(j),
                         k.k(7, 10 + j) + k.k(3, 2) * k.k(5, j));

    const bool ok1 = within(k, 1, res[0].second);
    const bool ok3 = within(k, 3, res[1].second);
    bool ok5 = true;
    for (int i = 2; i <= 4; ++i) ok5 = ok5 && within(k, 5, res[i].second);
    bool ok7 = true;
    for (int i = 5; i <= 13; ++i) ok7 = ok7 && within(k, 7, res[i].second);

    rep.verified_order = 0;
    if (ok1) rep.verified_order = 1;
    if (ok1 && ok3) rep.verified_order = 3;
    if (ok1 && ok3 && ok5) rep.verified_order = 5;
    if (ok1 && ok3 && ok5 && ok7) rep.verified_order = 7;
    rep.effective_order = rep.time_symmetric && rep.verified_order > 0 ? rep.verified_order + 1
                                                                       : rep.verified_order;

    rep.e5 = std::sqrt(res[2].second * res[2].second + res[3].second * res[3].second +
                       res[4].second * res[4].second);
    double e7sq = 0.0;
    for (int i = 5; i <= 13; ++i) e7sq += res[i].second * res[i].second;
    rep.e7 = std::sqrt(e7sq);

    const double s = scheme.stages();
    rep.eff5 = s * std::pow(rep.e5, 0.25);
    rep.eff7 = s * std::pow(rep.e7, 1.0 / 6.0);
    return rep;
}

int conventional_order(const KernelSeries& series) {
    if (std::abs(series.k(1, 1) - 1.0) > kConditionTol * 2.0) return 0;
    for (int n = 2; n <= kMaxGrade; ++n)
        if (slice_norm(series, n) > kConditionTol * (1.0 + slice_norm(series, n))) return n - 1;
    return kMaxGrade;
}

namespace {

// Signed residual vector of the processor conditions at the given order.
// p follows the published-table sign convention.
std::vector<std::pair<std::string, double>> processor_residuals(const KernelSeries& p,
                                                                const KernelSeries& k,
                                                                int target_order) {
    std::vector<std::pair<std::string, double>> res;
    res.emplace_back("p11", p.k(1, 1));
    res.emplace_back("p21-k32", p.k(2, 1) - k.k(3, 2));
    res.emplace_back("p31", p.k(3, 1));
    res.emplace_back("p32", p.k(3, 2));
    for (int i = 0; i < 3; ++i)
        res.emplace_back("p4" + std::to_string(1 + i) + "-k5" + std::to_string(2 + i),
                         p.k(4, 1 + i) - k.k(5, 2 + i));
    if (target_order >= 6) {
        for (int j = 1; j <= 6; ++j) res.emplace_back("p5" + std::to_string(j), p.k(5, j));
        for (int l = 0; l < 6; ++l)
            res.emplace_back("p6" + std::to_string(1 + l) + "-k7" + std::to_string(2 + l),
                             p.k(6, 1 + l) - k.k(7, 2 + l));
        res.emplace_back("p67-(k78-k32*k54/2)",
                         p.k(6, 7) - (k.k(7, 8) - 0.5 * k.k(3, 2) * k.k(5, 4)));
        res.emplace_back("p68-(k79-k32*k52/2)",
                         p.k(6, 8) - (k.k(7, 9) - 0.5 * k.k(3, 2) * k.k(5, 2)));
        res.emplace_back("p69-(k7_10-k32*k53/2)",
                         p.k(6, 9) - (k.k(7, 10) - 0.5 * k.k(3, 2) * k.k(5, 3)));
    }
    return res;
}

// Projection of the beta composition, negated: the published conditions are
// stated for the inverse-direction series (log Pi^{-1} = -log Pi), which is
// what the appendix coefficient sets satisfy.
KernelSeries processor_series(std::span<const double> beta) {
    KernelSeries p = LieBasis::instance().project(composition_log(beta));
    for (auto& grade : p.coeffs)
        for (double& v : grade) v = -v;
    return p;
}

}  // namespace

ProcessorReport processor_report(const ProcessorScheme& scheme, const KernelSeries& kernel,
                                 int target_order) {
    if (target_order != 4 && target_order != 6)
        throw std::invalid_argument("processor_report: target order must be 4 or 6");
    const std::size_t want = target_order == 4 ? 7 : 23;
    if (scheme.beta.size() != want)
        throw std::invalid_argument("processor_report: expected " + std::to_string(want) +
                                    " beta coefficients for order " + std::to_string(target_order) +
                                    ", got " + std::to_string(scheme.beta.size()));

    ProcessorReport rep;
    KernelSeries p = processor_series(scheme.beta);
    rep.p = p.coeffs;
    rep.condition_residuals = processor_residuals(p, kernel, target_order);

    // The first block of conditions is what the target order strictly
    // requires (4 through grade 3, 13 through grade 5); the remaining block
    // (p4* matching for order 4, the grade-6 block for order 6) reduces the
    // leading error term one grade higher. Published processors are only
    // guaranteed to satisfy the strict block plus whatever reduction their
    // authors chose, so the order verdict keys on the strict block.
    const std::size_t strict = target_order == 4 ? 4 : 13;
    rep.max_residual = 0.0;
    rep.strict_residual = 0.0;
    for (std::size_t i = 0; i < rep.condition_residuals.size(); ++i) {
        const double a = std::abs(rep.condition_residuals[i].second);
        rep.max_residual = std::max(rep.max_residual, a);
        if (i < strict) rep.strict_residual = std::max(rep.strict_residual, a);
    }
    const double tol = 1e-6;
    rep.satisfied_order = rep.strict_residual < tol ? target_order : 0;
    if (target_order == 6 && rep.satisfied_order == 0) {
        double max4 = 0.0;
        for (std::size_t i = 0; i < 4; ++i)
            max4 = std::max(max4, std::abs(rep.condition_residuals[i].second));
        if (max4 < tol) rep.satisfied_order = 4;
    }
    return rep;
}

namespace {

int condition_count(int target_order, ProcessorConditionSet set) {
    if (target_order == 4) return set == ProcessorConditionSet::order_only ? 4 : 7;
    switch (set) {
        case ProcessorConditionSet::order_only: return 13;
        case ProcessorConditionSet::standard: return 19;
        case ProcessorConditionSet::extended: return 22;
    }
    return 22;
}

// Residuals of the beta composition, with prefix/suffix factor products so a
// one-coefficient perturbation (finite-difference Jacobian columns) costs two
// polynomial products instead of a full chain.
class BetaResidual {
  public:
    BetaResidual(const KernelSeries& kernel, int target_order, int m)
        : kernel_(kernel), target_order_(target_order), m_(m) {}

    Eigen::VectorXd operator()(const Eigen::VectorXd& beta) {
        const int n = static_cast<int>(beta.size());
        factors_.resize(n);
        prefix_.assign(n + 1, GradedPolynomial::unit());
        suffix_.assign(n + 1, GradedPolynomial::unit());
        for (int i = 0; i < n; ++i) {
            factors_[i] = factor_series(i % 2 == 0 ? FactorKind::adjoint : FactorKind::forward,
                                        beta(i));
            prefix_[i + 1] = poly_mul(prefix_[i], factors_[i]);
        }
        for (int i = n - 1; i >= 0; --i) suffix_[i] = poly_mul(factors_[i], suffix_[i + 1]);
        return from_product(prefix_[n]);
    }

    // residual with beta_j replaced by value, reusing the cached chain
    Eigen::VectorXd perturbed(int j, double value) const {
        GradedPolynomial f = factor_series(j % 2 == 0 ? FactorKind::adjoint : FactorKind::forward,
                                           value);
        return from_product(poly_mul(prefix_[j], poly_mul(f, suffix_[j + 1])));
    }

  private:
    Eigen::VectorXd from_product(const GradedPolynomial& product) const {
        KernelSeries p = LieBasis::instance().project(log_poly(product));
        for (auto& g : p.coeffs)
            for (double& v : g) v = -v;
        auto named = processor_residuals(p, kernel_, target_order_);
        Eigen::VectorXd r(m_);
        for (int i = 0; i < m_; ++i) r(i) = named[i].second;
        return r;
    }

    const KernelSeries& kernel_;
    int target_order_;
    int m_;
    std::vector<GradedPolynomial> factors_;
    std::vector<GradedPolynomial> prefix_, suffix_;
};

}  // namespace

std::vector<ProcessorScheme> solve_processor(const KernelSeries& kernel, int target_order,
                                             int n_beta, const std::vector<std::vector<double>>& seeds,
                                             const ProcessorSolveOptions& opt) {
    if (target_order != 4 && target_order != 6)
        throw std::invalid_argument("solve_processor: target order must be 4 or 6");
    const int n_conditions = condition_count(target_order, opt.conditions);
    if (n_beta < n_conditions)
        throw std::invalid_argument("solve_processor: need at least " +
                                    std::to_string(n_conditions) + " coefficients");

    for (const auto& seed : seeds)
        if (static_cast<int>(seed.size()) != n_beta)
            throw std::invalid_argument("solve_processor: seed dimension mismatch");

    std::vector<std::optional<Eigen::VectorXd>> per_seed(seeds.size());
    auto solve_one = [&](int si) {
        BetaResidual residual(kernel, target_order, n_conditions);
        Eigen::VectorXd beta = Eigen::Map<const Eigen::VectorXd>(seeds[si].data(), n_beta);
        Eigen::VectorXd r = residual(beta);
        bool converged = r.cwiseAbs().maxCoeff() < opt.residual_target;
        for (int it = 0; it < opt.max_iterations && !converged; ++it) {
            Eigen::MatrixXd J(r.size(), n_beta);
            for (int j = 0; j < n_beta; ++j)
                J.col(j) = (residual.perturbed(j, beta(j) + opt.fd_step) - r) / opt.fd_step;
            // minimum-norm Gauss-Newton step (pseudoinverse)
            Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(-r);
            if (!step.allFinite()) break;
            double scale = 1.0;
            bool accepted = false;
            for (int bt = 0; bt <= opt.max_backtracks; ++bt) {
                Eigen::VectorXd candidate = beta + scale * step;
                Eigen::VectorXd rc = residual(candidate);
                if (rc.norm() < r.norm() || rc.cwiseAbs().maxCoeff() < opt.residual_target) {
                    beta = candidate;
                    r = rc;
                    accepted = true;
                    break;
                }
                scale *= 0.5;
            }
            if (!accepted) break;
            converged = r.cwiseAbs().maxCoeff() < opt.residual_target;
        }
        if (converged && beta.allFinite()) per_seed[si] = std::move(beta);
    };

    const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(seeds.size())));
    if (jobs == 1) {
        for (int si = 0; si < static_cast<int>(seeds.size()); ++si) solve_one(si);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (int si = next.fetch_add(1); si < static_cast<int>(seeds.size());
                     si = next.fetch_add(1))
                    solve_one(si);
            });
        for (auto& t : pool) t.join();
    }

    std::vector<Eigen::VectorXd> solutions;
    for (auto& s : per_seed)
        if (s) solutions.push_back(std::move(*s));

    // dedupe and sort by 1-norm
    std::vector<ProcessorScheme> out;
    std::sort(solutions.begin(), solutions.end(), [](const auto& a, const auto& b) {
        const double na = a.template lpNorm<1>(), nb = b.template lpNorm<1>();
        if (na != nb) return na < nb;
        return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                            b.data() + b.size());
    });
    for (const auto& beta : solutions) {
        bool duplicate = false;
        for (const auto& prev : out) {
            double d = 0.0;
            for (int i = 0; i < n_beta; ++i) d = std::max(d, std::abs(prev.beta[i] - beta(i)));
            if (d < 1e-8) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate)
            out.push_back(ProcessorScheme{"", std::vector<double>(beta.data(), beta.data() + n_beta)});
    }
    return out;
}

std::vector<std::vector<double>> processor_seed_cloud(int n_beta, int count, std::uint64_t rng_seed) {
    std::vector<std::vector<double>> seeds;
    seeds.emplace_back(n_beta, 0.0);
    Rng rng(rng_seed);
    // draws cycle through three radii so both wide and near-identity basins
    // are sampled
    static constexpr double radii[] = {0.5, 0.25, 0.125};
    for (int i = 1; i < count; ++i) {
        const double r = radii[i % 3];
        std::vector<double> s(n_beta);
        for (double& v : s) v = rng.uniform(-r, r);
        seeds.push_back(std::move(s));
    }
    return seeds;
}

}  // namespace procomp
