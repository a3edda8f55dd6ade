#ifndef PROCOMP_ORDER_CONDITIONS_HPP
#define PROCOMP_ORDER_CONDITIONS_HPP

#include <string>
#include <utility>
#include <vector>

#include "procomp/composition.hpp"
#include "procomp/lie_basis.hpp"

namespace procomp {

// Relative tolerance for declaring a condition satisfied: residuals are
// compared against tol * (1 + 2-norm of the grade's coefficients).
inline constexpr double kConditionTol = 1e-9;

struct EffectiveOrderReport {
    std::string method;
    int claimed_effective_order = 0;
    int verified_order = 0;   // largest r in {1,3,5,7} whose kernel conditions hold
    int effective_order = 0;  // verified_order + 1 for time-symmetric kernels
    bool time_symmetric = false;
    std::vector<std::pair<std::string, double>> condition_residuals;
    double e5 = 0.0;    // non-correctable order-5 error, 2-norm
    double e7 = 0.0;    // non-correctable order-7 error, 2-norm
    double eff5 = 0.0;  // s * e5^{1/4}
    double eff7 = 0.0;  // s * e7^{1/6}
    double one_norm = 0.0;
    KernelSeries series;
};

EffectiveOrderReport kernel_report(const CompositionScheme& scheme);

// Largest q such that all grade-2..q coefficients vanish (and k11 == 1), i.e.
// the conventional order of the composition.
int conventional_order(const KernelSeries& series);

struct ProcessorReport {
    // p_{i,j} in the sign convention of the published condition tables; this
    // is the log of the series of the inverse map of the beta composition
    // (the raw composition log carries the opposite sign, see processor_report).
    std::array<std::vector<double>, kMaxGrade + 1> p;
    // Strict conditions for the target order first (4 entries for order 4,
    // 13 for order 6), then the error-reduction block one grade higher.
    std::vector<std::pair<std::string, double>> condition_residuals;
    int satisfied_order = 0;        // 0, 4 or 6, from the strict block
    double strict_residual = 0.0;   // max |residual| over the strict block
    double max_residual = 0.0;      // max |residual| over all conditions
};

// Evaluates the processor conditions of the given target order (4 or 6)
// against a kernel series. beta must have 7 (order 4) or 23 (order 6) entries.
ProcessorReport processor_report(const ProcessorScheme& beta, const KernelSeries& kernel,
                                 int target_order);

// Which conditions the solver enforces. order_only is what the target order
// strictly needs (4 resp. 13 conditions). standard adds the error-reduction
// block that published processors satisfy (all 7 for order 4; 19 for order 6,
// where the last three grade-6 directions are omitted because the full system
// is rank-deficient in beta). extended is the full spec list (7 resp. 22).
enum class ProcessorConditionSet { order_only, standard, extended };

struct ProcessorSolveOptions {
    int max_iterations = 200;
    double fd_step = 1e-7;           // finite-difference Jacobian step
    int max_backtracks = 30;         // step halvings per iteration
    double residual_target = 1e-10;  // max-abs residual for convergence
    ProcessorConditionSet conditions = ProcessorConditionSet::standard;
    int jobs = 1;  // seeds run independently; results merge deterministically
};

// Damped Gauss-Newton search for beta vectors satisfying the processor
// conditions, one run per seed. Converged distinct solutions are returned
// sorted by 1-norm; no seed converging yields an empty list.
std::vector<ProcessorScheme> solve_processor(const KernelSeries& kernel, int target_order,
                                             int n_beta, const std::vector<std::vector<double>>& seeds,
                                             const ProcessorSolveOptions& options = {});

// Convenience: deterministic seed list (the zero seed plus uniform draws in
// [-0.5, 0.5]^n from the given RNG seed).
std::vector<std::vector<double>> processor_seed_cloud(int n_beta, int count, std::uint64_t rng_seed);

}  // namespace procomp

#endif
