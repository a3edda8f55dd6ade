#ifndef PROCOMP_HARNESS_HPP
#define PROCOMP_HARNESS_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "procomp/composition.hpp"

namespace procomp {

struct ProblemConfig {
    std::string kind = "lorentz";  // linear | lorentz | rn

    // linear
    int dim = 50;
    std::uint64_t matrix_seed = 12345;
    int n_parts = 3;

    // lorentz
    double q = -1.0;
    double mass = 1.0;
    double alpha_field = 0.07;
    std::array<double, 3> x0{0.0, -1.0, 0.0};
    std::array<double, 3> v0{0.1, 0.01, 0.0};

    // reissner-nordstrom
    double energy = 0.995;
    double angmom = 4.6;
    double charge = 0.3;
    double r0 = 18.0;
    double theta0 = 1.5707963267948966;
    double p_theta0 = 0.0;
    double h_value = -0.5;  // Hamiltonian level fixing p_r0 (bound-orbit branch)

    bool paper_literal = false;
};

struct ExperimentSpec {
    std::string experiment;  // trace | sweep | efficiency | orderings | drift
    ProblemConfig problem;
    std::vector<std::string> methods;         // see resolve_method for the id grammar
    std::vector<std::string> optional_methods;  // skipped with a warning when unknown
    std::string map_kind = "split";  // split | exact | first_order | euler_explicit | euler_implicit
    std::string ordering;            // sub-flow application order; "" = canonical
    double cost_budget = 0.0;        // stages per unit time (s/h); exclusive with h_values
    std::vector<double> h_values;
    double t_f = 0.0;
    std::string sweep_variable;  // alpha_field | r0
    std::vector<double> sweep_grid;
    std::uint64_t seed = 0;
    int checkpoints = 16;        // drift time series length
    bool full_orderings = false; // rn: all 120 permutations instead of 12
    std::string error_metric = "final";  // final | trajectory_max
    int jobs = 1;

    void validate() const;  // throws std::invalid_argument on bad combinations
};

struct ResultRow {
    std::string experiment;
    std::string method;
    double h = 0.0;
    std::int64_t cost = 0;
    double sweep = std::numeric_limits<double>::quiet_NaN();
    std::string metric;
    double value = std::numeric_limits<double>::quiet_NaN();
    double walltime = 0.0;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<std::string> warnings;
};

// A method id resolved against the catalog. Grammar:
//   <catalog id>            plain composition (classic) or bare kernel
//   <kernel id> with "PSIHAT{s}_{r}" / "BCMHAT{s}_{r}"  processed method; the
//   processor is the published one when the catalog pairs one with the kernel
//   and is otherwise solved deterministically (cached per kernel).
//   Optionally suffixed "@<ordering>" to fix the sub-flow application order.
struct ResolvedMethod {
    std::string id;
    CompositionScheme kernel;
    std::optional<ProcessorScheme> processor;
    std::string ordering;  // "" = experiment/canonical ordering
    int stages = 0;
    int expected_order = 0;  // conventional order of the assembled integrator
};

ResolvedMethod resolve_method(const std::string& id, std::uint64_t seed = 0);

// Grammar/catalog check of a method id without solving any processor
// (validate() uses this; resolve_method does the full work).
void check_method_id(const std::string& id);

ExperimentResult run_experiment(const ExperimentSpec& spec);
ExperimentResult run_trace_test(const ExperimentSpec& spec);
ExperimentResult run_sweep(const ExperimentSpec& spec);
ExperimentResult run_efficiency(const ExperimentSpec& spec);
ExperimentResult run_orderings(const ExperimentSpec& spec);
ExperimentResult run_drift(const ExperimentSpec& spec);

struct OrderFit {
    double slope = 0.0;
    int points = 0;
    bool reliable = false;  // at least 3 asymptotic points
};

// Least-squares slope of log(error) vs log(h) over the largest contiguous
// segment where the local slope varies by less than 0.5.
OrderFit fit_order(const std::vector<ResultRow>& rows, const std::string& method);

// Sub-flow application orders for an orderings study: all permutations of the
// flow letters, or (when not exhaustive and more than `cap` exist) a
// deterministic sample of `cap` permutations containing the canonical order
// and its reverse.
std::vector<std::string> enumerate_orderings(const std::string& flows, bool exhaustive, int cap,
                                             std::uint64_t seed);

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);

// Named experiment setups mirroring the paper's figures (full scale).
std::vector<std::string> figure_recipe_names();
ExperimentSpec figure_recipe(const std::string& name);

// Self-contained plot script (text) for a recipe's CSV.
std::string plot_script(const ExperimentSpec& spec, const std::string& csv_name);

}  // namespace procomp

#endif
