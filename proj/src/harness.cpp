#include "procomp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "procomp/catalog.hpp"
#include "procomp/linear_problem.hpp"
#include "procomp/lorentz.hpp"
#include "procomp/order_conditions.hpp"
#include "procomp/reference.hpp"
#include "procomp/reissner_nordstrom.hpp"
#include "procomp/rng.hpp"

namespace procomp {

namespace {

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
    jobs = std::max(1, std::min(jobs, n));
    if (jobs <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int j = 0; j < jobs; ++j)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Processors solved for kernels without a published one. Seeds are fixed by
// the kernel id, so the result is deterministic regardless of the user seed.
const ProcessorScheme& solved_processor(const CatalogEntry& kernel) {
    static std::map<std::string, ProcessorScheme> cache;
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    auto it = cache.find(kernel.id);
    if (it != cache.end()) return it->second;

    const int order = kernel.effective_order;
    const int n_beta = order == 4 ? 7 : 23;
    KernelSeries series = kernel_report(kernel.scheme()).series;
    const std::uint64_t seed = fnv1a(kernel.id) ^ 0x9E3779B97F4A7C15ull;
    ProcessorSolveOptions opt;
    opt.jobs = std::max(1u, std::thread::hardware_concurrency());
    std::vector<ProcessorScheme> found;
    for (int count : {order == 4 ? 96 : 48, order == 4 ? 384 : 192}) {
        found = solve_processor(series, order, n_beta, processor_seed_cloud(n_beta, count, seed),
                                opt);
        if (!found.empty()) break;
    }
    if (found.empty())
        throw std::runtime_error("no real processor found for kernel " + kernel.id);
    ProcessorScheme best = found.front();  // minimum 1-norm
    best.name = "solved:" + kernel.id;
    return cache.emplace(kernel.id, std::move(best)).first->second;
}

}  // namespace

namespace {

struct ParsedMethodId {
    std::string kernel_id;
    std::string ordering;
    bool processed = false;
};

ParsedMethodId parse_method_id(const std::string& id) {
    ParsedMethodId p;
    std::string base = id;
    if (auto at = id.find('@'); at != std::string::npos) {
        base = id.substr(0, at);
        p.ordering = id.substr(at + 1);
    }
    p.kernel_id = base;
    if (base.rfind("PSIHAT", 0) == 0) {
        p.processed = true;
        p.kernel_id = "PSI" + base.substr(6);
    } else if (base.rfind("BCMHAT", 0) == 0) {
        p.processed = true;
        p.kernel_id = "BCM" + base.substr(6);
    }
    return p;
}

}  // namespace

void check_method_id(const std::string& id) {
    const ParsedMethodId p = parse_method_id(id);
    const CatalogEntry& entry = catalog_get(p.kernel_id);
    if (entry.kind == SchemeKind::processor)
        throw std::invalid_argument("method id '" + id + "' names a processor");
    if (p.processed && entry.kind != SchemeKind::kernel)
        throw std::invalid_argument("method id '" + id + "': " + p.kernel_id +
                                    " is not a kernel");
}

ResolvedMethod resolve_method(const std::string& id, std::uint64_t /*seed*/) {
    ResolvedMethod m;
    m.id = id;
    const ParsedMethodId parsed = parse_method_id(id);
    m.ordering = parsed.ordering;
    const bool processed = parsed.processed;
    const std::string& kernel_id = parsed.kernel_id;

    const CatalogEntry& entry = catalog_get(kernel_id);
    if (entry.kind == SchemeKind::processor)
        throw std::invalid_argument("method id '" + id + "' names a processor");
    m.kernel = entry.scheme();
    m.stages = entry.stages();
    m.expected_order = entry.order;

    if (processed) {
        if (entry.kind != SchemeKind::kernel)
            throw std::invalid_argument("method id '" + id + "': " + kernel_id +
                                        " is not a kernel");
        // published processor if the catalog pairs one with this kernel
        const ProcessorScheme* published = nullptr;
        static const std::pair<const char*, const char*> pairs[] = {{"PSI9_4", "PROC9_4"},
                                                                    {"PSI11_6", "PROC11_6"}};
        for (const auto& [k, p] : pairs)
            if (kernel_id == k) {
                static std::map<std::string, ProcessorScheme> cache;
                static std::mutex mutex;
                std::lock_guard lock(mutex);
                auto [it, inserted] = cache.try_emplace(p);
                if (inserted) it->second = catalog_get(p).processor();
                published = &it->second;
            }
        m.processor = published ? *published : solved_processor(entry);
        m.expected_order = entry.effective_order;
    }
    return m;
}

void ExperimentSpec::validate() const {
    static const std::vector<std::string> kinds = {"trace", "sweep", "efficiency", "orderings",
                                                   "drift"};
    if (std::find(kinds.begin(), kinds.end(), experiment) == kinds.end())
        throw std::invalid_argument("unknown experiment kind '" + experiment + "'");
    if (methods.empty()) throw std::invalid_argument("experiment needs at least one method id");
    if (cost_budget > 0.0 && !h_values.empty())
        throw std::invalid_argument("cost budget and h list are mutually exclusive");
    if (cost_budget <= 0.0 && h_values.empty())
        throw std::invalid_argument("one of cost budget or h list is required");
    if (t_f <= 0.0) throw std::invalid_argument("final time t_f must be positive");
    if (experiment == "trace" && problem.kind != "linear")
        throw std::invalid_argument("trace experiments need the linear problem");
    if (experiment == "drift" && problem.kind != "rn")
        throw std::invalid_argument("drift experiments need the rn problem");
    if (experiment == "sweep" && sweep_grid.empty())
        throw std::invalid_argument("sweep experiments need a non-empty sweep grid");
    for (const auto& id : methods) check_method_id(id);  // unknown ids throw here
}

namespace {

// ---------------------------------------------------------------------------
// problem drivers

struct LorentzDriver {
    using State = LorentzState;
    LorentzProblem problem;
    static constexpr const char* canonical = "CBA";

    LorentzDriver(const ProblemConfig& pc, double sweep_value = std::nan("")) {
        problem.q = pc.q;
        problem.m = pc.mass;
        problem.alpha_field = std::isnan(sweep_value) ? pc.alpha_field : sweep_value;
    }

    State initial(const ProblemConfig& pc) const {
        return {{pc.x0[0], pc.x0[1], pc.x0[2]}, {pc.v0[0], pc.v0[1], pc.v0[2]}};
    }

    std::unique_ptr<BasicMap<State>> make_map(const std::string& map_kind,
                                              const std::string& ordering) const {
        if (map_kind == "euler_explicit")
            return lorentz_euler_map(EulerKind::explicit_first, problem);
        if (map_kind == "euler_implicit")
            return lorentz_euler_map(EulerKind::implicit_first, problem);
        return lorentz_basic_map(problem, ordering.empty() ? canonical : ordering);
    }

    std::unique_ptr<BasicMap<State>> reference_map() const {
        return lorentz_basic_map(problem, canonical);
    }

    double invariant(const State& s) const { return problem.energy(s); }
    static double error(const State& a, const State& b) { return position_error(a, b); }
    static std::string flows() { return "ABC"; }
};

struct RNDriver {
    using State = RNState;
    RNProblem problem;
    double r_start;
    double theta_start;
    double p_theta_start;
    double h_level;
    static constexpr const char* canonical = "EDCBA";

    RNDriver(const ProblemConfig& pc, double sweep_value = std::nan("")) {
        problem.energy = pc.energy;
        problem.angmom = pc.angmom;
        problem.charge = pc.charge;
        problem.paper_literal = pc.paper_literal;
        r_start = std::isnan(sweep_value) ? pc.r0 : sweep_value;
        theta_start = pc.theta0;
        p_theta_start = pc.p_theta0;
        h_level = pc.h_value;
    }

    State initial(const ProblemConfig&) const {
        RNState s;
        s.r = r_start;
        s.theta = theta_start;
        s.p_theta = p_theta_start;
        s.p_r = problem.solve_p_r(h_level, r_start, theta_start, p_theta_start);
        return s;
    }

    std::unique_ptr<BasicMap<State>> make_map(const std::string&,
                                              const std::string& ordering) const {
        return rn_basic_map(problem, ordering.empty() ? canonical : ordering);
    }

    std::unique_ptr<BasicMap<State>> reference_map() const {
        return rn_basic_map(problem, canonical);
    }

    double invariant(const State& s) const { return problem.hamiltonian(s); }
    static double error(const State& a, const State& b) { return position_error(a, b); }
    static std::string flows() { return "ABCDE"; }
};

// ---------------------------------------------------------------------------
// generic cells

struct StepPlan {
    int steps = 0;
    double h = 0.0;
};

StepPlan plan_steps(double h_nominal, double t_f, int align = 1) {
    int n = std::max<int>(1, static_cast<int>(std::llround(t_f / h_nominal)));
    if (align > 1) n = std::max(align, ((n + align / 2) / align) * align);
    return {n, t_f / n};
}

template <class State>
Propagation<State> integrate_plain(const ResolvedMethod& m, const BasicMap<State>& map,
                                   const StepPlan& plan, State s0,
                                   const std::function<void(int, const State&)>& observe = {}) {
    if (m.processor) {
        return apply_processed(ProcessedMethod{m.id, m.kernel, *m.processor}, map, plan.h,
                               plan.steps, std::move(s0), observe);
    }
    const std::vector<double> full = m.kernel.full_alpha();
    Propagation<State> acc{std::move(s0), 0};
    for (int n = 0; n < plan.steps; ++n) {
        auto step = apply_composition(map, full, plan.h, std::move(acc.state));
        acc.state = std::move(step.state);
        acc.evaluations += step.evaluations;
        if (observe) observe(n + 1, acc.state);
    }
    return acc;
}

// Observable state at a checkpoint: processed methods apply pi to a copy.
template <class State>
State observable(const ResolvedMethod& m, const BasicMap<State>& map, double h,
                 const State& raw) {
    if (!m.processor) return raw;
    return apply_processor(map, m.processor->beta, h, raw).state;
}

// Final or trajectory-max error of one integration against the reference.
template <class Driver>
ResultRow run_error_cell(const ExperimentSpec& spec, const Driver& driver,
                         const ResolvedMethod& method, double h_nominal, double sweep_value,
                         const typename Driver::State& s0,
                         const std::vector<typename Driver::State>& ref_checkpoints) {
    using State = typename Driver::State;
    const double t0 = now_seconds();
    ResultRow row;
    row.experiment = spec.experiment;
    row.method = method.id;
    row.sweep = sweep_value;
    row.metric = spec.error_metric == "trajectory_max" ? "max_position_error" : "position_error";

    const int n_check = static_cast<int>(ref_checkpoints.size());
    const StepPlan plan = plan_steps(h_nominal, spec.t_f, n_check);
    row.h = plan.h;

    auto map = driver.make_map(spec.map_kind, method.ordering.empty() ? spec.ordering
                                                                      : method.ordering);
    double worst = 0.0;
    const int stride = plan.steps / n_check;
    std::function<void(int, const State&)> observe;
    if (spec.error_metric == "trajectory_max") {
        observe = [&](int step, const State& raw) {
            if (step % stride != 0) return;
            const State out = observable(method, *map, plan.h, raw);
            worst = std::max(worst, Driver::error(out, ref_checkpoints[step / stride - 1]));
        };
    }
    auto out = integrate_plain(method, *map, plan, s0, observe);
    row.cost = out.evaluations;
    if (spec.error_metric != "trajectory_max")
        worst = Driver::error(out.state, ref_checkpoints.back());
    row.value = worst;
    row.walltime = now_seconds() - t0;
    return row;
}

double method_h(const ExperimentSpec& spec, const ResolvedMethod& m) {
    return static_cast<double>(m.stages) / spec.cost_budget;
}

// sweep + efficiency + orderings share this cell matrix
template <class Driver>
ExperimentResult run_error_matrix(const ExperimentSpec& spec,
                                  const std::vector<ResolvedMethod>& methods,
                                  const std::vector<double>& sweep_values,
                                  const std::vector<double>& h_per_cell_or_empty) {
    using State = typename Driver::State;
    ExperimentResult result;
    std::mutex warn_mutex;

    // one reference checkpoint set per sweep value
    const int n_check = spec.error_metric == "trajectory_max" ? spec.checkpoints : 1;
    std::vector<std::vector<State>> refs(sweep_values.size());
    std::vector<std::optional<std::string>> ref_errors(sweep_values.size());
    double h_min = std::numeric_limits<double>::max();
    if (!h_per_cell_or_empty.empty())
        h_min = *std::min_element(h_per_cell_or_empty.begin(), h_per_cell_or_empty.end());
    else
        for (const auto& m : methods) h_min = std::min(h_min, method_h(spec, m));

    parallel_for(static_cast<int>(sweep_values.size()), spec.jobs, [&](int i) {
        try {
            Driver driver(spec.problem, sweep_values[i]);
            auto map = driver.reference_map();
            refs[i] = reference_checkpoints(*map, driver.initial(spec.problem), spec.t_f, n_check,
                                            h_min);
        } catch (const std::exception& e) {
            ref_errors[i] = e.what();
        }
    });

    struct CellKey {
        int method;
        int sweep;
        double h;
    };
    std::vector<CellKey> cells;
    if (!h_per_cell_or_empty.empty()) {
        for (std::size_t mi = 0; mi < methods.size(); ++mi)
            for (double h : h_per_cell_or_empty)
                for (std::size_t si = 0; si < sweep_values.size(); ++si)
                    cells.push_back({static_cast<int>(mi), static_cast<int>(si), h});
    } else {
        for (std::size_t mi = 0; mi < methods.size(); ++mi)
            for (std::size_t si = 0; si < sweep_values.size(); ++si)
                cells.push_back({static_cast<int>(mi), static_cast<int>(si),
                                 method_h(spec, methods[mi])});
    }

    std::vector<std::optional<ResultRow>> rows(cells.size());
    parallel_for(static_cast<int>(cells.size()), spec.jobs, [&](int c) {
        const CellKey& key = cells[c];
        if (ref_errors[key.sweep]) return;
        try {
            Driver driver(spec.problem, sweep_values[key.sweep]);
            rows[c] = run_error_cell(spec, driver, methods[key.method], key.h,
                                     sweep_values[key.sweep], driver.initial(spec.problem),
                                     refs[key.sweep]);
        } catch (const std::exception& e) {
            std::lock_guard lock(warn_mutex);
            result.warnings.push_back("cell (" + methods[key.method].id + ", sweep=" +
                                      std::to_string(sweep_values[key.sweep]) +
                                      ", h=" + std::to_string(key.h) + ") failed: " + e.what());
        }
    });

    for (std::size_t i = 0; i < sweep_values.size(); ++i)
        if (ref_errors[i])
            result.warnings.push_back("reference at sweep=" + std::to_string(sweep_values[i]) +
                                      " failed: " + *ref_errors[i]);
    for (auto& r : rows)
        if (r) result.rows.push_back(std::move(*r));
    return result;
}

std::vector<ResolvedMethod> resolve_all(const ExperimentSpec& spec,
                                        std::vector<std::string>* warnings) {
    std::vector<ResolvedMethod> methods;
    for (const auto& id : spec.methods) methods.push_back(resolve_method(id, spec.seed));
    for (const auto& id : spec.optional_methods) {
        try {
            methods.push_back(resolve_method(id, spec.seed));
        } catch (const std::exception& e) {
            if (warnings)
                warnings->push_back("optional method '" + id + "' skipped: " + e.what());
        }
    }
    return methods;
}

}  // namespace

// ---------------------------------------------------------------------------

ExperimentResult run_trace_test(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentResult result;
    const LinearMatrixProblem problem = LinearMatrixProblem::random_normal(
        spec.problem.dim, spec.problem.matrix_seed, spec.problem.n_parts);
    const double exact_trace = problem.exact_at(spec.t_f).trace();
    const LinearMapKind kind =
        spec.map_kind == "exact" ? LinearMapKind::exact : LinearMapKind::first_order;
    auto map = linear_basic_map(kind, problem, spec.problem.paper_literal);

    std::vector<ResolvedMethod> methods = resolve_all(spec, &result.warnings);
    struct Cell {
        int method;
        double h;
    };
    std::vector<Cell> cells;
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        if (!spec.h_values.empty())
            for (double h : spec.h_values) cells.push_back({static_cast<int>(mi), h});
        else
            cells.push_back({static_cast<int>(mi), method_h(spec, methods[mi])});
    }

    std::vector<std::optional<ResultRow>> rows(cells.size());
    std::mutex warn_mutex;
    parallel_for(static_cast<int>(cells.size()), spec.jobs, [&](int c) {
        const double t0 = now_seconds();
        try {
            const ResolvedMethod& m = methods[cells[c].method];
            const StepPlan plan = plan_steps(cells[c].h, spec.t_f);
            auto out = integrate_plain(m, *map, plan,
                                       Eigen::MatrixXd(Eigen::MatrixXd::Identity(
                                           problem.dim(), problem.dim())));
            ResultRow row;
            row.experiment = spec.experiment;
            row.method = m.id;
            row.h = plan.h;
            row.cost = out.evaluations;
            row.metric = "trace_error";
            row.value = std::abs(out.state.trace() - exact_trace);
            row.walltime = now_seconds() - t0;
            rows[c] = row;
        } catch (const std::exception& e) {
            std::lock_guard lock(warn_mutex);
            result.warnings.push_back("trace cell failed: " + std::string(e.what()));
        }
    });
    for (auto& r : rows)
        if (r) result.rows.push_back(std::move(*r));
    return result;
}

ExperimentResult run_sweep(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentResult result;
    std::vector<ResolvedMethod> methods = resolve_all(spec, &result.warnings);
    ExperimentResult inner;
    if (spec.problem.kind == "lorentz")
        inner = run_error_matrix<LorentzDriver>(spec, methods, spec.sweep_grid, {});
    else if (spec.problem.kind == "rn")
        inner = run_error_matrix<RNDriver>(spec, methods, spec.sweep_grid, {});
    else
        throw std::invalid_argument("sweep experiments need the lorentz or rn problem");
    result.rows = std::move(inner.rows);
    result.warnings.insert(result.warnings.end(), inner.warnings.begin(), inner.warnings.end());
    return result;
}

ExperimentResult run_efficiency(const ExperimentSpec& spec) {
    spec.validate();
    if (spec.h_values.size() < 4 ||
        *std::max_element(spec.h_values.begin(), spec.h_values.end()) <
            10.0 * *std::min_element(spec.h_values.begin(), spec.h_values.end()))
        throw std::invalid_argument(
            "efficiency experiments need >= 4 h values spanning at least a decade");
    ExperimentResult result;
    std::vector<ResolvedMethod> methods = resolve_all(spec, &result.warnings);
    const double anchor = spec.problem.kind == "rn" ? spec.problem.r0 : spec.problem.alpha_field;
    ExperimentResult inner;
    if (spec.problem.kind == "lorentz")
        inner = run_error_matrix<LorentzDriver>(spec, methods, {anchor}, spec.h_values);
    else if (spec.problem.kind == "rn")
        inner = run_error_matrix<RNDriver>(spec, methods, {anchor}, spec.h_values);
    else
        throw std::invalid_argument("efficiency experiments need the lorentz or rn problem");
    result.rows = std::move(inner.rows);
    result.warnings.insert(result.warnings.end(), inner.warnings.begin(), inner.warnings.end());
    return result;
}

ExperimentResult run_orderings(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentResult result;
    std::vector<ResolvedMethod> base = resolve_all(spec, &result.warnings);

    const std::string flows =
        spec.problem.kind == "rn" ? RNDriver::flows() : LorentzDriver::flows();
    const std::vector<std::string> orderings =
        enumerate_orderings(flows, spec.full_orderings || flows.size() <= 3, 12, spec.seed);

    std::vector<ResolvedMethod> methods;
    for (const auto& m : base)
        for (const auto& ord : orderings) {
            ResolvedMethod v = m;
            v.id = m.id + "@" + ord;
            v.ordering = ord;
            methods.push_back(std::move(v));
        }

    std::vector<double> sweep = spec.sweep_grid;
    if (sweep.empty())
        sweep = {spec.problem.kind == "rn" ? spec.problem.r0 : spec.problem.alpha_field};

    ExperimentResult inner;
    if (spec.problem.kind == "lorentz")
        inner = run_error_matrix<LorentzDriver>(spec, methods, sweep, {});
    else if (spec.problem.kind == "rn")
        inner = run_error_matrix<RNDriver>(spec, methods, sweep, {});
    else
        throw std::invalid_argument("ordering studies need a split problem (lorentz or rn)");
    result.rows = std::move(inner.rows);
    result.warnings.insert(result.warnings.end(), inner.warnings.begin(), inner.warnings.end());
    return result;
}

ExperimentResult run_drift(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentResult result;
    std::vector<ResolvedMethod> methods = resolve_all(spec, &result.warnings);

    RNDriver driver(spec.problem);
    const RNState s0 = driver.initial(spec.problem);
    const double h0 = driver.invariant(s0);

    double h_min = std::numeric_limits<double>::max();
    for (const auto& m : methods) h_min = std::min(h_min, method_h(spec, m));
    auto ref_map = driver.reference_map();
    const std::vector<RNState> refs =
        reference_checkpoints(*ref_map, s0, spec.t_f, spec.checkpoints, h_min);

    std::vector<std::vector<ResultRow>> per_method(methods.size());
    std::mutex warn_mutex;
    parallel_for(static_cast<int>(methods.size()), spec.jobs, [&](int mi) {
        const double t0 = now_seconds();
        const ResolvedMethod& m = methods[mi];
        try {
            const StepPlan plan = plan_steps(method_h(spec, m), spec.t_f, spec.checkpoints);
            auto map = driver.make_map(spec.map_kind, m.ordering);
            const int stride = plan.steps / spec.checkpoints;
            std::vector<ResultRow>& rows = per_method[mi];
            auto emit = [&](double t, double energy_err, double pos_err) {
                ResultRow row;
                row.experiment = spec.experiment;
                row.method = m.id;
                row.h = plan.h;
                row.sweep = t;
                row.metric = "energy_error";
                row.value = energy_err;
                rows.push_back(row);
                row.metric = "position_error";
                row.value = pos_err;
                rows.push_back(row);
            };
            emit(0.0, 0.0, 0.0);
            auto out = integrate_plain<RNState>(
                m, *map, plan, s0, [&](int step, const RNState& raw) {
                    if (step % stride != 0) return;
                    const RNState obs = observable(m, *map, plan.h, raw);
                    emit(step * plan.h, std::abs(driver.invariant(obs) - h0),
                         RNDriver::error(obs, refs[step / stride - 1]));
                });
            const double wt = now_seconds() - t0;
            for (auto& row : rows) {
                row.cost = out.evaluations;
                row.walltime = wt;
            }
        } catch (const std::exception& e) {
            std::lock_guard lock(warn_mutex);
            result.warnings.push_back("drift run for " + m.id + " failed: " + e.what());
        }
    });
    for (auto& rows : per_method)
        for (auto& row : rows) result.rows.push_back(std::move(row));
    return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    if (spec.experiment == "trace") return run_trace_test(spec);
    if (spec.experiment == "sweep") return run_sweep(spec);
    if (spec.experiment == "efficiency") return run_efficiency(spec);
    if (spec.experiment == "orderings") return run_orderings(spec);
    if (spec.experiment == "drift") return run_drift(spec);
    throw std::invalid_argument("unknown experiment kind '" + spec.experiment + "'");
}

std::vector<std::string> enumerate_orderings(const std::string& flows, bool exhaustive,
                                             int cap, std::uint64_t seed) {
    std::vector<std::string> all;
    std::string p = flows;
    std::sort(p.begin(), p.end());
    do {
        all.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    if (exhaustive || static_cast<int>(all.size()) <= cap) return all;

    std::string reversed(flows.rbegin(), flows.rend());
    std::vector<std::string> sample = {flows, reversed};
    Rng rng(seed ^ 0xABCDEFull);
    while (static_cast<int>(sample.size()) < cap) {
        const std::string& pick = all[static_cast<std::size_t>(rng.uniform01() * all.size())];
        if (std::find(sample.begin(), sample.end(), pick) == sample.end())
            sample.push_back(pick);
    }
    return sample;
}

OrderFit fit_order(const std::vector<ResultRow>& rows, const std::string& method) {
    std::vector<std::pair<double, double>> pts;  // (log h, log err)
    for (const auto& r : rows)
        if (r.method == method && std::isfinite(r.value) && r.value > 0.0 && r.h > 0.0)
            pts.emplace_back(std::log(r.h), std::log(r.value));
    std::sort(pts.begin(), pts.end());
    OrderFit fit;
    if (pts.size() < 2) return fit;

    std::vector<double> local(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        local[i] = (pts[i + 1].second - pts[i].second) / (pts[i + 1].first - pts[i].first);

    // largest contiguous run of local slopes with spread < 0.5
    std::size_t best_lo = 0, best_len = 1;
    for (std::size_t lo = 0; lo < local.size(); ++lo) {
        double mn = local[lo], mx = local[lo];
        for (std::size_t hi = lo; hi < local.size(); ++hi) {
            mn = std::min(mn, local[hi]);
            mx = std::max(mx, local[hi]);
            if (mx - mn >= 0.5) break;
            if (hi - lo + 1 > best_len) {
                best_len = hi - lo + 1;
                best_lo = lo;
            }
        }
    }
    const std::size_t p_lo = best_lo, p_hi = best_lo + best_len;  // point index range
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(p_hi - p_lo + 1);
    for (std::size_t i = p_lo; i <= p_hi; ++i) {
        sx += pts[i].first;
        sy += pts[i].second;
        sxx += pts[i].first * pts[i].first;
        sxy += pts[i].first * pts[i].second;
    }
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.points = static_cast<int>(n);
    fit.reliable = fit.points >= 3;
    return fit;
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    out << "experiment,method,h,cost,sweep,metric,value,walltime\n";
    char buf[512];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%s,%.17g,%lld,%.17g,%s,%.17g,%.6f\n",
                      r.experiment.c_str(), r.method.c_str(), r.h,
                      static_cast<long long>(r.cost), r.sweep, r.metric.c_str(), r.value,
                      r.walltime);
        out << buf;
    }
}

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return g;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1.0);
    return g;
}

}  // namespace

std::vector<std::string> figure_recipe_names() {
    return {"fig-traces", "fig-em1a", "fig-em1b", "fig-em2a", "fig-em2b", "fig-em-ord",
            "fig-rn1a", "fig-rn1b", "fig-rnZ", "fig-EIem1", "fig-EIem2"};
}

ExperimentSpec figure_recipe(const std::string& name) {
    ExperimentSpec s;
    s.problem.kind = "lorentz";
    if (name == "fig-traces") {
        s.experiment = "trace";
        s.problem.kind = "linear";
        s.map_kind = "first_order";
        s.methods = {"PSI4_4", "PSI5_4", "PSI6_4", "PSI7_4", "PSI8_4", "PSI9_4",
                     "BM6_4", "BCM6_4"};
        s.t_f = 10.0;
        s.h_values = log_grid(0.02, 0.4, 12);
    } else if (name == "fig-em1a" || name == "fig-em2a") {
        s.experiment = "sweep";
        s.sweep_variable = "alpha_field";
        s.sweep_grid = linear_grid(0.002, 0.1, 50);
        s.cost_budget = 40.0;
        s.t_f = 200.0;
        s.methods = name == "fig-em1a"
                        ? std::vector<std::string>{"BM6_4", "BCMHAT6_4", "PSIHAT6_4", "PSIHAT8_4"}
                        : std::vector<std::string>{"BM10_6", "BCMHAT9_6", "PSIHAT8_6",
                                                   "PSIHAT10_6"};
    } else if (name == "fig-em1b" || name == "fig-em2b") {
        s.experiment = "efficiency";
        s.t_f = 200.0;
        s.h_values = log_grid(0.02, 0.8, 14);
        if (name == "fig-em1b") {
            s.problem.alpha_field = 0.07;
            s.methods = {"BM6_4", "BCMHAT6_4", "PSIHAT6_4", "PSIHAT8_4", "SS3_4"};
        } else {
            s.problem.alpha_field = 0.04;
            s.methods = {"BM10_6", "BCMHAT9_6", "PSIHAT8_6", "PSIHAT10_6"};
            s.optional_methods = {"SS7_6"};  // coefficients only via external file
        }
    } else if (name == "fig-em-ord") {
        s.experiment = "orderings";
        s.methods = {"PSIHAT8_4"};
        s.sweep_grid = linear_grid(0.002, 0.1, 25);
        s.cost_budget = 40.0;
        s.t_f = 200.0;
    } else if (name == "fig-rn1a" || name == "fig-rn1b") {
        s.problem.kind = "rn";
        s.t_f = 1e4;
        s.methods = {"BM6_4", "BCMHAT6_4", "PSIHAT6_4", "PSIHAT8_4"};
        if (name == "fig-rn1a") {
            s.experiment = "sweep";
            s.sweep_variable = "r0";
            s.sweep_grid = linear_grid(9.0, 110.0, 30);
            s.cost_budget = 0.4;
        } else {
            s.experiment = "efficiency";
            s.problem.r0 = 18.0;
            s.h_values = log_grid(2.0, 40.0, 12);
        }
    } else if (name == "fig-rnZ") {
        s.problem.kind = "rn";
        s.experiment = "drift";
        s.methods = {"BM6_4", "PSIHAT9_4"};
        s.cost_budget = 1.0;
        s.t_f = 1e4;
        s.checkpoints = 100;
    } else if (name == "fig-EIem1" || name == "fig-EIem2") {
        s.experiment = "efficiency";
        s.map_kind = "euler_explicit";
        s.problem.alpha_field = 0.07;
        s.t_f = 200.0;
        s.h_values = log_grid(0.02, 0.8, 14);
        s.methods = name == "fig-EIem1"
                        ? std::vector<std::string>{"BM6_4", "BCMHAT6_4", "PSIHAT6_4", "PSIHAT8_4"}
                        : std::vector<std::string>{"BM10_6", "BCMHAT9_6", "PSIHAT8_6",
                                                   "PSIHAT10_6"};
    } else {
        std::ostringstream msg;
        msg << "unknown figure recipe '" << name << "'; valid:";
        for (const auto& r : figure_recipe_names()) msg << ' ' << r;
        throw std::invalid_argument(msg.str());
    }
    return s;
}

std::string plot_script(const ExperimentSpec& spec, const std::string& csv_name) {
    std::ostringstream py;
    py << "#!/usr/bin/env python3\n"
       << "# plots " << csv_name << " (" << spec.experiment << " experiment)\n"
       << "import csv, math, collections\n"
       << "import matplotlib.pyplot as plt\n\n"
       << "rows = list(csv.DictReader(open('" << csv_name << "')))\n"
       << "series = collections.defaultdict(list)\n";
    if (spec.experiment == "efficiency" || spec.experiment == "trace") {
        py << "for r in rows:\n"
           << "    series[r['method']].append((float(r['cost']), float(r['value'])))\n"
           << "for name, pts in sorted(series.items()):\n"
           << "    pts.sort()\n"
           << "    plt.loglog([p[0] for p in pts], [p[1] for p in pts], 'o-', label=name)\n"
           << "plt.xlabel('elementary flow evaluations')\n";
    } else if (spec.experiment == "drift") {
        py << "for r in rows:\n"
           << "    series[(r['method'], r['metric'])].append((float(r['sweep']), "
              "float(r['value'])))\n"
           << "for (name, metric), pts in sorted(series.items()):\n"
           << "    pts.sort()\n"
           << "    plt.semilogy([p[0] for p in pts], [max(p[1], 1e-18) for p in pts], "
              "label=f'{name} {metric}')\n"
           << "plt.xlabel('t')\n";
    } else {
        py << "for r in rows:\n"
           << "    series[r['method']].append((float(r['sweep']), float(r['value'])))\n"
           << "for name, pts in sorted(series.items()):\n"
           << "    pts.sort()\n"
           << "    plt.semilogy([p[0] for p in pts], [p[1] for p in pts], 'o-', label=name)\n"
           << "plt.xlabel('" << (spec.sweep_variable.empty() ? "sweep" : spec.sweep_variable)
           << "')\n";
    }
    py << "plt.ylabel('error')\nplt.legend()\nplt.grid(True, which='both', alpha=0.3)\n"
       << "plt.tight_layout()\nplt.savefig('" << spec.experiment << ".png', dpi=160)\n"
       << "print('wrote " << spec.experiment << ".png')\n";
    return py.str();
}

}  // namespace procomp
