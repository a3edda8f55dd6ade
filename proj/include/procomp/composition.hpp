#ifndef PROCOMP_COMPOSITION_HPP
#define PROCOMP_COMPOSITION_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace procomp {

// Palindromic chi/chi* composition: the full coefficient vector is
// (a_1..a_s, a_s..a_1), consumed in application order with the adjoint
// factor chi*_{a_1 h} first.
struct CompositionScheme {
    std::string name;
    std::vector<double> half_alpha;
    int order = 0;            // conventional order
    int effective_order = 0;  // order reachable with a processor
    bool palindromic = true;

    int stages() const { return static_cast<int>(half_alpha.size()); }
    std::vector<double> full_alpha() const;

    // |2*sum(half) - 1| <= tol; throws std::invalid_argument otherwise
    void require_consistent(double tol = 1e-12) const;
};

// Processor as a chi/chi* composition: beta_1 adjoint first, alternating.
struct ProcessorScheme {
    std::string name;
    std::vector<double> beta;
    double one_norm() const;
};

struct ProcessedMethod {
    std::string name;
    CompositionScheme kernel;
    ProcessorScheme processor;
};

// Two-part splitting form psi = phi1_{a_{s+1}} o phi2_{b_s} o ... o phi2_{b_1} o phi1_{a_1}.
struct SplittingScheme {
    std::vector<double> a;  // s+1 entries
    std::vector<double> b;  // s entries
};

std::vector<double> palindromic_expand(std::span<const double> half);

// a_1 = alpha_1, a_{j+1} = alpha_{2j} + alpha_{2j+1}, b_j = alpha_{2j-1} + alpha_{2j}
// (alpha_{2s+1} = 0). sum(a) == sum(b) by construction.
SplittingScheme to_splitting(std::span<const double> alpha_full);
SplittingScheme to_splitting(const CompositionScheme& scheme);

// One-step first-order map chi_h with adjoint chi*_h = (chi_{-h})^{-1} over a
// problem state, plus the number of elementary sub-flow evaluations one call
// costs. Implementations must be callable concurrently on distinct states.
template <class State>
class BasicMap {
  public:
    virtual ~BasicMap() = default;
    virtual State forward(const State& x, double h) const = 0;
    virtual State adjoint(const State& x, double h) const = 0;
    virtual int flow_count() const = 0;
};

template <class State>
struct Propagation {
    State state;
    std::int64_t evaluations = 0;  // elementary sub-flow evaluations
};

// chi*_{a1 h}, chi_{a2 h}, chi*_{a3 h}, ... applied in that order.
template <class State>
Propagation<State> apply_composition(const BasicMap<State>& map, std::span<const double> alpha_full,
                                     double h, State state) {
    std::int64_t evals = 0;
    for (std::size_t i = 0; i < alpha_full.size(); ++i) {
        state = (i % 2 == 0) ? map.adjoint(state, alpha_full[i] * h)
                             : map.forward(state, alpha_full[i] * h);
        evals += map.flow_count();
    }
    return {std::move(state), evals};
}

// The processor map pi itself: chi*_{b1 h} first, alternating.
template <class State>
Propagation<State> apply_processor(const BasicMap<State>& map, std::span<const double> beta,
                                   double h, State state) {
    return apply_composition(map, beta, h, std::move(state));
}

// pi* = (pi_{-h})^{-1}: the reversed sequence with chi and chi* exchanged.
template <class State>
Propagation<State> apply_processor_adjoint(const BasicMap<State>& map, std::span<const double> beta,
                                           double h, State state) {
    std::int64_t evals = 0;
    const std::size_t m = beta.size();
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t i = m - 1 - j;  // position in the pi sequence
        state = (i % 2 == 0) ? map.forward(state, beta[i] * h)
                             : map.adjoint(state, beta[i] * h);
        evals += map.flow_count();
    }
    return {std::move(state), evals};
}

// pi^{-1}, exactly: the adjoint pattern with negated coefficients.
template <class State>
Propagation<State> apply_processor_inverse(const BasicMap<State>& map, std::span<const double> beta,
                                           double h, State state) {
    std::int64_t evals = 0;
    const std::size_t m = beta.size();
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t i = m - 1 - j;
        state = (i % 2 == 0) ? map.forward(state, -beta[i] * h)
                             : map.adjoint(state, -beta[i] * h);
        evals += map.flow_count();
    }
    return {std::move(state), evals};
}

enum class ProcessorVariant { adjoint, inverse };

// pi o psi^N o pi* (or pi o psi^N o pi^{-1}).  The observer, if set, fires
// after every kernel step with the raw kernel state; processed output is
// obtained by applying pi to a copy (processed_view below), never by mutating
// the propagated state.
template <class State>
Propagation<State> apply_processed(const ProcessedMethod& method, const BasicMap<State>& map,
                                   double h, int steps, State state,
                                   const std::function<void(int, const State&)>& observe = {},
                                   ProcessorVariant variant = ProcessorVariant::adjoint) {
    if (steps < 1) throw std::invalid_argument("apply_processed: steps must be >= 1");
    const std::vector<double> alpha = method.kernel.full_alpha();
    const std::vector<double>& beta = method.processor.beta;
    std::int64_t evals = 0;

    auto pre = (variant == ProcessorVariant::adjoint)
                   ? apply_processor_adjoint(map, beta, h, std::move(state))
                   : apply_processor_inverse(map, beta, h, std::move(state));
    state = std::move(pre.state);
    evals += pre.evaluations;

    for (int n = 0; n < steps; ++n) {
        auto step = apply_composition(map, alpha, h, std::move(state));
        state = std::move(step.state);
        evals += step.evaluations;
        if (observe) observe(n + 1, state);
    }

    auto post = apply_processor(map, beta, h, std::move(state));
    post.evaluations += evals;
    return post;
}

// Processed observable state: pi applied to a copy of the raw kernel state.
template <class State>
State processed_view(const ProcessedMethod& method, const BasicMap<State>& map, double h,
                     const State& raw) {
    return apply_processor(map, method.processor.beta, h, raw).state;
}

// Splitting-path application for two explicitly integrable parts,
// flow(i, state, t) with i in {1,2}.
template <class State, class Flow>
State apply_splitting(const SplittingScheme& s, Flow&& flow, double h, State state) {
    const std::size_t stages = s.b.size();
    state = flow(1, std::move(state), s.a[0] * h);
    for (std::size_t j = 0; j < stages; ++j) {
        state = flow(2, std::move(state), s.b[j] * h);
        state = flow(1, std::move(state), s.a[j + 1] * h);
    }
    return state;
}

}  // namespace procomp

#endif
