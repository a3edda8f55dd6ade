#ifndef PROCOMP_LINEAR_PROBLEM_HPP
#define PROCOMP_LINEAR_PROBLEM_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <vector>

#include "procomp/composition.hpp"

namespace procomp {

// A basic-map step could not be completed (singular resolvent, implicit
// solve divergence, flow leaving its domain). Callers reduce h or record the
// cell as missing.
struct StepFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// U' = (A_1 + ... + A_n) U with exact solution exp(t sum) U0. Matrix entries
// are i.i.d. standard normal from the seeded generator.
struct LinearMatrixProblem {
    std::vector<Eigen::MatrixXd> parts;
    std::uint64_t seed = 0;

    static LinearMatrixProblem random_normal(int dim, std::uint64_t seed, int n_parts = 3);

    int dim() const { return parts.empty() ? 0 : static_cast<int>(parts[0].rows()); }
    Eigen::MatrixXd sum() const;
    Eigen::MatrixXd exact_at(double t) const;  // expm(t * sum)

    // Merge parts [1..n) into one, leaving a 2-part problem (for the
    // composition-vs-splitting equivalence path).
    LinearMatrixProblem merged_tail() const;
};

enum class LinearMapKind { exact, first_order };

// chi_h U = e^{h A_n} ... e^{h A_1} U                   (exact flows)
// chi_h U = (I + h A_n) ... (I + h A_1) U               (first order)
// with the adjoint applying the inverse factors in reverse order. Factor
// exponentials / LU decompositions are cached per step size. paper_literal
// reproduces the printed exact map e^{hA3} e^{hA1} e^{hA1} for 3 parts.
std::unique_ptr<BasicMap<Eigen::MatrixXd>> linear_basic_map(LinearMapKind kind,
                                                            const LinearMatrixProblem& problem,
                                                            bool paper_literal = false);

}  // namespace procomp

#endif
