#ifndef PROCOMP_REISSNER_NORDSTROM_HPP
#define PROCOMP_REISSNER_NORDSTROM_HPP

#include <memory>
#include <string>

#include "procomp/composition.hpp"
#include "procomp/linear_problem.hpp"

namespace procomp {

struct RNState {
    double r = 0.0;
    double theta = 0.0;
    double p_r = 0.0;
    double p_theta = 0.0;
};

// Test particle around a charged, non-rotating black hole:
//   H = -E^2 / (2 W(r)) + W(r) p_r^2 / 2 + p_theta^2 / (2 r^2) + L^2 / (2 r^2 sin^2 theta)
// with W(r) = 1 - 2/r + Q^2/r^2, split into five explicitly integrable parts
//   H_A = -E^2/(2W) + L^2/(2 r^2 sin^2 th),  H_B = p_r^2/2,  H_C = -p_r^2/r,
//   H_D = p_theta^2/(2 r^2),                 H_E = Q^2 p_r^2/(2 r^2).
// paper_literal reproduces the printed flow formulas (Q-less phi_A denominator,
// phi_E with the frozen-r increments) instead of the exact flows.
struct RNProblem {
    double energy = 0.995;
    double angmom = 4.6;
    double charge = 0.3;  // Q
    bool paper_literal = false;

    double metric_w(double r) const { return 1.0 - 2.0 / r + charge * charge / (r * r); }
    double horizon() const;  // outer horizon 1 + sqrt(1 - Q^2)

    double hamiltonian(const RNState& s) const;
    double sub_hamiltonian(char part, const RNState& s) const;

    RNState flow(char part, const RNState& s, double tau) const;

    // p_r >= 0 root of H(r0, theta0, p_r, p_theta0) = h_target (the bound-orbit
    // branch used for initial data); throws if no real root exists.
    double solve_p_r(double h_target, double r0, double theta0, double p_theta0) const;
};

// ordering lists sub-flows in application order; "EDCBA" applies phi_E first,
// i.e. the canonical chi = phi_A o phi_B o phi_C o phi_D o phi_E.
std::unique_ptr<BasicMap<RNState>> rn_basic_map(const RNProblem& problem,
                                                std::string ordering = "EDCBA");

}  // namespace procomp

#endif
