#ifndef PROCOMP_LORENTZ_HPP
#define PROCOMP_LORENTZ_HPP

#include <Eigen/Dense>
#include <memory>
#include <string>

#include "procomp/composition.hpp"
#include "procomp/linear_problem.hpp"

namespace procomp {

struct LorentzState {
    Eigen::Vector3d x;
    Eigen::Vector3d v;
};

// Charged particle in the static fields
//   E(x) = (alpha/rho^3) (x, y, 0),   B(x) = rho e_z,   rho = sqrt(x^2 + y^2)
// (both potentials are written in cylindrical coordinates, so the field
// strength uses the cylindrical radius rho, not |x|). The exact invariants
// carry the q/m factor of the potentials:
//   H = |v|^2/2 + (q/m) alpha/rho,   L = (x v_y - y v_x) + (q/m) rho^3/3.
struct LorentzProblem {
    double q = -1.0;
    double m = 1.0;
    double alpha_field = 0.07;

    Eigen::Vector3d efield(const Eigen::Vector3d& x) const;
    double cyclotron(const Eigen::Vector3d& x) const;  // omega = -q B / m, B = rho

    double energy(const LorentzState& s) const;
    double angular_momentum(const LorentzState& s) const;

    // exact sub-flows: A drift, B electric kick, C magnetic rotation
    LorentzState flow(char part, const LorentzState& s, double t) const;

    // full right-hand side (for the Euler basic maps)
    Eigen::Matrix<double, 6, 1> rhs(const LorentzState& s) const;
};

// ordering lists the sub-flows in application order, e.g. "CBA" applies the
// magnetic rotation first (the composition phi_A o phi_B o phi_C of the
// canonical Lie-Trotter map).
std::unique_ptr<BasicMap<LorentzState>> lorentz_basic_map(const LorentzProblem& problem,
                                                          std::string ordering = "CBA");

// chi = explicit Euler on the full field, chi* = implicit Euler (Newton with
// relative tolerance 1e-13); implicit_first swaps the two roles.
enum class EulerKind { explicit_first, implicit_first };
std::unique_ptr<BasicMap<LorentzState>> lorentz_euler_map(EulerKind kind,
                                                          const LorentzProblem& problem);

}  // namespace procomp

#endif
