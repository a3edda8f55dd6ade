#ifndef PROCOMP_EXPM_HPP
#define PROCOMP_EXPM_HPP

#include <Eigen/Dense>

namespace procomp {

// Matrix exponential by scaling and squaring with the degree-13 Pade
// approximant. Relative accuracy ~1e-14 for moderate norms (checked in the
// tests against half-step squaring on random 50x50 matrices).
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

}  // namespace procomp

#endif
