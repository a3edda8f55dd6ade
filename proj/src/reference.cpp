#include "procomp/reference.hpp"

#include <algorithm>

namespace procomp {

double state_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    const double scale = 1.0 + std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    return (a - b).cwiseAbs().maxCoeff() / scale;
}

double state_distance(const LorentzState& a, const LorentzState& b) {
    const double num = std::max((a.x - b.x).cwiseAbs().maxCoeff(),
                                (a.v - b.v).cwiseAbs().maxCoeff());
    const double scale = 1.0 + std::max({a.x.cwiseAbs().maxCoeff(), a.v.cwiseAbs().maxCoeff(),
                                         b.x.cwiseAbs().maxCoeff(), b.v.cwiseAbs().maxCoeff()});
    return num / scale;
}

double state_distance(const RNState& a, const RNState& b) {
    const double num = std::max({std::abs(a.r - b.r), std::abs(a.theta - b.theta),
                                 std::abs(a.p_r - b.p_r), std::abs(a.p_theta - b.p_theta)});
    const double scale = 1.0 + std::max({std::abs(a.r), std::abs(b.r), std::abs(a.p_theta),
                                         std::abs(b.p_theta)});
    return num / scale;
}

double position_error(const LorentzState& a, const LorentzState& b) {
    return (a.x - b.x).cwiseAbs().maxCoeff();
}

double position_error(const RNState& a, const RNState& b) {
    return std::max(std::abs(a.r - b.r), std::abs(a.theta - b.theta));
}

}  // namespace procomp
