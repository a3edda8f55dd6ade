#include "procomp/reissner_nordstrom.hpp"

#include <cmath>
#include <stdexcept>

namespace procomp {

double RNProblem::horizon() const { return 1.0 + std::sqrt(1.0 - charge * charge); }

double RNProblem::hamiltonian(const RNState& s) const {
    const double w = metric_w(s.r);
    const double sn = std::sin(s.theta);
    return -energy * energy / (2.0 * w) + 0.5 * w * s.p_r * s.p_r +
           s.p_theta * s.p_theta / (2.0 * s.r * s.r) +
           angmom * angmom / (2.0 * s.r * s.r * sn * sn);
}

double RNProblem::sub_hamiltonian(char part, const RNState& s) const {
    const double sn = std::sin(s.theta);
    switch (part) {
        case 'A':
            return -energy * energy / (2.0 * metric_w(s.r)) +
                   angmom * angmom / (2.0 * s.r * s.r * sn * sn);
        case 'B':
            return 0.5 * s.p_r * s.p_r;
        case 'C':
            return -s.p_r * s.p_r / s.r;
        case 'D':
            return s.p_theta * s.p_theta / (2.0 * s.r * s.r);
        case 'E':
            return charge * charge * s.p_r * s.p_r / (2.0 * s.r * s.r);
        default:
            throw std::invalid_argument("unknown RN sub-flow: " + std::string(1, part));
    }
}

RNState RNProblem::flow(char part, const RNState& s, double tau) const {
    if (s.r <= 0.0) throw StepFailure("RN flow evaluated at r <= 0");
    RNState o = s;
    switch (part) {
        case 'A': {
            const double sn = std::sin(s.theta), cs = std::cos(s.theta);
            if (sn == 0.0) throw StepFailure("RN flow at sin(theta) = 0");
            const double l2 = angmom * angmom, e2 = energy * energy;
            double dpr;
            if (paper_literal) {
                dpr = l2 / (s.r * s.r * s.r * sn * sn) - e2 / ((s.r - 2.0) * (s.r - 2.0));
            } else {
                const double w = metric_w(s.r);
                dpr = l2 / (s.r * s.r * s.r * sn * sn) -
                      e2 * (1.0 / (s.r * s.r) - charge * charge / (s.r * s.r * s.r)) / (w * w);
            }
            o.p_r += tau * dpr;
            o.p_theta += tau * l2 * cs / (s.r * s.r * sn * sn * sn);
            return o;
        }
        case 'B':
            o.r += tau * s.p_r;
            if (o.r <= 0.0) throw StepFailure("RN drift crossed r = 0");
            return o;
        case 'C': {
            const double u = s.r * s.r - 3.0 * tau * s.p_r;
            if (u <= 0.0) throw StepFailure("RN phi_C crossed r = 0");
            o.r = std::cbrt(u * u / s.r);
            o.p_r = s.p_r * std::cbrt(u / (s.r * s.r));
            return o;
        }
        case 'D':
            o.p_r += tau * s.p_theta * s.p_theta / (s.r * s.r * s.r);
            o.theta += tau * s.p_theta / (s.r * s.r);
            return o;
        case 'E': {
            const double q2 = charge * charge;
            if (paper_literal) {
                o.r += tau * s.p_r * q2 / (s.r * s.r);
                o.p_r += tau * q2 * s.p_r * s.p_r / (s.r * s.r * s.r);
                if (o.r <= 0.0) throw StepFailure("RN phi_E crossed r = 0");
                return o;
            }
            // r/p_r is conserved: r(tau) = r0 sqrt(1 + 2 Q^2 p_r0 tau / r0^3)
            const double radicand = 1.0 + 2.0 * q2 * s.p_r * tau / (s.r * s.r * s.r);
            if (radicand <= 0.0) throw StepFailure("RN phi_E negative radicand");
            o.r = s.r * std::sqrt(radicand);
            o.p_r = s.p_r * o.r / s.r;
            return o;
        }
        default:
            throw std::invalid_argument("unknown RN sub-flow: " + std::string(1, part));
    }
}

double RNProblem::solve_p_r(double h_target, double r0, double theta0, double p_theta0) const {
    const double w = metric_w(r0);
    const double sn = std::sin(theta0);
    const double rest = -energy * energy / (2.0 * w) + p_theta0 * p_theta0 / (2.0 * r0 * r0) +
                        angmom * angmom / (2.0 * r0 * r0 * sn * sn);
    const double pr2 = 2.0 * (h_target - rest) / w;
    if (pr2 < 0.0)
        throw std::invalid_argument("no real p_r: H=" + std::to_string(h_target) +
                                    " unreachable at r0=" + std::to_string(r0));
    return std::sqrt(pr2);
}

namespace {

class RNSplitMap final : public BasicMap<RNState> {
  public:
    RNSplitMap(const RNProblem& problem, std::string ordering)
        : problem_(problem), ordering_(std::move(ordering)) {
        if (ordering_.size() != 5) throw std::invalid_argument("RN ordering needs 5 flows");
        for (char c : ordering_)
            if (std::string("ABCDE").find(c) == std::string::npos)
                throw std::invalid_argument("unknown RN sub-flow: " + std::string(1, c));
    }

    RNState forward(const RNState& s, double h) const override {
        RNState y = s;
        for (char c : ordering_) y = problem_.flow(c, y, h);
        return y;
    }

    RNState adjoint(const RNState& s, double h) const override {
        RNState y = s;
        for (auto it = ordering_.rbegin(); it != ordering_.rend(); ++it)
            y = problem_.flow(*it, y, h);
        return y;
    }

    int flow_count() const override { return 5; }

  private:
    const RNProblem& problem_;
    std::string ordering_;
};

}  // namespace

std::unique_ptr<BasicMap<RNState>> rn_basic_map(const RNProblem& problem, std::string ordering) {
    return std::make_unique<RNSplitMap>(problem, std::move(ordering));
}

}  // namespace procomp
