#include "procomp/lorentz.hpp"

#include <cmath>
#include <stdexcept>

namespace procomp {

namespace {

double cyl_radius(const Eigen::Vector3d& x) { return std::hypot(x[0], x[1]); }

}  // namespace

Eigen::Vector3d LorentzProblem::efield(const Eigen::Vector3d& x) const {
    const double rho = cyl_radius(x);
    if (rho <= 0.0) throw StepFailure("Lorentz field singularity: rho = 0");
    const double f = alpha_field / (rho * rho * rho);
    return {f * x[0], f * x[1], 0.0};
}

double LorentzProblem::cyclotron(const Eigen::Vector3d& x) const {
    return -q * cyl_radius(x) / m;  // B = rho e_z
}

double LorentzProblem::energy(const LorentzState& s) const {
    const double rho = cyl_radius(s.x);
    if (rho <= 0.0) throw StepFailure("Lorentz field singularity: rho = 0");
    return 0.5 * s.v.squaredNorm() + (q / m) * alpha_field / rho;
}

double LorentzProblem::angular_momentum(const LorentzState& s) const {
    const double rho = cyl_radius(s.x);
    return s.x[0] * s.v[1] - s.x[1] * s.v[0] + (q / m) * rho * rho * rho / 3.0;
}

LorentzState LorentzProblem::flow(char part, const LorentzState& s, double t) const {
    switch (part) {
        case 'A':
            return {s.x + t * s.v, s.v};
        case 'B':
            return {s.x, s.v + t * (q / m) * efield(s.x)};
        case 'C': {
            // rotation about e_z by t*omega0: v += sin(th) ez x v + (1-cos(th)) ez x (ez x v)
            const double th = t * cyclotron(s.x);
            const double sn = std::sin(th), cs = 1.0 - std::cos(th);
            const Eigen::Vector3d bv(-s.v[1], s.v[0], 0.0);
            const Eigen::Vector3d bbv(-s.v[0], -s.v[1], 0.0);
            return {s.x, s.v + sn * bv + cs * bbv};
        }
        default:
            throw std::invalid_argument("unknown Lorentz sub-flow: " + std::string(1, part));
    }
}

Eigen::Matrix<double, 6, 1> LorentzProblem::rhs(const LorentzState& s) const {
    Eigen::Matrix<double, 6, 1> f;
    f.head<3>() = s.v;
    const double w = cyclotron(s.x);
    const Eigen::Vector3d bv(-s.v[1], s.v[0], 0.0);  // e_z x v
    f.tail<3>() = (q / m) * efield(s.x) + w * bv;
    return f;
}

namespace {

class LorentzSplitMap final : public BasicMap<LorentzState> {
  public:
    LorentzSplitMap(const LorentzProblem& problem, std::string ordering)
        : problem_(problem), ordering_(std::move(ordering)) {
        if (ordering_.size() != 3) throw std::invalid_argument("Lorentz ordering needs 3 flows");
        for (char c : ordering_) problem_.flow(c, LorentzState{{1, 0, 0}, {0, 0, 0}}, 0.0);
    }

    LorentzState forward(const LorentzState& s, double h) const override {
        LorentzState y = s;
        for (char c : ordering_) y = problem_.flow(c, y, h);
        return y;
    }

    LorentzState adjoint(const LorentzState& s, double h) const override {
        LorentzState y = s;
        for (auto it = ordering_.rbegin(); it != ordering_.rend(); ++it)
            y = problem_.flow(*it, y, h);
        return y;
    }

    int flow_count() const override { return 3; }

  private:
    const LorentzProblem& problem_;
    std::string ordering_;
};

class LorentzEulerMap final : public BasicMap<LorentzState> {
  public:
    LorentzEulerMap(EulerKind kind, const LorentzProblem& problem)
        : kind_(kind), problem_(problem) {}

    LorentzState forward(const LorentzState& s, double h) const override {
        return kind_ == EulerKind::explicit_first ? explicit_step(s, h) : implicit_step(s, h);
    }

    LorentzState adjoint(const LorentzState& s, double h) const override {
        return kind_ == EulerKind::explicit_first ? implicit_step(s, h) : explicit_step(s, h);
    }

    int flow_count() const override { return 3; }  // one full-field evaluation

  private:
    using Vec6 = Eigen::Matrix<double, 6, 1>;

    static Vec6 pack(const LorentzState& s) {
        Vec6 y;
        y.head<3>() = s.x;
        y.tail<3>() = s.v;
        return y;
    }
    static LorentzState unpack(const Vec6& y) { return {y.head<3>(), y.tail<3>()}; }

    LorentzState explicit_step(const LorentzState& s, double h) const {
        return unpack(pack(s) + h * problem_.rhs(s));
    }

    // solve z = y + h f(z) by Newton with a finite-difference Jacobian
    LorentzState implicit_step(const LorentzState& s, double h) const {
        const Vec6 y = pack(s);
        Vec6 z = y + h * problem_.rhs(s);  // explicit predictor
        for (int it = 0; it < 50; ++it) {
            const Vec6 g = z - y - h * problem_.rhs(unpack(z));
            if (g.cwiseAbs().maxCoeff() <= 1e-13 * (1.0 + z.cwiseAbs().maxCoeff()))
                return unpack(z);
            Eigen::Matrix<double, 6, 6> J;
            const double fd = 1e-7;
            for (int j = 0; j < 6; ++j) {
                Vec6 zp = z;
                zp(j) += fd;
                J.col(j) = (zp - y - h * problem_.rhs(unpack(zp)) - g) / fd;
            }
            const Vec6 step = J.partialPivLu().solve(g);
            if (!step.allFinite()) throw StepFailure("implicit Euler: singular Newton system");
            z -= step;
        }
        throw StepFailure("implicit Euler: Newton did not converge in 50 iterations");
    }

    EulerKind kind_;
    const LorentzProblem& problem_;
};

}  // namespace

std::unique_ptr<BasicMap<LorentzState>> lorentz_basic_map(const LorentzProblem& problem,
                                                          std::string ordering) {
    return std::make_unique<LorentzSplitMap>(problem, std::move(ordering));
}

std::unique_ptr<BasicMap<LorentzState>> lorentz_euler_map(EulerKind kind,
                                                          const LorentzProblem& problem) {
    return std::make_unique<LorentzEulerMap>(kind, problem);
}

}  // namespace procomp
