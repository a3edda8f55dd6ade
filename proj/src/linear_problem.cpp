#include "procomp/linear_problem.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "procomp/expm.hpp"
#include "procomp/rng.hpp"

namespace procomp {

LinearMatrixProblem LinearMatrixProblem::random_normal(int dim, std::uint64_t seed, int n_parts) {
    LinearMatrixProblem p;
    p.seed = seed;
    Rng rng(seed);
    for (int k = 0; k < n_parts; ++k) {
        Eigen::MatrixXd a(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) a(i, j) = rng.normal();
        p.parts.push_back(std::move(a));
    }
    return p;
}

Eigen::MatrixXd LinearMatrixProblem::sum() const {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(dim(), dim());
    for (const auto& a : parts) s += a;
    return s;
}

Eigen::MatrixXd LinearMatrixProblem::exact_at(double t) const { return expm(t * sum()); }

LinearMatrixProblem LinearMatrixProblem::merged_tail() const {
    LinearMatrixProblem p;
    p.seed = seed;
    p.parts.push_back(parts.at(0));
    Eigen::MatrixXd tail = Eigen::MatrixXd::Zero(dim(), dim());
    for (std::size_t i = 1; i < parts.size(); ++i) tail += parts[i];
    p.parts.push_back(std::move(tail));
    return p;
}

namespace {

class ExactLinearMap final : public BasicMap<Eigen::MatrixXd> {
  public:
    ExactLinearMap(const LinearMatrixProblem& problem, bool paper_literal)
        : problem_(problem), paper_literal_(paper_literal) {}

    Eigen::MatrixXd forward(const Eigen::MatrixXd& u, double h) const override {
        const auto& exps = factors(h);
        Eigen::MatrixXd r = u;
        for (const auto& e : exps) r = e * r;  // A_1 flow first
        return r;
    }

    Eigen::MatrixXd adjoint(const Eigen::MatrixXd& u, double h) const override {
        const auto& exps = factors(h);
        Eigen::MatrixXd r = u;
        for (auto it = exps.rbegin(); it != exps.rend(); ++it) r = *it * r;
        return r;
    }

    int flow_count() const override { return static_cast<int>(problem_.parts.size()); }

  private:
    // exponentials in application order of the forward map
    const std::vector<Eigen::MatrixXd>& factors(double h) const {
        std::lock_guard lock(mutex_);
        auto it = cache_.find(h);
        if (it != cache_.end()) return it->second;
        std::vector<Eigen::MatrixXd> exps;
        if (paper_literal_ && problem_.parts.size() == 3) {
            // printed composition e^{hA3} e^{hA1} e^{hA1}
            exps.push_back(expm(h * problem_.parts[0]));
            exps.push_back(expm(h * problem_.parts[0]));
            exps.push_back(expm(h * problem_.parts[2]));
        } else {
            for (const auto& a : problem_.parts) exps.push_back(expm(h * a));
        }
        return cache_.emplace(h, std::move(exps)).first->second;
    }

    const LinearMatrixProblem& problem_;
    bool paper_literal_;
    mutable std::mutex mutex_;
    mutable std::map<double, std::vector<Eigen::MatrixXd>> cache_;
};

class FirstOrderLinearMap final : public BasicMap<Eigen::MatrixXd> {
  public:
    explicit FirstOrderLinearMap(const LinearMatrixProblem& problem) : problem_(problem) {}

    Eigen::MatrixXd forward(const Eigen::MatrixXd& u, double h) const override {
        Eigen::MatrixXd r = u;
        for (const auto& a : problem_.parts) r += h * (a * r);  // (I + h A_i), A_1 first
        return r;
    }

    Eigen::MatrixXd adjoint(const Eigen::MatrixXd& u, double h) const override {
        const auto& lus = resolvents(h);
        Eigen::MatrixXd r = u;
        for (auto it = lus.rbegin(); it != lus.rend(); ++it) {
            r = (*it)->solve(r);  // (I - h A_n)^{-1} first
            if (!r.allFinite()) throw StepFailure("singular resolvent in first-order adjoint");
        }
        return r;
    }

    int flow_count() const override { return static_cast<int>(problem_.parts.size()); }

  private:
    using Lu = Eigen::PartialPivLU<Eigen::MatrixXd>;

    const std::vector<std::unique_ptr<Lu>>& resolvents(double h) const {
        std::lock_guard lock(mutex_);
        auto it = cache_.find(h);
        if (it != cache_.end()) return it->second;
        std::vector<std::unique_ptr<Lu>> lus;
        const int n = problem_.dim();
        for (const auto& a : problem_.parts)
            lus.push_back(std::make_unique<Lu>(Eigen::MatrixXd(Eigen::MatrixXd::Identity(n, n) - h * a)));
        return cache_.emplace(h, std::move(lus)).first->second;
    }

    const LinearMatrixProblem& problem_;
    mutable std::mutex mutex_;
    mutable std::map<double, std::vector<std::unique_ptr<Lu>>> cache_;
};

}  // namespace

std::unique_ptr<BasicMap<Eigen::MatrixXd>> linear_basic_map(LinearMapKind kind,
                                                            const LinearMatrixProblem& problem,
                                                            bool paper_literal) {
    if (kind == LinearMapKind::exact)
        return std::make_unique<ExactLinearMap>(problem, paper_literal);
    return std::make_unique<FirstOrderLinearMap>(problem);
}

}  // namespace procomp
