#include "procomp/lie_basis.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace procomp {

double KernelSeries::k(int n, int l) const {
    require_grade_supported(n);
    const auto& v = coeffs[n];
    if (l < 1 || l > static_cast<int>(v.size()))
        throw std::invalid_argument("KernelSeries: no element (" + std::to_string(n) + "," +
                                    std::to_string(l) + ")");
    return v[l - 1];
}

// Per-grade projection data: word-expansion matrix of the basis and the fully
// pivoted LU of its normal equations.
struct LieBasis::GradeData {
    Eigen::MatrixXd expansion;  // (#words of grade n) x dim(n)
    Eigen::FullPivLU<Eigen::MatrixXd> normal_lu;
};

LieBasis::LieBasis() : grade_data_(kMaxGrade + 1) {
    auto Y = [](int k) { return GradedPolynomial::generator(k); };
    auto& E = basis_;

    E[1] = {Y(1)};
    E[2] = {Y(2)};
    E[3] = {Y(3), commutator(Y(1), Y(2))};
    E[4] = {Y(4), commutator(Y(1), Y(3)), commutator(Y(1), E[3][1])};
    E[5] = {Y(5),
            commutator(Y(1), Y(4)),
            commutator(Y(1), E[4][1]),
            commutator(Y(1), E[4][2]),
            commutator(Y(2), Y(3)),
            commutator(Y(2), E[3][1])};
    E[6] = {Y(6), commutator(Y(1), Y(5))};
    for (int i = 0; i <= 4; ++i) E[6].push_back(commutator(Y(1), E[5][1 + i]));
    E[6].push_back(commutator(Y(2), Y(4)));
    E[6].push_back(commutator(Y(2), E[4][1]));
    E[7] = {Y(7), commutator(Y(1), Y(6))};
    for (int j = 0; j <= 7; ++j) E[7].push_back(commutator(Y(1), E[6][1 + j]));
    E[7].push_back(commutator(Y(2), Y(5)));
    for (int k = 0; k <= 4; ++k) E[7].push_back(commutator(Y(2), E[5][1 + k]));
    E[7].push_back(commutator(Y(3), Y(4)));
    E[7].push_back(commutator(Y(3), E[4][1]));

    static constexpr int expected_dim[kMaxGrade + 1] = {0, 1, 1, 2, 3, 6, 9, 18};
    const WordTable& table = WordTable::instance();
    for (int n = 1; n <= kMaxGrade; ++n) {
        if (static_cast<int>(E[n].size()) != expected_dim[n])
            throw std::logic_error("basis dimension mismatch at grade " + std::to_string(n));
        const int rows = table.grade_size(n);
        const int cols = expected_dim[n];
        Eigen::MatrixXd M(rows, cols);
        for (int j = 0; j < cols; ++j)
            for (int r = 0; r < rows; ++r)
                M(r, j) = E[n][j].coeff(table.grade_begin(n) + r);
        grade_data_[n].expansion = M;
        grade_data_[n].normal_lu.compute(M.transpose() * M);
        if (grade_data_[n].normal_lu.rank() != cols)
            throw std::logic_error("basis expansion rank deficient at grade " +
                                   std::to_string(n));
    }
}

const LieBasis& LieBasis::instance() {
    static const LieBasis basis;
    return basis;
}

int LieBasis::dimension(int grade) const {
    require_grade_supported(grade);
    return static_cast<int>(basis_[grade].size());
}

const GradedPolynomial& LieBasis::expansion(int grade, int index) const {
    require_grade_supported(grade);
    if (index < 1 || index > dimension(grade))
        throw std::invalid_argument("no basis element E_{" + std::to_string(grade) + "," +
                                    std::to_string(index) + "}");
    return basis_[grade][index - 1];
}

KernelSeries LieBasis::project(const GradedPolynomial& logp) const {
    if (std::abs(logp.unit_coeff()) >= 1e-300)
        throw std::invalid_argument("project: input must have zero unit-word coefficient");
    const WordTable& table = WordTable::instance();
    KernelSeries out;
    out.residual = 0.0;
    for (int n = 1; n <= kMaxGrade; ++n) {
        const int rows = table.grade_size(n);
        Eigen::VectorXd v(rows);
        for (int r = 0; r < rows; ++r) v(r) = logp.coeff(table.grade_begin(n) + r);
        const auto& gd = grade_data_[n];
        Eigen::VectorXd c = gd.normal_lu.solve(gd.expansion.transpose() * v);
        const double rem = (gd.expansion * c - v).norm();
        out.residual = std::max(out.residual, rem / (1.0 + v.norm()));
        out.coeffs[n].assign(c.data(), c.data() + c.size());
    }
    return out;
}

GradedPolynomial LieBasis::combine(const KernelSeries& k) const {
    GradedPolynomial acc;
    for (int n = 1; n <= kMaxGrade; ++n)
        for (int j = 1; j <= dimension(n); ++j)
            if (static_cast<int>(k.coeffs[n].size()) >= j)
                acc += expansion(n, j) * k.coeffs[n][j - 1];
    return acc;
}

}  // namespace procomp
