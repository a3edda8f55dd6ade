#include "procomp/expm.hpp"

#include <cmath>

namespace procomp {

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
    const int n = static_cast<int>(a.rows());
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);

    const double theta13 = 5.371920351148152;
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
    int squarings = 0;
    if (norm > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
    const Eigen::MatrixXd A = a / std::ldexp(1.0, squarings);

    const Eigen::MatrixXd A2 = A * A;
    const Eigen::MatrixXd A4 = A2 * A2;
    const Eigen::MatrixXd A6 = A2 * A4;
    const Eigen::MatrixXd U =
        A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 + b[3] * A2 +
             b[1] * I);
    const Eigen::MatrixXd V =
        A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;

    Eigen::MatrixXd r = (V - U).partialPivLu().solve(V + U);
    for (int i = 0; i < squarings; ++i) r = r * r;
    return r;
}

}  // namespace procomp
