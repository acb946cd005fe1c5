#include "diffeopt/matrix_exp.hpp"

#include <cmath>
#include <stdexcept>

namespace diffeopt {

namespace {

constexpr double kPade13Theta = 5.371920351148152;

const double kPade13Coeffs[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                670442572800.0,      33522128640.0,       1323241920.0,
                                40840800.0,          960960.0,            16380.0,
                                182.0,               1.0};

}  // namespace

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix must be square");
    const int n = static_cast<int>(a.rows());
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    if (norm1 == 0.0) return Eigen::MatrixXd::Identity(n, n);

    int squarings = 0;
    if (norm1 > kPade13Theta) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / kPade13Theta)));
    }
    const Eigen::MatrixXd as = a / std::pow(2.0, squarings);

    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd a2 = as * as;
    const Eigen::MatrixXd a4 = a2 * a2;
    const Eigen::MatrixXd a6 = a4 * a2;
    const double* b = kPade13Coeffs;

    const Eigen::MatrixXd u =
        as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    const Eigen::MatrixXd v =
        a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

    Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < squarings; ++k) r = r * r;
    return r;
}

Eigen::MatrixXd logm_near_identity(const Eigen::MatrixXd& g) {
    if (g.rows() != g.cols()) throw std::invalid_argument("logm_near_identity: matrix must be square");
    const int n = static_cast<int>(g.rows());
    const Eigen::MatrixXd x = g - Eigen::MatrixXd::Identity(n, n);
    const double nx = x.norm();
    if (nx >= 0.9) throw std::invalid_argument("logm_near_identity: matrix too far from the identity");
    Eigen::MatrixXd term = x;
    Eigen::MatrixXd acc = x;
    for (int k = 2; k <= 80; ++k) {
        term = term * x;
        acc += (k % 2 == 0 ? -1.0 : 1.0) / static_cast<double>(k) * term;
        if (term.norm() < 1e-18) break;
    }
    return acc;
}

}  // namespace diffeopt
