#include "diffeopt/matrix_group.hpp"

#include <cmath>
#include <memory>

namespace diffeopt {

MatrixGroupSpec MatrixGroupSpec::special_orthogonal(int d) {
    MatrixGroupSpec s;
    s.dim = d;
    s.name = "SO(" + std::to_string(d) + ")";
    s.membership_check = [d](const Eigen::MatrixXd& g) {
        return (g.transpose() * g - Eigen::MatrixXd::Identity(d, d)).norm();
    };
    s.algebra_projection = [](const Eigen::MatrixXd& v) -> Eigen::MatrixXd {
        return 0.5 * (v - v.transpose());
    };
    return s;
}

MatrixGroupSpec MatrixGroupSpec::special_linear(int d) {
    MatrixGroupSpec s;
    s.dim = d;
    s.name = "SL(" + std::to_string(d) + ")";
    s.membership_check = [](const Eigen::MatrixXd& g) { return std::abs(g.determinant() - 1.0); };
    s.algebra_projection = [d](const Eigen::MatrixXd& v) {
        return (v - (v.trace() / static_cast<double>(d)) * Eigen::MatrixXd::Identity(d, d)).eval();
    };
    return s;
}

MatrixGroupSpec MatrixGroupSpec::general_linear(int d) {
    MatrixGroupSpec s;
    s.dim = d;
    s.name = "GL(" + std::to_string(d) + ")";
    s.membership_check = [](const Eigen::MatrixXd& g) {
        if (!g.allFinite()) return 1.0;
        return g.fullPivLu().isInvertible() ? 0.0 : 1.0;
    };
    s.algebra_projection = [](const Eigen::MatrixXd& v) { return v; };
    return s;
}

AlgebraPath AlgebraPath::constant(Eigen::MatrixXd v) {
    AlgebraPath p;
    p.dim = static_cast<int>(v.rows());
    p.value = [m = std::move(v)](double) { return m; };
    return p;
}

AlgebraPath AlgebraPath::polynomial(std::vector<Eigen::MatrixXd> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("AlgebraPath::polynomial: no coefficients");
    AlgebraPath p;
    p.dim = static_cast<int>(coeffs.front().rows());
    p.value = [cs = std::move(coeffs)](double t) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(cs.front().rows(), cs.front().cols());
        double tk = 1.0;
        for (const auto& c : cs) {
            acc += tk * c;
            tk *= t;
        }
        return acc;
    };
    return p;
}

double GroupPath::max_membership_residual() const {
    double r = 0.0;
    for (const auto& g : samples) r = std::max(r, spec.membership_check(g));
    return r;
}

Eigen::Matrix3d so3_generator_x() {
    Eigen::Matrix3d m;
    m << 0, 0, 0, 0, 0, -1, 0, 1, 0;
    return m;
}

Eigen::Matrix3d so3_generator_y() {
    Eigen::Matrix3d m;
    m << 0, 0, 1, 0, 0, 0, -1, 0, 0;
    return m;
}

Eigen::Matrix3d so3_generator_z() {
    Eigen::Matrix3d m;
    m << 0, -1, 0, 1, 0, 0, 0, 0, 0;
    return m;
}

Eigen::Matrix2d so2_generator() {
    Eigen::Matrix2d m;
    m << 0, -1, 1, 0;
    return m;
}

}  // namespace diffeopt
