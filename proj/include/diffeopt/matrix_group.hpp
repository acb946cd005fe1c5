#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "diffeopt/polynomial.hpp"

namespace diffeopt {

struct AlgebraViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepTooCoarse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Desk-scale description of a matrix Lie group: a membership residual and the
/// projection onto its Lie algebra.
struct MatrixGroupSpec {
    int dim = 0;
    std::function<double(const Eigen::MatrixXd&)> membership_check;
    std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)> algebra_projection;
    std::string name;

    static MatrixGroupSpec special_orthogonal(int d);  // ||g^T g - I||_F
    static MatrixGroupSpec special_linear(int d);      // |det g - 1|
    static MatrixGroupSpec general_linear(int d);      // invertibility only

    Eigen::MatrixXd identity() const { return Eigen::MatrixXd::Identity(dim, dim); }
};

/// Smooth path [0,1] -> g in the Lie algebra.
struct AlgebraPath {
    int dim = 0;
    std::function<Eigen::MatrixXd(double)> value;

    Eigen::MatrixXd at(double t) const { return value(t); }

    static AlgebraPath constant(Eigen::MatrixXd v);
    /// v(t) = sum_k t^k coeffs[k].
    static AlgebraPath polynomial(std::vector<Eigen::MatrixXd> coeffs);
};

/// Sampled path in the group, (t_j, g_j) with membership residuals checked.
struct GroupPath {
    std::vector<double> times;
    std::vector<Eigen::MatrixXd> samples;
    MatrixGroupSpec spec;

    int steps() const { return static_cast<int>(samples.size()) - 1; }
    const Eigen::MatrixXd& at(int j) const { return samples[static_cast<std::size_t>(j)]; }
    const Eigen::MatrixXd& endpoint() const { return samples.back(); }
    double max_membership_residual() const;
};

inline Eigen::MatrixXd commutator(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return a * b - b * a;
}

// so(3) basis used in tests and the CLI examples.
Eigen::Matrix3d so3_generator_x();
Eigen::Matrix3d so3_generator_y();
Eigen::Matrix3d so3_generator_z();
Eigen::Matrix2d so2_generator();

}  // namespace diffeopt
