#include "diffeopt/lie_solve.hpp"

#include <cmath>
#include <memory>

#include <Eigen/LU>

#include "diffeopt/matrix_exp.hpp"

namespace diffeopt {

namespace {

constexpr double kAlgebraTol = 1e-10;
constexpr double kEndpointMembershipTol = 1e-6;

// Gauss-Legendre nodes and combination weights of the 4th-order
// commutator-free stepper (Celledoni-Marthinsen-Owren).
const double kGaussLo = 0.5 - std::sqrt(3.0) / 6.0;
const double kGaussHi = 0.5 + std::sqrt(3.0) / 6.0;
const double kCfA = 0.25 + std::sqrt(3.0) / 6.0;
const double kCfB = 0.25 - std::sqrt(3.0) / 6.0;

Eigen::MatrixXd algebra_sample(const AlgebraPath& v, const MatrixGroupSpec& spec, double t) {
    Eigen::MatrixXd m = v.at(t);
    if (m.rows() != spec.dim || m.cols() != spec.dim)
        throw std::invalid_argument("solve_logarithmic: algebra path dimension mismatch");
    if ((spec.algebra_projection(m) - m).norm() > kAlgebraTol)
        throw AlgebraViolation("solve_logarithmic: v(t) leaves the Lie algebra at t = " + std::to_string(t));
    return m;
}

}  // namespace

GroupPath solve_logarithmic(const AlgebraPath& v, const MatrixGroupSpec& spec, int steps, LogSide side,
                            const Eigen::MatrixXd* initial_value) {
    if (steps < 8) throw std::invalid_argument("solve_logarithmic: need at least 8 steps");
    const Eigen::MatrixXd g0 = initial_value ? *initial_value : spec.identity();
    if (g0.rows() != spec.dim || g0.cols() != spec.dim)
        throw std::invalid_argument("solve_logarithmic: initial value dimension mismatch");

    GroupPath path;
    path.spec = spec;
    path.times.reserve(static_cast<std::size_t>(steps) + 1);
    path.samples.reserve(static_cast<std::size_t>(steps) + 1);
    path.times.push_back(0.0);
    path.samples.push_back(g0);

    const double h = 1.0 / static_cast<double>(steps);
    Eigen::MatrixXd g = g0;
    for (int j = 0; j < steps; ++j) {
        const double t = h * static_cast<double>(j);
        const Eigen::MatrixXd a1 = algebra_sample(v, spec, t + kGaussLo * h);
        const Eigen::MatrixXd a2 = algebra_sample(v, spec, t + kGaussHi * h);
        // e1 weights the early Gauss node; it is the first-applied factor.
        const Eigen::MatrixXd e1 = expm(h * (kCfA * a1 + kCfB * a2));
        const Eigen::MatrixXd e2 = expm(h * (kCfB * a1 + kCfA * a2));
        if (side == LogSide::Right) {
            g = (e2 * e1 * g).eval();
        } else {
            g = (g * e1 * e2).eval();
        }
        path.times.push_back(h * static_cast<double>(j + 1));
        path.samples.push_back(g);
    }
    if (spec.membership_check(path.samples.back()) > kEndpointMembershipTol)
        throw StepTooCoarse("solve_logarithmic: endpoint membership residual exceeds 1e-6");
    return path;
}

GroupPath inverse_path(const GroupPath& g) {
    GroupPath out;
    out.spec = g.spec;
    out.times = g.times;
    out.samples.reserve(g.samples.size());
    for (const auto& m : g.samples) {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
        if (!lu.isInvertible()) throw SingularMatrix("inverse_path: sample matrix is singular");
        out.samples.push_back(lu.inverse());
    }
    return out;
}

AdjointFlow adjoint_flow(const AlgebraPath& a, const Eigen::MatrixXd& s0, const MatrixGroupSpec& spec, int steps) {
    if ((spec.algebra_projection(s0) - s0).norm() > kAlgebraTol)
        throw AlgebraViolation("adjoint_flow: S0 is not in the Lie algebra");
    const GroupPath g = solve_logarithmic(a, spec, steps, LogSide::Right);
    AdjointFlow flow;
    flow.times = g.times;
    flow.samples.reserve(g.samples.size());
    for (const auto& gj : g.samples) {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(gj);
        if (!lu.isInvertible()) throw SingularMatrix("adjoint_flow: group sample is singular");
        flow.samples.push_back(gj * s0 * lu.inverse());
    }
    return flow;
}

}  // namespace diffeopt
