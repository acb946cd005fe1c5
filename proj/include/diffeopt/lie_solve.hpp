#pragma once

#include <vector>

#include "diffeopt/matrix_group.hpp"

namespace diffeopt {

/// Which logarithmic derivative the group path solves:
/// Left:  g^{-1} dg/dt = v,   Right: dg/dt g^{-1} = v.
enum class LogSide { Left, Right };

/// Integrate an algebra path into a group path with a 4th-order two-exponential
/// commutator-free stepper (true matrix exponential at the Gauss nodes of each
/// step, so group membership is preserved structurally).
///
/// Throws AlgebraViolation if v leaves the algebra (projection residual > 1e-10
/// at sampled nodes) and StepTooCoarse if the endpoint membership residual
/// exceeds 1e-6.
GroupPath solve_logarithmic(const AlgebraPath& v, const MatrixGroupSpec& spec, int steps, LogSide side,
                            const Eigen::MatrixXd* initial_value = nullptr);

/// Pointwise inverse of a sampled group path; throws SingularMatrix.
GroupPath inverse_path(const GroupPath& g);

struct AdjointFlow {
    std::vector<double> times;
    std::vector<Eigen::MatrixXd> samples;  // S(t_j)
};

/// Solve dS/dt = [A(t), S(t)] through S(t) = G(t) S0 G(t)^{-1}, where G solves
/// the right logarithmic equation dG/dt G^{-1} = A with G(0) = I (the side for
/// which the conjugation formula satisfies the bracket ODE for every A).
AdjointFlow adjoint_flow(const AlgebraPath& a, const Eigen::MatrixXd& s0, const MatrixGroupSpec& spec, int steps);

}  // namespace diffeopt
