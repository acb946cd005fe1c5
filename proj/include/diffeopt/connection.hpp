#pragma once

#include <functional>
#include <vector>

#include "diffeopt/lie_solve.hpp"
#include "diffeopt/matrix_group.hpp"

namespace diffeopt {

struct NotALoop : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotFlat : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Algebra-valued 1-form theta(x)(u) on R^m, linear in the direction u,
/// describing a connection on the trivial bundle R^m x G.
struct ConnectionForm {
    int base_dim = 0;
    int group_dim = 0;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd& x, const Eigen::VectorXd& u)> theta;

    Eigen::MatrixXd at(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const { return theta(x, u); }

    static ConnectionForm zero(int base_dim, int group_dim);
    /// theta = sum_i coeffs[i] dx_i with constant matrices.
    static ConnectionForm constant(std::vector<Eigen::MatrixXd> coeffs);
    /// Maurer-Cartan pullback df.f^{-1} of a smooth group-valued map
    /// (directional derivative by central differences, h = 1e-5).
    static ConnectionForm maurer_cartan_pullback(int base_dim,
                                                 std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> f);
    /// Exact Maurer-Cartan form of f(x, y) = exp(x A) exp(y B) on R^2.
    static ConnectionForm mc_exp_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
};

/// Curvature of theta at x on the direction pair (u, w):
/// Omega(u, w) = d theta(u, w) - [theta(u), theta(w)]
/// with d theta by central finite differences (h = 1e-5). The bracket
/// convention [alpha,beta](u,w) = [alpha(u),beta(w)] - [alpha(w),beta(u)]
/// makes this d theta - (1/2)[theta,theta].
Eigen::MatrixXd curvature(const ConnectionForm& theta, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                          const Eigen::VectorXd& w);

/// Smooth path in the base R^m with a derivative handle.
struct BasePath {
    int dim = 0;
    std::function<Eigen::VectorXd(double)> value;
    std::function<Eigen::VectorXd(double)> derivative;

    Eigen::VectorXd at(double t) const { return value(t); }
    Eigen::VectorXd velocity(double t) const { return derivative(t); }

    /// Closed or open polyline through the given vertices, uniform parameter
    /// per side on [0, 1].
    static BasePath polyline(std::vector<Eigen::VectorXd> vertices);
    /// Concatenation of the loop with its own reversal (both on half time).
    static BasePath concat_with_reverse(const BasePath& gamma);
};

/// Horizontal lift of gamma with initial group element g0: the identity-based
/// left-logarithmic solution of v(t) = -theta(gamma(t))(gamma'(t)),
/// right-composed with g0 (so lifting with g0 h right-multiplies the lift by h).
GroupPath horizontal_lift(const BasePath& gamma, const ConnectionForm& theta, const Eigen::MatrixXd& g0,
                          const MatrixGroupSpec& spec, int steps);

/// Holonomy of a closed base path: the lift's group factor at t = 1 with g0 = I.
/// Throws NotALoop unless |gamma(0) - gamma(1)| <= 1e-12.
Eigen::MatrixXd holonomy(const BasePath& loop, const ConnectionForm& theta, const MatrixGroupSpec& spec, int steps);

struct FlatPrimitive {
    int grid_steps = 0;  // grid has (grid_steps+1)^2 nodes
    Eigen::Vector2d lo, hi;
    std::vector<std::vector<Eigen::MatrixXd>> f;  // f[ix][iy]
    double max_cell_residual = 0.0;               // two edge-order integrations per cell

    const Eigen::MatrixXd& at(int ix, int iy) const {
        return f[static_cast<std::size_t>(ix)][static_cast<std::size_t>(iy)];
    }
    Eigen::Vector2d grid_point(int ix, int iy) const;
};

/// Integrate df.f^{-1} = alpha on an axis-aligned rectangle from the base
/// corner, for a flat alpha (curvature residual <= 1e-6 on the sampled grid;
/// otherwise throws NotFlat). Bottom row first, then each column upward.
FlatPrimitive solve_flat_primitive(const ConnectionForm& alpha, const MatrixGroupSpec& spec, int grid_steps,
                                   const Eigen::Vector2d& lo = {0.0, 0.0}, const Eigen::Vector2d& hi = {1.0, 1.0});

}  // namespace diffeopt
