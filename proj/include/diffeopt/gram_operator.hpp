#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "diffeopt/discrete_curve.hpp"

namespace diffeopt {

struct DegenerateCurve : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularMetric : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Symmetric positive-definite bilinear form on the discrete tangent space.
/// Dense kind: explicit 2N x 2N matrix (Cholesky-backed solves).
/// Spectral kind: per-Fourier-mode weights w_k >= 1 acting on the N-point DFT
/// of each field component.
class GramOperator {
public:
    enum class Kind { Dense, Spectral };

    static GramOperator dense(Eigen::MatrixXd matrix, const DiscreteCurve& base);
    static GramOperator spectral(Eigen::VectorXd mode_weights, const DiscreteCurve& base);
    static GramOperator identity(const DiscreteCurve& base);

    Kind kind() const { return kind_; }
    int n_nodes() const { return n_nodes_; }
    const Eigen::MatrixXd& dense_matrix() const;
    const Eigen::VectorXd& spectral_weights() const;

    /// g(h, k); computed in an exactly swap-symmetric way.
    double quad(const TangentField& h, const TangentField& k) const;
    double norm(const TangentField& h) const;

    /// Riesz representative: the field v with g(v, w) = <covector, w> for all w.
    TangentField solve(const Eigen::VectorXd& covector) const;

private:
    GramOperator() = default;
    Kind kind_ = Kind::Dense;
    int n_nodes_ = 0;
    Eigen::MatrixXd matrix_;
    std::shared_ptr<Eigen::LLT<Eigen::MatrixXd>> llt_;
    Eigen::VectorXd weights_;
};

using MetricConstructor = std::function<GramOperator(const DiscreteCurve&)>;

/// First-Sobolev (H^1) metric: g(h,k) = sum_i l_i (a0 h_i.k_i + a1 Dh_i.Dk_i)
/// with l_i the forward edge length and D the arclength forward difference.
GramOperator h1_gram(const DiscreteCurve& c, double a0, double a1);

/// Spectral H^s metric with mode weights (1 + k^2)^s on the folded DFT modes.
GramOperator spectral_hs_gram(const DiscreteCurve& c, double s);

/// Convenience alias for the weighted-L^2 metric (h1 with a1 = 0).
GramOperator l2_gram(const DiscreteCurve& c, double a0 = 1.0);

TangentField gradient_solve(const GramOperator& g, const Eigen::VectorXd& df);

/// Length of a discrete path of curves under a moving metric:
/// sum_j sqrt(g_{mid_j}(delta_j, delta_j)), metric assembled at segment midpoints.
double arc_length(const std::vector<DiscreteCurve>& path, const MetricConstructor& metric);

namespace detail {
/// Unnormalized forward DFT of a real sequence (direct summation; deterministic).
std::vector<std::complex<double>> dft_forward(const Eigen::VectorXd& x);
Eigen::VectorXd dft_inverse_real(const std::vector<std::complex<double>>& spectrum);
/// Folded mode index for bin j of an N-point transform: j <= N/2 ? j : j - N.
int folded_mode(int j, int n);
}  // namespace detail

}  // namespace diffeopt
