#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "diffeopt/polynomial.hpp"

namespace diffeopt {

/// A smooth parametrization O `\subset` R^p -> R^q with a deterministic evaluation
/// handle. Maps built from polynomials keep their coefficients, so derivatives
/// of polynomial maps and of polynomial composites are exact; everything else
/// falls back to central finite differences.
class SmoothMap {
public:
    using EvalFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

    SmoothMap(int domain_dim, int codomain_dim, EvalFn eval, int deriv_order = 2);

    static SmoothMap polynomial(std::vector<MultiPoly> components);
    static SmoothMap coordinate(int ambient_dim, int axis);
    static SmoothMap identity(int dim);

    /// Univariate polynomial path t -> (p_1(t), ..., p_q(t)).
    static SmoothMap polynomial_path(std::vector<Poly1> components);

    int domain_dim() const { return domain_dim_; }
    int codomain_dim() const { return codomain_dim_; }
    int deriv_order() const { return deriv_order_; }

    Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;
    double scalar_at(const Eigen::VectorXd& x) const;  // codomain_dim == 1 convenience

    bool is_polynomial() const { return poly_.has_value(); }
    const std::vector<MultiPoly>& poly_components() const;

    /// Directional derivative of given order (1 or 2) at x along dir.
    /// Exact for polynomial maps, 5-point central differences (h = 1e-5) otherwise.
    Eigen::VectorXd directional_derivative(const Eigen::VectorXd& x, const Eigen::VectorXd& dir,
                                           int order = 1) const;

    /// Sampling box for invariant checks; defaults to [-1, 1]^p.
    const Eigen::VectorXd& domain_lo() const { return domain_lo_; }
    const Eigen::VectorXd& domain_hi() const { return domain_hi_; }
    SmoothMap with_domain(Eigen::VectorXd lo, Eigen::VectorXd hi) const;

    /// Restrict a map on R^(n) to the block [offset, offset+n) of R^(new_dim).
    SmoothMap lifted(int new_dim, int offset) const;

private:
    int domain_dim_;
    int codomain_dim_;
    int deriv_order_;
    EvalFn eval_;
    std::optional<std::vector<MultiPoly>> poly_;
    Eigen::VectorXd domain_lo_, domain_hi_;
};

}  // namespace diffeopt
