#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "diffeopt/discrete_curve.hpp"
#include "diffeopt/gram_operator.hpp"
#include "diffeopt/shape_functional.hpp"

namespace diffeopt {

struct LineSearchFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroGradient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// First-order update map turning tangent fields into curves.
/// `shift` displaces nodes in the ambient vector space. `shift_project`
/// additionally maps the displaced nodes back onto a constraint set through
/// the base curve, so R(0) returns the base curve exactly at any iterate.
class Retraction {
public:
    enum class Kind { Shift, ShiftProject };

    using ProjectFn =
        std::function<std::vector<Eigen::Vector2d>(const DiscreteCurve& base, std::vector<Eigen::Vector2d> displaced)>;
    using TangentFn = std::function<TangentField(const DiscreteCurve& base, const TangentField& field)>;

    static Retraction shift();
    /// Keeps each node's distance from the origin equal to the base curve's
    /// (radial re-normalization; the circle-constrained test retraction).
    static Retraction shift_project_radial();
    static Retraction shift_project(ProjectFn project, TangentFn tangent);

    Kind kind() const { return kind_; }

    /// R_c(xi); returns an unchecked curve (line searches probe invalid trials).
    DiscreteCurve apply(const DiscreteCurve& c, const TangentField& xi) const;

    /// Projection of an ambient field onto the tangent space of the retraction's
    /// constraint set at c (identity for `shift`).
    TangentField project_tangent(const DiscreteCurve& c, const TangentField& field) const;

private:
    explicit Retraction(Kind kind) : kind_(kind) {}
    Kind kind_;
    ProjectFn project_;
    TangentFn tangent_;
};

struct ArmijoParams {
    double alpha_hat = 1.0;
    double sigma = 1e-4;
    double rho = 0.5;
    int max_backtracks = 40;
    int max_iters = 500;
    double grad_tol = 1e-6;

    void validate() const;
};

enum class Termination { Converged, MaxIters, LineSearchFailure };

const char* termination_name(Termination t);

struct DescentTrace {
    std::vector<DiscreteCurve> iterates;  // K+1 curves
    std::vector<double> objectives;       // per iterate
    std::vector<double> grad_norms;       // per iterate (metric norm)
    std::vector<double> step_sizes;       // per accepted step (K entries)
    Termination termination = Termination::MaxIters;
};

/// Largest alpha in {alpha_hat * rho^m : 0 <= m <= max_backtracks} with
/// trial(alpha) <= f0 - sigma * alpha * grad_norm_sq. Throws LineSearchFailure.
double armijo_search(const std::function<double(double)>& trial, double f0, double grad_norm_sq,
                     const ArmijoParams& p);

struct ArmijoResult {
    double step = 0.0;
    DiscreteCurve next;
    double objective = 0.0;
};

ArmijoResult armijo_step(const ShapeFunctional& j, const DiscreteCurve& c, const TangentField& grad,
                         const GramOperator& g, const Retraction& r, const ArmijoParams& p);

DescentTrace steepest_descent(const ShapeFunctional& j, const DiscreteCurve& c0, const MetricConstructor& metric,
                              const Retraction& r, const ArmijoParams& p);

}  // namespace diffeopt
