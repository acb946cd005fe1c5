#include "diffeopt/descent.hpp"

#include <cmath>
#include <memory>
#include <limits>

namespace diffeopt {

Retraction Retraction::shift() { return Retraction(Kind::Shift); }

Retraction Retraction::shift_project_radial() {
    ProjectFn project = [](const DiscreteCurve& base, std::vector<Eigen::Vector2d> displaced) {
        for (int i = 0; i < base.size(); ++i) {
            auto& p = displaced[static_cast<std::size_t>(i)];
            const double r = p.norm();
            if (r > 0.0) p *= base.node(i).norm() / r;
        }
        return displaced;
    };
    TangentFn tangent = [](const DiscreteCurve& base, const TangentField& field) {
        TangentField out = field;
        for (int i = 0; i < base.size(); ++i) {
            const Eigen::Vector2d x = base.node(i);
            const double r2 = x.squaredNorm();
            if (r2 > 0.0) {
                auto& v = out.values[static_cast<std::size_t>(i)];
                v -= (x.dot(v) / r2) * x;
            }
        }
        return out;
    };
    return shift_project(std::move(project), std::move(tangent));
}

Retraction Retraction::shift_project(ProjectFn project, TangentFn tangent) {
    Retraction r(Kind::ShiftProject);
    r.project_ = std::move(project);
    r.tangent_ = std::move(tangent);
    return r;
}

DiscreteCurve Retraction::apply(const DiscreteCurve& c, const TangentField& xi) const {
    if (xi.size() != c.size()) throw std::invalid_argument("Retraction::apply: field size mismatch");
    bool zero = true;
    for (const auto& v : xi.values)
        if (v.x() != 0.0 || v.y() != 0.0) {
            zero = false;
            break;
        }
    if (zero) return DiscreteCurve::unchecked(c.nodes());  // R(0) = base, exactly
    std::vector<Eigen::Vector2d> nodes(static_cast<std::size_t>(c.size()));
    for (int i = 0; i < c.size(); ++i)
        nodes[static_cast<std::size_t>(i)] = c.node(i) + xi.values[static_cast<std::size_t>(i)];
    if (kind_ == Kind::ShiftProject) nodes = project_(c, std::move(nodes));
    return DiscreteCurve::unchecked(std::move(nodes));
}

TangentField Retraction::project_tangent(const DiscreteCurve& c, const TangentField& field) const {
    if (kind_ == Kind::Shift) return field;
    return tangent_(c, field);
}

void ArmijoParams::validate() const {
    if (alpha_hat <= 0.0) throw std::invalid_argument("ArmijoParams: alpha_hat must be positive");
    if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("ArmijoParams: sigma must lie in (0,1)");
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("ArmijoParams: rho must lie in (0,1)");
    if (max_backtracks < 0) throw std::invalid_argument("ArmijoParams: max_backtracks must be >= 0");
    if (max_iters <= 0) throw std::invalid_argument("ArmijoParams: max_iters must be positive");
    if (grad_tol <= 0.0) throw std::invalid_argument("ArmijoParams: grad_tol must be positive");
}

const char* termination_name(Termination t) {
    switch (t) {
        case Termination::Converged:
            return "converged";
        case Termination::MaxIters:
            return "max_iters";
        case Termination::LineSearchFailure:
            return "line_search_failure";
    }
    return "unknown";
}

double armijo_search(const std::function<double(double)>& trial, double f0, double grad_norm_sq,
                     const ArmijoParams& p) {
    p.validate();
    double alpha = p.alpha_hat;
    for (int m = 0; m <= p.max_backtracks; ++m) {
        const double f_trial = trial(alpha);
        if (f_trial <= f0 - p.sigma * alpha * grad_norm_sq) return alpha;
        alpha *= p.rho;
    }
    throw LineSearchFailure("armijo_search: no step on the geometric grid satisfies the Armijo condition");
}

ArmijoResult armijo_step(const ShapeFunctional& j, const DiscreteCurve& c, const TangentField& grad,
                         const GramOperator& g, const Retraction& r, const ArmijoParams& p) {
    const double grad_norm_sq = g.quad(grad, grad);
    if (std::sqrt(grad_norm_sq) <= 1e-15) throw ZeroGradient("armijo_step: gradient is numerically zero");
    const double f0 = j.eval(c);
    auto trial_value = [&](double alpha) {
        const DiscreteCurve trial = r.apply(c, grad.scaled(-alpha));
        if (!trial.validity_ok()) return std::numeric_limits<double>::infinity();
        const double f = j.eval(trial);
        return std::isfinite(f) ? f : std::numeric_limits<double>::infinity();
    };
    const double alpha = armijo_search(trial_value, f0, grad_norm_sq, p);
    ArmijoResult out{alpha, r.apply(c, grad.scaled(-alpha)), 0.0};
    out.objective = j.eval(out.next);
    return out;
}

DescentTrace steepest_descent(const ShapeFunctional& j, const DiscreteCurve& c0, const MetricConstructor& metric,
                              const Retraction& r, const ArmijoParams& p) {
    p.validate();
    DescentTrace trace;
    DiscreteCurve current = c0;
    double f_current = j.eval(current);
    if (!std::isfinite(f_current)) throw NonFiniteObjective("steepest_descent: objective not finite at c0");

    for (int iter = 0; iter <= p.max_iters; ++iter) {
        const GramOperator g = metric(current);
        const Eigen::VectorXd df = shape_differential(j, current);
        const TangentField grad = gradient_solve(g, df);
        const double grad_norm = g.norm(grad);

        trace.iterates.push_back(current);
        trace.objectives.push_back(f_current);
        trace.grad_norms.push_back(grad_norm);

        if (grad_norm <= p.grad_tol) {
            trace.termination = Termination::Converged;
            return trace;
        }
        if (iter == p.max_iters) {
            trace.termination = Termination::MaxIters;
            return trace;
        }
        try {
            ArmijoResult step = armijo_step(j, current, grad, g, r, p);
            trace.step_sizes.push_back(step.step);
            current = std::move(step.next);
            f_current = step.objective;
        } catch (const LineSearchFailure&) {
            trace.termination = Termination::LineSearchFailure;
            return trace;
        }
    }
    trace.termination = Termination::MaxIters;
    return trace;
}

}  // namespace diffeopt
