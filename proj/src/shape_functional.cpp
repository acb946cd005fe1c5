#include "diffeopt/shape_functional.hpp"

#include <cmath>
#include <limits>

namespace diffeopt {

ShapeFunctional ShapeFunctional::length() { return ShapeFunctional(Kind::Length); }

ShapeFunctional ShapeFunctional::enclosed_area() { return ShapeFunctional(Kind::EnclosedArea); }

ShapeFunctional ShapeFunctional::target_match(DiscreteCurve target) {
    ShapeFunctional j(Kind::TargetMatch);
    j.target_ = std::move(target);
    return j;
}

double ShapeFunctional::eval(const DiscreteCurve& c) const {
    switch (kind_) {
        case Kind::Length:
            return c.perimeter();
        case Kind::EnclosedArea:
            return c.signed_area();
        case Kind::TargetMatch: {
            const DiscreteCurve& t = *target_;
            if (c.size() != t.size())
                throw std::invalid_argument("ShapeFunctional: curve and target node counts differ");
            double best = std::numeric_limits<double>::infinity();
            for (int m = 0; m < c.size(); ++m) {
                double acc = 0.0;
                for (int i = 0; i < c.size(); ++i) acc += (c.node_cyclic(i + m) - t.node(i)).squaredNorm();
                best = std::min(best, 0.5 * acc);
            }
            return best;
        }
    }
    return 0.0;
}

int ShapeFunctional::best_shift(const DiscreteCurve& c) const {
    if (kind_ != Kind::TargetMatch) throw std::logic_error("ShapeFunctional::best_shift: not a target match");
    const DiscreteCurve& t = *target_;
    double best = std::numeric_limits<double>::infinity();
    int best_m = 0;
    for (int m = 0; m < c.size(); ++m) {
        double acc = 0.0;
        for (int i = 0; i < c.size(); ++i) acc += (c.node_cyclic(i + m) - t.node(i)).squaredNorm();
        if (acc < best) {
            best = acc;
            best_m = m;
        }
    }
    return best_m;
}

Eigen::VectorXd shape_differential(const ShapeFunctional& j, const DiscreteCurve& c) {
    if (!std::isfinite(j.eval(c))) throw NonFiniteObjective("shape_differential: objective not finite at c");
    const int n = c.size();
    Eigen::VectorXd d = Eigen::VectorXd::Zero(2 * n);
    switch (j.kind()) {
        case ShapeFunctional::Kind::Length: {
            for (int i = 0; i < n; ++i) {
                const Eigen::Vector2d u_prev = (c.node_cyclic(i) - c.node_cyclic(i - 1)).normalized();
                const Eigen::Vector2d u_next = (c.node_cyclic(i + 1) - c.node_cyclic(i)).normalized();
                d.segment<2>(2 * i) = u_prev - u_next;
            }
            break;
        }
        case ShapeFunctional::Kind::EnclosedArea: {
            for (int i = 0; i < n; ++i) {
                const Eigen::Vector2d& prev = c.node_cyclic(i - 1);
                const Eigen::Vector2d& next = c.node_cyclic(i + 1);
                d[2 * i] = 0.5 * (next.y() - prev.y());
                d[2 * i + 1] = 0.5 * (prev.x() - next.x());
            }
            break;
        }
        case ShapeFunctional::Kind::TargetMatch: {
            const DiscreteCurve& t = *j.target();
            const int m = j.best_shift(c);
            // Gradient of 1/2 sum_i |c_{i+m} - t_i|^2 at the optimal shift.
            for (int i = 0; i < n; ++i) {
                const int idx = (i + m) % n;
                d.segment<2>(2 * idx) += c.node_cyclic(i + m) - t.node(i);
            }
            break;
        }
    }
    return d;
}

Eigen::VectorXd shape_differential_fd(const ShapeFunctional& j, const DiscreteCurve& c, double h) {
    if (!std::isfinite(j.eval(c))) throw NonFiniteObjective("shape_differential_fd: objective not finite at c");
    const int n = c.size();
    Eigen::VectorXd d(2 * n);
    Eigen::VectorXd flat = c.flatten();
    for (int k = 0; k < 2 * n; ++k) {
        Eigen::VectorXd plus = flat, minus = flat;
        plus[k] += h;
        minus[k] -= h;
        const double jp = j.eval(DiscreteCurve::from_flat_unchecked(plus));
        const double jm = j.eval(DiscreteCurve::from_flat_unchecked(minus));
        if (!std::isfinite(jp) || !std::isfinite(jm))
            throw NonFiniteObjective("shape_differential_fd: perturbed objective not finite");
        d[k] = (jp - jm) / (2.0 * h);
    }
    return d;
}

}  // namespace diffeopt
