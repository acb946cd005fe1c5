#pragma once

#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

#include "diffeopt/discrete_curve.hpp"

namespace diffeopt {

struct NonFiniteObjective : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shape functional on discrete curves, invariant under cyclic relabeling of
/// the nodes (the computable trace of quotienting by Diff(S^1)).
class ShapeFunctional {
public:
    enum class Kind { Length, EnclosedArea, TargetMatch };

    static ShapeFunctional length();
    static ShapeFunctional enclosed_area();
    /// Least squared node mismatch over all cyclic relabelings of c:
    /// J(c) = min_m 1/2 sum_i |c_{i+m} - t_i|^2.
    static ShapeFunctional target_match(DiscreteCurve target);

    Kind kind() const { return kind_; }
    const std::optional<DiscreteCurve>& target() const { return target_; }

    double eval(const DiscreteCurve& c) const;

    /// Cyclic shift minimizing the node mismatch (TargetMatch only).
    int best_shift(const DiscreteCurve& c) const;

private:
    explicit ShapeFunctional(Kind kind) : kind_(kind) {}
    Kind kind_;
    std::optional<DiscreteCurve> target_;
};

/// Discrete Gateaux differential of J at c as a covector of dimension 2N.
/// Analytic formulas for the stock functionals; they agree with the central
/// finite difference (h = 1e-6) to 1e-5 relative.
Eigen::VectorXd shape_differential(const ShapeFunctional& j, const DiscreteCurve& c);

/// Central finite-difference form of the differential (h per node coordinate).
Eigen::VectorXd shape_differential_fd(const ShapeFunctional& j, const DiscreteCurve& c, double h = 1e-6);

}  // namespace diffeopt
