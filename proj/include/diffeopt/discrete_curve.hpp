#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace diffeopt {

/// Closed planar curve sampled at N >= 8 nodes (node N-1 connects back to node 0).
/// The validating constructor enforces simplicity and non-degenerate edges;
/// `unchecked` skips the checks for transient trial curves inside line searches.
class DiscreteCurve {
public:
    explicit DiscreteCurve(std::vector<Eigen::Vector2d> nodes);
    static DiscreteCurve unchecked(std::vector<Eigen::Vector2d> nodes);

    int size() const { return static_cast<int>(nodes_.size()); }
    const Eigen::Vector2d& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    const Eigen::Vector2d& node_cyclic(int i) const;
    const std::vector<Eigen::Vector2d>& nodes() const { return nodes_; }

    double edge_length(int i) const;  // |node(i+1) - node(i)|, cyclic
    double perimeter() const;
    double min_edge_length() const;
    bool is_simple() const;
    bool validity_ok() const;  // both invariants, no throw

    Eigen::VectorXd flatten() const;  // (x0, y0, x1, y1, ...)
    static DiscreteCurve from_flat(const Eigen::VectorXd& v);
    static DiscreteCurve from_flat_unchecked(const Eigen::VectorXd& v);

    DiscreteCurve rotate_labels(int shift) const;

    /// Outward unit normal at node i (normal of the angle-bisecting tangent),
    /// for a positively oriented (counterclockwise) curve.
    Eigen::Vector2d outward_normal(int i) const;

    double signed_area() const;  // shoelace; positive for counterclockwise curves

    static DiscreteCurve circle(int n, double radius = 1.0, const Eigen::Vector2d& center = {0.0, 0.0});
    static DiscreteCurve ellipse(int n, double a, double b, const Eigen::Vector2d& center = {0.0, 0.0});

private:
    DiscreteCurve() = default;
    std::vector<Eigen::Vector2d> nodes_;
};

/// Nodal displacement field over a curve's nodes.
struct TangentField {
    std::vector<Eigen::Vector2d> values;

    TangentField() = default;
    explicit TangentField(std::vector<Eigen::Vector2d> v) : values(std::move(v)) {}
    explicit TangentField(int n) : values(static_cast<std::size_t>(n), Eigen::Vector2d::Zero()) {}

    int size() const { return static_cast<int>(values.size()); }
    Eigen::VectorXd flatten() const;
    static TangentField from_flat(const Eigen::VectorXd& v);

    /// Field alpha_i * n_i from normal coefficients over a base curve.
    static TangentField from_normal(const DiscreteCurve& base, const Eigen::VectorXd& normal_coefficients);

    TangentField scaled(double s) const;
};

/// True if segments [a, b] and [c, d] intersect (segment predicate, tolerance-free
/// orientation signs on doubles).
bool segments_intersect(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                        const Eigen::Vector2d& d);

/// Symmetric Hausdorff distance between the node sets of two curves.
double hausdorff_distance(const DiscreteCurve& a, const DiscreteCurve& b);

}  // namespace diffeopt
