#include "diffeopt/discrete_curve.hpp"

#include <cmath>
#include <numbers>

namespace diffeopt {

namespace {

constexpr double kMinEdge = 1e-12;

int orientation_sign(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& p) {
    const double cross = (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x());
    if (cross > 0.0) return 1;
    if (cross < 0.0) return -1;
    return 0;
}

bool on_segment_collinear(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& p) {
    return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
           std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

}  // namespace

bool segments_intersect(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                        const Eigen::Vector2d& d) {
    const int o1 = orientation_sign(a, b, c);
    const int o2 = orientation_sign(a, b, d);
    const int o3 = orientation_sign(c, d, a);
    const int o4 = orientation_sign(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment_collinear(a, b, c)) return true;
    if (o2 == 0 && on_segment_collinear(a, b, d)) return true;
    if (o3 == 0 && on_segment_collinear(c, d, a)) return true;
    if (o4 == 0 && on_segment_collinear(c, d, b)) return true;
    return false;
}

DiscreteCurve::DiscreteCurve(std::vector<Eigen::Vector2d> nodes) {
    nodes_ = std::move(nodes);
    if (size() < 8) throw std::invalid_argument("DiscreteCurve: need at least 8 nodes");
    if (min_edge_length() <= kMinEdge) throw std::invalid_argument("DiscreteCurve: degenerate edge");
    if (!is_simple()) throw std::invalid_argument("DiscreteCurve: curve is self-intersecting");
}

DiscreteCurve DiscreteCurve::unchecked(std::vector<Eigen::Vector2d> nodes) {
    DiscreteCurve c;
    c.nodes_ = std::move(nodes);
    return c;
}

const Eigen::Vector2d& DiscreteCurve::node_cyclic(int i) const {
    const int n = size();
    int k = i % n;
    if (k < 0) k += n;
    return nodes_[static_cast<std::size_t>(k)];
}

double DiscreteCurve::edge_length(int i) const { return (node_cyclic(i + 1) - node_cyclic(i)).norm(); }

double DiscreteCurve::perimeter() const {
    double sum = 0.0;
    for (int i = 0; i < size(); ++i) sum += edge_length(i);
    return sum;
}

double DiscreteCurve::min_edge_length() const {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < size(); ++i) m = std::min(m, edge_length(i));
    return m;
}

bool DiscreteCurve::is_simple() const {
    const int n = size();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            // skip adjacent edges (they share an endpoint by construction)
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_intersect(node_cyclic(i), node_cyclic(i + 1), node_cyclic(j), node_cyclic(j + 1)))
                return false;
        }
    }
    return true;
}

bool DiscreteCurve::validity_ok() const {
    if (size() < 8) return false;
    for (const auto& p : nodes_)
        if (!p.allFinite()) return false;
    return min_edge_length() > kMinEdge && is_simple();
}

Eigen::VectorXd DiscreteCurve::flatten() const {
    Eigen::VectorXd v(2 * size());
    for (int i = 0; i < size(); ++i) v.segment<2>(2 * i) = nodes_[static_cast<std::size_t>(i)];
    return v;
}

DiscreteCurve DiscreteCurve::from_flat(const Eigen::VectorXd& v) {
    std::vector<Eigen::Vector2d> nodes(static_cast<std::size_t>(v.size() / 2));
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = v.segment<2>(2 * static_cast<int>(i));
    return DiscreteCurve(std::move(nodes));
}

DiscreteCurve DiscreteCurve::from_flat_unchecked(const Eigen::VectorXd& v) {
    std::vector<Eigen::Vector2d> nodes(static_cast<std::size_t>(v.size() / 2));
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = v.segment<2>(2 * static_cast<int>(i));
    return unchecked(std::move(nodes));
}

DiscreteCurve DiscreteCurve::rotate_labels(int shift) const {
    const int n = size();
    std::vector<Eigen::Vector2d> nodes(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) nodes[static_cast<std::size_t>(i)] = node_cyclic(i + shift);
    return unchecked(std::move(nodes));
}

Eigen::Vector2d DiscreteCurve::outward_normal(int i) const {
    const Eigen::Vector2d prev = node_cyclic(i) - node_cyclic(i - 1);
    const Eigen::Vector2d next = node_cyclic(i + 1) - node_cyclic(i);
    Eigen::Vector2d tangent = prev.normalized() + next.normalized();
    if (tangent.norm() < 1e-14) tangent = next;  // hairpin: fall back to the outgoing edge
    tangent.normalize();
    return {tangent.y(), -tangent.x()};  // right normal = outward for counterclockwise curves
}

double DiscreteCurve::signed_area() const {
    double a = 0.0;
    for (int i = 0; i < size(); ++i) {
        const Eigen::Vector2d& p = node_cyclic(i);
        const Eigen::Vector2d& q = node_cyclic(i + 1);
        a += p.x() * q.y() - q.x() * p.y();
    }
    return 0.5 * a;
}

DiscreteCurve DiscreteCurve::circle(int n, double radius, const Eigen::Vector2d& center) {
    std::vector<Eigen::Vector2d> nodes(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double th = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        nodes[static_cast<std::size_t>(i)] = center + radius * Eigen::Vector2d(std::cos(th), std::sin(th));
    }
    return DiscreteCurve(std::move(nodes));
}

DiscreteCurve DiscreteCurve::ellipse(int n, double a, double b, const Eigen::Vector2d& center) {
    std::vector<Eigen::Vector2d> nodes(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double th = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        nodes[static_cast<std::size_t>(i)] = center + Eigen::Vector2d(a * std::cos(th), b * std::sin(th));
    }
    return DiscreteCurve(std::move(nodes));
}

Eigen::VectorXd TangentField::flatten() const {
    Eigen::VectorXd v(2 * size());
    for (int i = 0; i < size(); ++i) v.segment<2>(2 * i) = values[static_cast<std::size_t>(i)];
    return v;
}

TangentField TangentField::from_flat(const Eigen::VectorXd& v) {
    TangentField f(static_cast<int>(v.size() / 2));
    for (int i = 0; i < f.size(); ++i) f.values[static_cast<std::size_t>(i)] = v.segment<2>(2 * i);
    return f;
}

TangentField TangentField::from_normal(const DiscreteCurve& base, const Eigen::VectorXd& normal_coefficients) {
    if (normal_coefficients.size() != base.size())
        throw std::invalid_argument("TangentField::from_normal: coefficient count mismatch");
    TangentField f(base.size());
    for (int i = 0; i < base.size(); ++i)
        f.values[static_cast<std::size_t>(i)] = normal_coefficients[i] * base.outward_normal(i);
    return f;
}

TangentField TangentField::scaled(double s) const {
    TangentField f = *this;
    for (auto& v : f.values) v *= s;
    return f;
}

double hausdorff_distance(const DiscreteCurve& a, const DiscreteCurve& b) {
    auto one_sided = [](const DiscreteCurve& p, const DiscreteCurve& q) {
        double worst = 0.0;
        for (int i = 0; i < p.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (int j = 0; j < q.size(); ++j) best = std::min(best, (p.node(i) - q.node(j)).norm());
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

}  // namespace diffeopt
