#include "diffeopt/connection.hpp"

#include <cmath>
#include <memory>

#include <Eigen/LU>

#include "diffeopt/matrix_exp.hpp"

namespace diffeopt {

namespace {

constexpr double kFdStep = 1e-5;
constexpr double kLoopTol = 1e-12;
constexpr double kFlatnessTol = 1e-6;

}  // namespace

ConnectionForm ConnectionForm::zero(int base_dim, int group_dim) {
    ConnectionForm c;
    c.base_dim = base_dim;
    c.group_dim = group_dim;
    c.theta = [group_dim](const Eigen::VectorXd&, const Eigen::VectorXd&) {
        return Eigen::MatrixXd::Zero(group_dim, group_dim).eval();
    };
    return c;
}

ConnectionForm ConnectionForm::constant(std::vector<Eigen::MatrixXd> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("ConnectionForm::constant: no coefficients");
    ConnectionForm c;
    c.base_dim = static_cast<int>(coeffs.size());
    c.group_dim = static_cast<int>(coeffs.front().rows());
    c.theta = [cs = std::move(coeffs)](const Eigen::VectorXd&, const Eigen::VectorXd& u) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(cs.front().rows(), cs.front().cols());
        for (std::size_t i = 0; i < cs.size(); ++i) acc += u[static_cast<Eigen::Index>(i)] * cs[i];
        return acc;
    };
    return c;
}

ConnectionForm ConnectionForm::maurer_cartan_pullback(int base_dim,
                                                      std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> f) {
    ConnectionForm c;
    c.base_dim = base_dim;
    c.group_dim = static_cast<int>(f(Eigen::VectorXd::Zero(base_dim)).rows());
    c.theta = [f = std::move(f)](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
        const Eigen::MatrixXd df =
            (f(x + kFdStep * u) - f(x - kFdStep * u)) / (2.0 * kFdStep);
        return (df * f(x).inverse()).eval();
    };
    return c;
}

ConnectionForm ConnectionForm::mc_exp_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    // f(x,y) = exp(xA) exp(yB):  theta_x = A,  theta_y = exp(xA) B exp(-xA).
    ConnectionForm c;
    c.base_dim = 2;
    c.group_dim = static_cast<int>(a.rows());
    c.theta = [a, b](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
        const Eigen::MatrixXd ex = expm(x[0] * a);
        const Eigen::MatrixXd exi = expm(-x[0] * a);
        return (u[0] * a + u[1] * (ex * b * exi)).eval();
    };
    return c;
}

Eigen::MatrixXd curvature(const ConnectionForm& theta, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                          const Eigen::VectorXd& w) {
    const double h = kFdStep;
    // d theta(u, w) = D_u[theta(.)(w)] - D_w[theta(.)(u)] for constant direction vectors.
    const Eigen::MatrixXd du_tw = (theta.at(x + h * u, w) - theta.at(x - h * u, w)) / (2.0 * h);
    const Eigen::MatrixXd dw_tu = (theta.at(x + h * w, u) - theta.at(x - h * w, u)) / (2.0 * h);
    return du_tw - dw_tu - commutator(theta.at(x, u), theta.at(x, w));
}

BasePath BasePath::polyline(std::vector<Eigen::VectorXd> vertices) {
    if (vertices.size() < 2) throw std::invalid_argument("BasePath::polyline: need at least 2 vertices");
    BasePath p;
    p.dim = static_cast<int>(vertices.front().size());
    const int sides = static_cast<int>(vertices.size()) - 1;
    auto vs = std::make_shared<std::vector<Eigen::VectorXd>>(std::move(vertices));
    p.value = [vs, sides](double t) {
        t = std::clamp(t, 0.0, 1.0);
        const double s = t * sides;
        int k = std::min(static_cast<int>(s), sides - 1);
        const double local = s - k;
        return ((1.0 - local) * (*vs)[static_cast<std::size_t>(k)] +
                local * (*vs)[static_cast<std::size_t>(k) + 1])
            .eval();
    };
    p.derivative = [vs, sides](double t) {
        t = std::clamp(t, 0.0, 1.0);
        int k = std::min(static_cast<int>(t * sides), sides - 1);
        return (static_cast<double>(sides) *
                ((*vs)[static_cast<std::size_t>(k) + 1] - (*vs)[static_cast<std::size_t>(k)]))
            .eval();
    };
    return p;
}

BasePath BasePath::concat_with_reverse(const BasePath& gamma) {
    BasePath p;
    p.dim = gamma.dim;
    p.value = [gamma](double t) {
        return t <= 0.5 ? gamma.value(2.0 * t) : gamma.value(2.0 - 2.0 * t);
    };
    p.derivative = [gamma](double t) {
        if (t <= 0.5) return (2.0 * gamma.derivative(2.0 * t)).eval();
        return (-2.0 * gamma.derivative(2.0 - 2.0 * t)).eval();
    };
    return p;
}

GroupPath horizontal_lift(const BasePath& gamma, const ConnectionForm& theta, const Eigen::MatrixXd& g0,
                          const MatrixGroupSpec& spec, int steps) {
    if (gamma.dim != theta.base_dim) throw std::invalid_argument("horizontal_lift: base dimension mismatch");
    AlgebraPath v;
    v.dim = spec.dim;
    v.value = [&gamma, &theta](double t) { return (-theta.at(gamma.at(t), gamma.velocity(t))).eval(); };
    GroupPath lift = solve_logarithmic(v, spec, steps, LogSide::Left);
    const bool g0_is_identity = g0.isIdentity(0.0);
    if (!g0_is_identity) {
        for (auto& g : lift.samples) g = (g * g0).eval();
    }
    return lift;
}

Eigen::MatrixXd holonomy(const BasePath& loop, const ConnectionForm& theta, const MatrixGroupSpec& spec,
                         int steps) {
    if ((loop.at(0.0) - loop.at(1.0)).norm() > kLoopTol)
        throw NotALoop("holonomy: base path endpoints differ");
    return horizontal_lift(loop, theta, spec.identity(), spec, steps).endpoint();
}

Eigen::Vector2d FlatPrimitive::grid_point(int ix, int iy) const {
    const double sx = static_cast<double>(ix) / grid_steps;
    const double sy = static_cast<double>(iy) / grid_steps;
    return {lo.x() + sx * (hi.x() - lo.x()), lo.y() + sy * (hi.y() - lo.y())};
}

namespace {

// One CF4 step of df.f^{-1} = v along an axis-aligned segment.
Eigen::MatrixXd right_log_step(const std::function<Eigen::MatrixXd(double)>& v, double s0, double h,
                               const Eigen::MatrixXd& f) {
    const double lo = 0.5 - std::sqrt(3.0) / 6.0;
    const double hi = 0.5 + std::sqrt(3.0) / 6.0;
    const double ca = 0.25 + std::sqrt(3.0) / 6.0;
    const double cb = 0.25 - std::sqrt(3.0) / 6.0;
    const Eigen::MatrixXd a1 = v(s0 + lo * h);
    const Eigen::MatrixXd a2 = v(s0 + hi * h);
    const Eigen::MatrixXd e1 = expm(h * (ca * a1 + cb * a2));
    const Eigen::MatrixXd e2 = expm(h * (cb * a1 + ca * a2));
    return e2 * e1 * f;
}

}  // namespace

FlatPrimitive solve_flat_primitive(const ConnectionForm& alpha, const MatrixGroupSpec& spec, int grid_steps,
                                   const Eigen::Vector2d& lo, const Eigen::Vector2d& hi) {
    if (alpha.base_dim != 2) throw std::invalid_argument("solve_flat_primitive: alpha must live on a rectangle");
    if (grid_steps < 2) throw std::invalid_argument("solve_flat_primitive: need at least a 2x2 grid");

    FlatPrimitive out;
    out.grid_steps = grid_steps;
    out.lo = lo;
    out.hi = hi;

    const Eigen::Vector2d ex(1.0, 0.0), ey(0.0, 1.0);
    const double hx = (hi.x() - lo.x()) / grid_steps;
    const double hy = (hi.y() - lo.y()) / grid_steps;

    // Flatness precondition, sampled at cell centers.
    for (int ix = 0; ix < grid_steps; ++ix) {
        for (int iy = 0; iy < grid_steps; ++iy) {
            const Eigen::Vector2d c(lo.x() + (ix + 0.5) * hx, lo.y() + (iy + 0.5) * hy);
            if (curvature(alpha, c, ex, ey).norm() > kFlatnessTol)
                throw NotFlat("solve_flat_primitive: curvature residual exceeds 1e-6 on the grid");
        }
    }

    auto vx_at = [&](double y) {
        return [&alpha, y, &ex](double x) { return alpha.at(Eigen::Vector2d(x, y), ex).eval(); };
    };
    auto vy_at = [&](double x) {
        return [&alpha, x, &ey](double y) { return alpha.at(Eigen::Vector2d(x, y), ey).eval(); };
    };

    out.f.assign(static_cast<std::size_t>(grid_steps) + 1,
                 std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(grid_steps) + 1));
    out.f[0][0] = spec.identity();

    // Bottom row, then columns upward.
    for (int ix = 0; ix < grid_steps; ++ix) {
        const double x = lo.x() + ix * hx;
        out.f[static_cast<std::size_t>(ix) + 1][0] =
            right_log_step(vx_at(lo.y()), x, hx, out.f[static_cast<std::size_t>(ix)][0]);
    }
    for (int ix = 0; ix <= grid_steps; ++ix) {
        const double x = lo.x() + ix * hx;
        auto vy = vy_at(x);
        for (int iy = 0; iy < grid_steps; ++iy) {
            const double y = lo.y() + iy * hy;
            out.f[static_cast<std::size_t>(ix)][static_cast<std::size_t>(iy) + 1] =
                right_log_step(vy, y, hy, out.f[static_cast<std::size_t>(ix)][static_cast<std::size_t>(iy)]);
        }
    }

    // Cell-wise path-independence: x-then-y vs y-then-x from each cell corner.
    double worst = 0.0;
    for (int ix = 0; ix < grid_steps; ++ix) {
        const double x = lo.x() + ix * hx;
        for (int iy = 0; iy < grid_steps; ++iy) {
            const double y = lo.y() + iy * hy;
            const Eigen::MatrixXd& corner = out.f[static_cast<std::size_t>(ix)][static_cast<std::size_t>(iy)];
            const Eigen::MatrixXd xy = right_log_step(vy_at(x + hx), y, hy, right_log_step(vx_at(y), x, hx, corner));
            const Eigen::MatrixXd yx = right_log_step(vx_at(y + hy), x, hx, right_log_step(vy_at(x), y, hy, corner));
            worst = std::max(worst, (xy - yx).norm());
        }
    }
    out.max_cell_residual = worst;
    return out;
}

}  // namespace diffeopt
