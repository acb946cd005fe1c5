#include "diffeopt/embedded_space.hpp"

#include <cmath>
#include <memory>

namespace diffeopt {

namespace {

constexpr double kPlotConstraintTol = 1e-9;
constexpr double kBasePointTol = 1e-12;
constexpr double kPathConstraintTol = 1e-9;
constexpr double kGermTol = 1e-7;
constexpr double kPathFdStep = 1e-4;
constexpr int kGridPerAxis = 10;

// Visit a kGridPerAxis-per-axis grid of the box [lo, hi].
template <typename F>
void for_each_grid_point(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, F&& visit) {
    const int dim = static_cast<int>(lo.size());
    std::vector<int> idx(static_cast<std::size_t>(dim), 0);
    Eigen::VectorXd x(dim);
    while (true) {
        for (int v = 0; v < dim; ++v) {
            const double s = static_cast<double>(idx[static_cast<std::size_t>(v)]) / (kGridPerAxis - 1);
            x[v] = lo[v] + s * (hi[v] - lo[v]);
        }
        visit(x);
        int v = 0;
        for (; v < dim; ++v) {
            if (++idx[static_cast<std::size_t>(v)] < kGridPerAxis) break;
            idx[static_cast<std::size_t>(v)] = 0;
        }
        if (v == dim) break;
    }
}

}  // namespace

EmbeddedSpace::EmbeddedSpace(int ambient_dim, std::vector<SmoothMap> constraints,
                             std::vector<SmoothMap> generating_plots, std::string label)
    : ambient_dim_(ambient_dim),
      constraints_(std::move(constraints)),
      plots_(std::move(generating_plots)),
      label_(std::move(label)) {
    if (ambient_dim_ <= 0) throw std::invalid_argument("EmbeddedSpace: ambient_dim must be positive");
    for (const SmoothMap& c : constraints_) {
        if (c.codomain_dim() != 1) throw std::invalid_argument("EmbeddedSpace: constraints must be scalar");
        if (c.domain_dim() != ambient_dim_)
            throw std::invalid_argument("EmbeddedSpace: constraint domain must match ambient_dim");
    }
    for (const SmoothMap& p : plots_) {
        if (p.codomain_dim() != ambient_dim_)
            throw std::invalid_argument("EmbeddedSpace: plot codomain must match ambient_dim");
        for_each_grid_point(p.domain_lo(), p.domain_hi(), [&](const Eigen::VectorXd& u) {
            const Eigen::VectorXd x = p(u);
            if (constraint_residual(x) > kPlotConstraintTol)
                throw std::invalid_argument("EmbeddedSpace: generating plot leaves the constraint zero set ('" +
                                            label_ + "')");
        });
    }
}

double EmbeddedSpace::constraint_residual(const Eigen::VectorXd& x) const {
    double r = 0.0;
    for (const SmoothMap& c : constraints_) r = std::max(r, std::abs(c.scalar_at(x)));
    return r;
}

std::vector<SmoothMap> EmbeddedSpace::coordinate_functions() const {
    std::vector<SmoothMap> fs;
    fs.reserve(static_cast<std::size_t>(ambient_dim_));
    for (int i = 0; i < ambient_dim_; ++i) fs.push_back(SmoothMap::coordinate(ambient_dim_, i));
    return fs;
}

SpacePtr EmbeddedSpace::euclidean(int n) {
    return std::make_shared<EmbeddedSpace>(n, std::vector<SmoothMap>{},
                                           std::vector<SmoothMap>{SmoothMap::identity(n)},
                                           "R^" + std::to_string(n));
}

SpacePtr EmbeddedSpace::cross() {
    MultiPoly xy(2, {MultiPoly::Term{1.0, {1, 1}}});
    std::vector<SmoothMap> plots;
    plots.push_back(SmoothMap::polynomial_path({Poly1::variable(), Poly1::constant(0.0)}));
    plots.push_back(SmoothMap::polynomial_path({Poly1::constant(0.0), Poly1::variable()}));
    return std::make_shared<EmbeddedSpace>(2, std::vector<SmoothMap>{SmoothMap::polynomial({xy})},
                                           std::move(plots), "cross");
}

SpacePtr EmbeddedSpace::circle() {
    MultiPoly c(2, {MultiPoly::Term{1.0, {2, 0}}, MultiPoly::Term{1.0, {0, 2}}, MultiPoly::Term{-1.0, {0, 0}}});
    SmoothMap plot(1, 2,
                   [](const Eigen::VectorXd& u) {
                       Eigen::VectorXd x(2);
                       x << std::cos(u[0]), std::sin(u[0]);
                       return x;
                   },
                   4);
    return std::make_shared<EmbeddedSpace>(2, std::vector<SmoothMap>{SmoothMap::polynomial({c})},
                                           std::vector<SmoothMap>{plot.with_domain(
                                               Eigen::VectorXd::Constant(1, -3.2), Eigen::VectorXd::Constant(1, 3.2))},
                                           "circle");
}

SpacePtr make_product(const SpacePtr& a, const SpacePtr& b) {
    const int na = a->ambient_dim();
    const int nb = b->ambient_dim();
    const int n = na + nb;

    std::vector<SmoothMap> constraints;
    for (const SmoothMap& c : a->constraints()) constraints.push_back(c.lifted(n, 0));
    for (const SmoothMap& c : b->constraints()) constraints.push_back(c.lifted(n, na));

    std::vector<SmoothMap> plots;
    for (const SmoothMap& pa : a->generating_plots()) {
        for (const SmoothMap& pb : b->generating_plots()) {
            const int da = pa.domain_dim();
            const int db = pb.domain_dim();
            SmoothMap prod(da + db, n,
                           [pa, pb, da, db, na, nb](const Eigen::VectorXd& u) {
                               Eigen::VectorXd out(na + nb);
                               out.head(na) = pa(u.head(da));
                               out.tail(nb) = pb(u.tail(db));
                               return out;
                           },
                           std::min(pa.deriv_order(), pb.deriv_order()));
            Eigen::VectorXd lo(da + db), hi(da + db);
            lo << pa.domain_lo(), pb.domain_lo();
            hi << pa.domain_hi(), pb.domain_hi();
            plots.push_back(prod.with_domain(std::move(lo), std::move(hi)));
        }
    }
    return std::make_shared<EmbeddedSpace>(n, std::move(constraints), std::move(plots),
                                           a->label() + " x " + b->label());
}

PathGerm::PathGerm(Eigen::VectorXd base_point, SmoothMap path, SpacePtr space)
    : base_(std::move(base_point)), path_(std::move(path)), space_(std::move(space)) {
    if (!space_) throw std::invalid_argument("PathGerm: null space");
    if (path_.domain_dim() != 1) throw std::invalid_argument("PathGerm: path must have domain_dim == 1");
    if (path_.codomain_dim() != space_->ambient_dim())
        throw std::invalid_argument("PathGerm: path codomain must match the space's ambient_dim");
    if (base_.size() != space_->ambient_dim())
        throw std::invalid_argument("PathGerm: base point dimension mismatch");
    if ((at(0.0) - base_).norm() > kBasePointTol)
        throw std::invalid_argument("PathGerm: path(0) differs from base_point");
    for (int k = -10; k <= 10; ++k) {
        const double t = 0.01 * static_cast<double>(k);
        if (space_->constraint_residual(at(t)) > kPathConstraintTol)
            throw std::invalid_argument("PathGerm: path leaves the space on [-0.1, 0.1]");
    }
}

Eigen::VectorXd PathGerm::at(double t) const {
    Eigen::VectorXd arg(1);
    arg[0] = t;
    return path_(arg);
}

Eigen::VectorXd PathGerm::velocity() const {
    return path_.directional_derivative(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1), 1);
}

double path_derivative(const SmoothMap& f, const PathGerm& c) {
    if (f.codomain_dim() != 1) throw DomainMismatch("path_derivative: f must be scalar-valued");
    if (f.domain_dim() != c.space()->ambient_dim())
        throw DomainMismatch("path_derivative: f domain does not match the space's ambient dimension");
    if (f.is_polynomial() && c.path().is_polynomial()) {
        // rebuild univariate coordinate polynomials and compose exactly
        std::vector<Poly1> coords;
        for (const MultiPoly& comp : c.path().poly_components()) {
            std::vector<double> coeffs;
            for (const auto& term : comp.terms()) {
                const int deg = term.exps[0];
                if (static_cast<int>(coeffs.size()) <= deg) coeffs.resize(static_cast<std::size_t>(deg) + 1, 0.0);
                coeffs[static_cast<std::size_t>(deg)] += term.coeff;
            }
            if (coeffs.empty()) coeffs.push_back(0.0);
            coords.push_back(Poly1(std::move(coeffs)));
        }
        return f.poly_components()[0].compose(coords).derivative_at_zero();
    }
    const double h = kPathFdStep;
    auto g = [&](double t) { return f.scalar_at(c.at(t)); };
    return (g(-2 * h) - 8 * g(-h) + 8 * g(h) - g(2 * h)) / (12 * h);
}

bool germs_equivalent(const PathGerm& c1, const PathGerm& c2, const std::vector<SmoothMap>& test_functions) {
    if (c1.space() != c2.space())
        throw std::invalid_argument("germs_equivalent: germs live on different spaces");
    if ((c1.base_point() - c2.base_point()).norm() > kBasePointTol)
        throw BasePointMismatch("germs_equivalent: base points differ");
    for (const SmoothMap& f : test_functions) {
        if (std::abs(path_derivative(f, c1) - path_derivative(f, c2)) > kGermTol) return false;
    }
    return true;
}

ConeProbeResult probe_cone(const SpacePtr& space, const Eigen::VectorXd& x,
                           const std::vector<PathGerm>& sample_paths) {
    for (const PathGerm& c : sample_paths) {
        if (c.space() != space) throw std::invalid_argument("probe_cone: path on a different space");
        if ((c.base_point() - x).norm() > kBasePointTol)
            throw BasePointMismatch("probe_cone: sample path not based at x");
    }
    const std::vector<SmoothMap> coords = space->coordinate_functions();
    ConeProbeResult result;
    std::vector<int> representatives;  // index into sample_paths per class
    result.class_of_path.assign(sample_paths.size(), -1);
    for (std::size_t i = 0; i < sample_paths.size(); ++i) {
        int found = -1;
        for (std::size_t cls = 0; cls < representatives.size(); ++cls) {
            if (germs_equivalent(sample_paths[i], sample_paths[static_cast<std::size_t>(representatives[cls])],
                                 coords)) {
                found = static_cast<int>(cls);
                break;
            }
        }
        if (found < 0) {
            found = static_cast<int>(representatives.size());
            representatives.push_back(static_cast<int>(i));
            result.class_velocities.push_back(sample_paths[i].velocity());
        }
        result.class_of_path[i] = found;
    }
    return result;
}

}  // namespace diffeopt
