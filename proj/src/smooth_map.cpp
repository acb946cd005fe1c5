#include "diffeopt/smooth_map.hpp"

#include <memory>
#include <stdexcept>

namespace diffeopt {

namespace {

constexpr double kFdStep = 1e-5;

}  // namespace

SmoothMap::SmoothMap(int domain_dim, int codomain_dim, EvalFn eval, int deriv_order)
    : domain_dim_(domain_dim),
      codomain_dim_(codomain_dim),
      deriv_order_(deriv_order),
      eval_(std::move(eval)) {
    if (domain_dim_ <= 0 || codomain_dim_ <= 0)
        throw std::invalid_argument("SmoothMap: dimensions must be positive");
    if (deriv_order_ < 2) throw std::invalid_argument("SmoothMap: deriv_order must be >= 2");
    domain_lo_ = Eigen::VectorXd::Constant(domain_dim_, -1.0);
    domain_hi_ = Eigen::VectorXd::Constant(domain_dim_, 1.0);
}

SmoothMap SmoothMap::polynomial(std::vector<MultiPoly> components) {
    if (components.empty()) throw std::invalid_argument("SmoothMap::polynomial: no components");
    const int n = components.front().n_vars();
    for (const auto& c : components)
        if (c.n_vars() != n) throw std::invalid_argument("SmoothMap::polynomial: mixed arities");
    auto comps = std::make_shared<std::vector<MultiPoly>>(components);
    SmoothMap m(n, static_cast<int>(components.size()),
                [comps](const Eigen::VectorXd& x) {
                    Eigen::VectorXd out(comps->size());
                    for (std::size_t i = 0; i < comps->size(); ++i) out[static_cast<int>(i)] = (*comps)[i].eval(x);
                    return out;
                },
                4);
    m.poly_ = std::move(components);
    return m;
}

SmoothMap SmoothMap::coordinate(int ambient_dim, int axis) {
    return polynomial({MultiPoly::coordinate(ambient_dim, axis)});
}

SmoothMap SmoothMap::identity(int dim) {
    std::vector<MultiPoly> comps;
    comps.reserve(dim);
    for (int i = 0; i < dim; ++i) comps.push_back(MultiPoly::coordinate(dim, i));
    return polynomial(std::move(comps));
}

SmoothMap SmoothMap::polynomial_path(std::vector<Poly1> components) {
    std::vector<MultiPoly> comps;
    comps.reserve(components.size());
    for (const Poly1& p : components) {
        std::vector<MultiPoly::Term> terms;
        for (int k = 0; k <= p.degree(); ++k) terms.push_back({p.coeffs()[static_cast<std::size_t>(k)], {k}});
        comps.push_back(MultiPoly(1, std::move(terms)));
    }
    return polynomial(std::move(comps));
}

Eigen::VectorXd SmoothMap::operator()(const Eigen::VectorXd& x) const {
    if (x.size() != domain_dim_) throw std::invalid_argument("SmoothMap: input dimension mismatch");
    Eigen::VectorXd y = eval_(x);
    if (y.size() != codomain_dim_) throw std::logic_error("SmoothMap: eval produced wrong dimension");
    return y;
}

double SmoothMap::scalar_at(const Eigen::VectorXd& x) const {
    if (codomain_dim_ != 1) throw std::logic_error("SmoothMap::scalar_at: codomain_dim != 1");
    return (*this)(x)[0];
}

const std::vector<MultiPoly>& SmoothMap::poly_components() const {
    if (!poly_) throw std::logic_error("SmoothMap: not a polynomial map");
    return *poly_;
}

Eigen::VectorXd SmoothMap::directional_derivative(const Eigen::VectorXd& x, const Eigen::VectorXd& dir,
                                                  int order) const {
    if (order < 1 || order > deriv_order_)
        throw std::invalid_argument("SmoothMap::directional_derivative: unsupported order");
    if (poly_) {
        // d^k/ds^k f(x + s dir) at s = 0, computed on the exact composite polynomial.
        std::vector<Poly1> lines;
        lines.reserve(static_cast<std::size_t>(domain_dim_));
        for (int v = 0; v < domain_dim_; ++v) lines.push_back(Poly1({x[v], dir[v]}));
        Eigen::VectorXd out(codomain_dim_);
        for (int i = 0; i < codomain_dim_; ++i) {
            Poly1 g = (*poly_)[static_cast<std::size_t>(i)].compose(lines);
            for (int k = 0; k < order; ++k) g = g.derivative();
            out[i] = g.eval(0.0);
        }
        return out;
    }
    const double h = kFdStep;
    auto at = [&](double s) { return (*this)(x + s * dir); };
    if (order == 1) return (at(-2 * h) - 8 * at(-h) + 8 * at(h) - at(2 * h)) / (12 * h);
    return (at(-h) - 2 * at(0.0) + at(h)) / (h * h);
}

SmoothMap SmoothMap::with_domain(Eigen::VectorXd lo, Eigen::VectorXd hi) const {
    if (lo.size() != domain_dim_ || hi.size() != domain_dim_)
        throw std::invalid_argument("SmoothMap::with_domain: dimension mismatch");
    SmoothMap m = *this;
    m.domain_lo_ = std::move(lo);
    m.domain_hi_ = std::move(hi);
    return m;
}

SmoothMap SmoothMap::lifted(int new_dim, int offset) const {
    if (offset < 0 || offset + domain_dim_ > new_dim)
        throw std::invalid_argument("SmoothMap::lifted: offset out of range");
    if (poly_) {
        std::vector<MultiPoly> comps;
        comps.reserve(poly_->size());
        for (const MultiPoly& p : *poly_) comps.push_back(p.lifted(new_dim, offset));
        return polynomial(std::move(comps));
    }
    const int dd = domain_dim_;
    EvalFn inner = eval_;
    SmoothMap m(new_dim, codomain_dim_,
                [inner, offset, dd](const Eigen::VectorXd& x) { return inner(x.segment(offset, dd)); },
                deriv_order_);
    return m;
}

}  // namespace diffeopt
