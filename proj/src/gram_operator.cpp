#include "diffeopt/gram_operator.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace diffeopt {

namespace detail {

std::vector<std::complex<double>> dft_forward(const Eigen::VectorXd& x) {
    const int n = static_cast<int>(x.size());
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            const double phase = -2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(j) * k) % n) /
                                 static_cast<double>(n);
            acc += x[j] * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        out[static_cast<std::size_t>(k)] = acc;
    }
    return out;
}

Eigen::VectorXd dft_inverse_real(const std::vector<std::complex<double>>& spectrum) {
    const int n = static_cast<int>(spectrum.size());
    Eigen::VectorXd out(n);
    for (int j = 0; j < n; ++j) {
        std::complex<double> acc(0.0, 0.0);
        for (int k = 0; k < n; ++k) {
            const double phase = 2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(j) * k) % n) /
                                 static_cast<double>(n);
            acc += spectrum[static_cast<std::size_t>(k)] * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        out[j] = acc.real() / static_cast<double>(n);
    }
    return out;
}

int folded_mode(int j, int n) { return j <= n / 2 ? j : j - n; }

}  // namespace detail

GramOperator GramOperator::dense(Eigen::MatrixXd matrix, const DiscreteCurve& base) {
    const int n = base.size();
    if (matrix.rows() != 2 * n || matrix.cols() != 2 * n)
        throw std::invalid_argument("GramOperator::dense: matrix must be 2N x 2N");
    if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("GramOperator::dense: matrix not symmetric");
    auto llt = std::make_shared<Eigen::LLT<Eigen::MatrixXd>>(matrix);
    if (llt->info() != Eigen::Success)
        throw SingularMetric("GramOperator::dense: Cholesky factorization failed (matrix not SPD)");
    GramOperator g;
    g.kind_ = Kind::Dense;
    g.n_nodes_ = n;
    g.matrix_ = std::move(matrix);
    g.llt_ = std::move(llt);
    return g;
}

GramOperator GramOperator::spectral(Eigen::VectorXd mode_weights, const DiscreteCurve& base) {
    const int n = base.size();
    if (mode_weights.size() != n)
        throw std::invalid_argument("GramOperator::spectral: need one weight per mode bin");
    for (int j = 0; j < n; ++j) {
        if (mode_weights[j] < 1.0)
            throw std::invalid_argument("GramOperator::spectral: weights must be >= 1");
    }
    GramOperator g;
    g.kind_ = Kind::Spectral;
    g.n_nodes_ = n;
    g.weights_ = std::move(mode_weights);
    return g;
}

GramOperator GramOperator::identity(const DiscreteCurve& base) {
    return dense(Eigen::MatrixXd::Identity(2 * base.size(), 2 * base.size()), base);
}

const Eigen::MatrixXd& GramOperator::dense_matrix() const {
    if (kind_ != Kind::Dense) throw std::logic_error("GramOperator: not a dense operator");
    return matrix_;
}

const Eigen::VectorXd& GramOperator::spectral_weights() const {
    if (kind_ != Kind::Spectral) throw std::logic_error("GramOperator: not a spectral operator");
    return weights_;
}

double GramOperator::quad(const TangentField& h, const TangentField& k) const {
    if (h.size() != n_nodes_ || k.size() != n_nodes_)
        throw std::invalid_argument("GramOperator::quad: field size mismatch");
    auto one_sided = [this](const TangentField& a, const TangentField& b) {
        if (kind_ == Kind::Dense) return a.flatten().dot(matrix_ * b.flatten());
        const auto ax = detail::dft_forward(
            Eigen::VectorXd::NullaryExpr(n_nodes_, [&](Eigen::Index i) { return a.values[static_cast<std::size_t>(i)].x(); }));
        const auto ay = detail::dft_forward(
            Eigen::VectorXd::NullaryExpr(n_nodes_, [&](Eigen::Index i) { return a.values[static_cast<std::size_t>(i)].y(); }));
        const auto bx = detail::dft_forward(
            Eigen::VectorXd::NullaryExpr(n_nodes_, [&](Eigen::Index i) { return b.values[static_cast<std::size_t>(i)].x(); }));
        const auto by = detail::dft_forward(
            Eigen::VectorXd::NullaryExpr(n_nodes_, [&](Eigen::Index i) { return b.values[static_cast<std::size_t>(i)].y(); }));
        double acc = 0.0;
        for (int j = 0; j < n_nodes_; ++j) {
            const auto s = static_cast<std::size_t>(j);
            const double re = ax[s].real() * bx[s].real() + ax[s].imag() * bx[s].imag() +
                              ay[s].real() * by[s].real() + ay[s].imag() * by[s].imag();
            acc += weights_[j] * re;
        }
        return acc / static_cast<double>(n_nodes_);
    };
    // Symmetrized so that quad(h, k) == quad(k, h) bit-for-bit.
    return 0.5 * (one_sided(h, k) + one_sided(k, h));
}

double GramOperator::norm(const TangentField& h) const { return std::sqrt(quad(h, h)); }

TangentField GramOperator::solve(const Eigen::VectorXd& covector) const {
    if (covector.size() != 2 * n_nodes_)
        throw std::invalid_argument("GramOperator::solve: covector size mismatch");
    if (kind_ == Kind::Dense) return TangentField::from_flat(llt_->solve(covector));
    Eigen::VectorXd cx(n_nodes_), cy(n_nodes_);
    for (int i = 0; i < n_nodes_; ++i) {
        cx[i] = covector[2 * i];
        cy[i] = covector[2 * i + 1];
    }
    auto sx = detail::dft_forward(cx);
    auto sy = detail::dft_forward(cy);
    for (int j = 0; j < n_nodes_; ++j) {
        sx[static_cast<std::size_t>(j)] /= weights_[j];
        sy[static_cast<std::size_t>(j)] /= weights_[j];
    }
    const Eigen::VectorXd vx = detail::dft_inverse_real(sx);
    const Eigen::VectorXd vy = detail::dft_inverse_real(sy);
    TangentField out(n_nodes_);
    for (int i = 0; i < n_nodes_; ++i) out.values[static_cast<std::size_t>(i)] = {vx[i], vy[i]};
    return out;
}

GramOperator h1_gram(const DiscreteCurve& c, double a0, double a1) {
    if (a0 <= 0.0) throw std::invalid_argument("h1_gram: a0 must be positive");
    if (a1 < 0.0) throw std::invalid_argument("h1_gram: a1 must be nonnegative");
    const int n = c.size();
    for (int i = 0; i < n; ++i) {
        if (c.edge_length(i) < 1e-12) throw DegenerateCurve("h1_gram: degenerate edge in base curve");
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        const double li = c.edge_length(i);
        const int j = (i + 1) % n;
        for (int axis = 0; axis < 2; ++axis) {
            const int ii = 2 * i + axis;
            const int jj = 2 * j + axis;
            a(ii, ii) += li * a0;
            // l * (h_{i+1} - h_i)(k_{i+1} - k_i)/l^2
            const double w = a1 / li;
            a(ii, ii) += w;
            a(jj, jj) += w;
            a(ii, jj) -= w;
            a(jj, ii) -= w;
        }
    }
    return GramOperator::dense(std::move(a), c);
}

GramOperator spectral_hs_gram(const DiscreteCurve& c, double s) {
    if (c.size() < 8) throw std::invalid_argument("spectral_hs_gram: need N >= 8");
    const int n = c.size();
    Eigen::VectorXd w(n);
    for (int j = 0; j < n; ++j) {
        const double k = static_cast<double>(detail::folded_mode(j, n));
        w[j] = std::pow(1.0 + k * k, s);
    }
    return GramOperator::spectral(std::move(w), c);
}

GramOperator l2_gram(const DiscreteCurve& c, double a0) { return h1_gram(c, a0, 0.0); }

TangentField gradient_solve(const GramOperator& g, const Eigen::VectorXd& df) { return g.solve(df); }

double arc_length(const std::vector<DiscreteCurve>& path, const MetricConstructor& metric) {
    if (path.size() < 2) throw std::invalid_argument("arc_length: need at least 2 curves");
    const int n = path.front().size();
    for (const auto& c : path)
        if (c.size() != n) throw std::invalid_argument("arc_length: all curves must share N");
    const std::size_t segments = path.size() - 1;
    std::vector<double> seg_norm(segments);
    for (std::size_t j = 0; j < segments; ++j) {
        std::vector<Eigen::Vector2d> mid(static_cast<std::size_t>(n));
        TangentField delta(n);
        for (int i = 0; i < n; ++i) {
            const Eigen::Vector2d p = path[j].node(i);
            const Eigen::Vector2d q = path[j + 1].node(i);
            mid[static_cast<std::size_t>(i)] = 0.5 * (p + q);
            delta.values[static_cast<std::size_t>(i)] = q - p;
        }
        // Midpoint metric: segment j sees the same Gram whichever way it is walked.
        const GramOperator g = metric(DiscreteCurve::unchecked(std::move(mid)));
        seg_norm[j] = g.norm(delta);
    }
    // Sum mirrored pairs first so reversing the path reproduces the value bit-for-bit.
    double total = 0.0;
    for (std::size_t k = 0; 2 * k < segments; ++k) {
        const std::size_t m = segments - 1 - k;
        total += (k == m) ? seg_norm[k] : seg_norm[k] + seg_norm[m];
    }
    return total;
}

}  // namespace diffeopt
