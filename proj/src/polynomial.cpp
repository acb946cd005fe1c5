#include "diffeopt/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace diffeopt {

Poly1::Poly1(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly1 Poly1::constant(double c) { return Poly1({c}); }

Poly1 Poly1::variable() { return Poly1({0.0, 1.0}); }

void Poly1::trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Poly1::eval(double t) const {
    if (coeffs_.empty()) return 0.0;
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

Poly1 Poly1::derivative() const {
    if (coeffs_.size() <= 1) return Poly1({0.0});
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
    return Poly1(std::move(d));
}

double Poly1::derivative_at_zero() const {
    return coeffs_.size() > 1 ? coeffs_[1] : 0.0;
}

int Poly1::degree() const { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }

Poly1 Poly1::operator+(const Poly1& other) const {
    std::vector<double> out(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k] += coeffs_[k];
    for (std::size_t k = 0; k < other.coeffs_.size(); ++k) out[k] += other.coeffs_[k];
    return Poly1(std::move(out));
}

Poly1 Poly1::operator*(const Poly1& other) const {
    if (coeffs_.empty() || other.coeffs_.empty()) return Poly1({0.0});
    std::vector<double> out(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
    return Poly1(std::move(out));
}

Poly1 Poly1::scaled(double s) const {
    std::vector<double> out(coeffs_);
    for (double& c : out) c *= s;
    return Poly1(std::move(out));
}

Poly1 Poly1::pow(int e) const {
    if (e < 0) throw std::invalid_argument("Poly1::pow: negative exponent");
    Poly1 acc = Poly1::constant(1.0);
    for (int k = 0; k < e; ++k) acc = acc * (*this);
    return acc;
}

MultiPoly::MultiPoly(int n_vars, std::vector<Term> terms) : n_vars_(n_vars), terms_(std::move(terms)) {
    for (auto& t : terms_) {
        if (static_cast<int>(t.exps.size()) != n_vars_)
            throw std::invalid_argument("MultiPoly: term exponent count does not match n_vars");
    }
}

MultiPoly MultiPoly::constant(int n_vars, double c) {
    return MultiPoly(n_vars, {Term{c, std::vector<int>(n_vars, 0)}});
}

MultiPoly MultiPoly::coordinate(int n_vars, int axis) {
    if (axis < 0 || axis >= n_vars) throw std::invalid_argument("MultiPoly::coordinate: axis out of range");
    std::vector<int> e(n_vars, 0);
    e[axis] = 1;
    return MultiPoly(n_vars, {Term{1.0, std::move(e)}});
}

double MultiPoly::eval(const Eigen::VectorXd& x) const {
    if (x.size() != n_vars_) throw std::invalid_argument("MultiPoly::eval: dimension mismatch");
    double acc = 0.0;
    for (const Term& t : terms_) {
        double m = t.coeff;
        for (int v = 0; v < n_vars_; ++v)
            for (int k = 0; k < t.exps[v]; ++k) m *= x[v];
        acc += m;
    }
    return acc;
}

MultiPoly MultiPoly::partial(int axis) const {
    std::vector<Term> out;
    for (const Term& t : terms_) {
        if (t.exps[axis] == 0) continue;
        Term d = t;
        d.coeff *= static_cast<double>(t.exps[axis]);
        d.exps[axis] -= 1;
        out.push_back(std::move(d));
    }
    if (out.empty()) out.push_back(Term{0.0, std::vector<int>(n_vars_, 0)});
    return MultiPoly(n_vars_, std::move(out));
}

Poly1 MultiPoly::compose(const std::vector<Poly1>& paths) const {
    if (static_cast<int>(paths.size()) != n_vars_)
        throw std::invalid_argument("MultiPoly::compose: path count does not match n_vars");
    Poly1 acc = Poly1::constant(0.0);
    for (const Term& t : terms_) {
        Poly1 m = Poly1::constant(t.coeff);
        for (int v = 0; v < n_vars_; ++v)
            if (t.exps[v] > 0) m = m * paths[v].pow(t.exps[v]);
        acc = acc + m;
    }
    return acc;
}

MultiPoly MultiPoly::lifted(int new_n_vars, int offset) const {
    if (offset < 0 || offset + n_vars_ > new_n_vars)
        throw std::invalid_argument("MultiPoly::lifted: offset out of range");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) {
        Term lifted{t.coeff, std::vector<int>(new_n_vars, 0)};
        for (int v = 0; v < n_vars_; ++v) lifted.exps[offset + v] = t.exps[v];
        out.push_back(std::move(lifted));
    }
    return MultiPoly(new_n_vars, std::move(out));
}

MultiPoly MultiPoly::operator+(const MultiPoly& other) const {
    if (n_vars_ != other.n_vars_) throw std::invalid_argument("MultiPoly::operator+: dimension mismatch");
    std::vector<Term> out = terms_;
    out.insert(out.end(), other.terms_.begin(), other.terms_.end());
    return MultiPoly(n_vars_, std::move(out));
}

MultiPoly MultiPoly::scaled(double s) const {
    std::vector<Term> out = terms_;
    for (Term& t : out) t.coeff *= s;
    return MultiPoly(n_vars_, std::move(out));
}

}  // namespace diffeopt
