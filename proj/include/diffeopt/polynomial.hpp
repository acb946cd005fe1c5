#pragma once

#include <vector>

#include <Eigen/Dense>

namespace diffeopt {

/// Univariate polynomial p(t) = sum_k coeffs[k] t^k.
class Poly1 {
public:
    Poly1() = default;
    explicit Poly1(std::vector<double> coeffs);

    static Poly1 constant(double c);
    static Poly1 variable();  // p(t) = t

    double eval(double t) const;
    Poly1 derivative() const;
    double derivative_at_zero() const;

    int degree() const;
    const std::vector<double>& coeffs() const { return coeffs_; }

    Poly1 operator+(const Poly1& other) const;
    Poly1 operator*(const Poly1& other) const;
    Poly1 scaled(double s) const;
    Poly1 pow(int e) const;

private:
    void trim();
    std::vector<double> coeffs_;
};

/// Multivariate polynomial over n variables, stored as a monomial list.
class MultiPoly {
public:
    struct Term {
        double coeff = 0.0;
        std::vector<int> exps;  // one exponent per variable
    };

    MultiPoly() = default;
    MultiPoly(int n_vars, std::vector<Term> terms);

    static MultiPoly constant(int n_vars, double c);
    static MultiPoly coordinate(int n_vars, int axis);

    int n_vars() const { return n_vars_; }
    const std::vector<Term>& terms() const { return terms_; }

    double eval(const Eigen::VectorXd& x) const;
    MultiPoly partial(int axis) const;

    /// Substitute x_i := paths[i](t); exact composition into a univariate polynomial.
    Poly1 compose(const std::vector<Poly1>& paths) const;

    /// Re-embed into a larger variable space, shifting every variable index by `offset`.
    MultiPoly lifted(int new_n_vars, int offset) const;

    MultiPoly operator+(const MultiPoly& other) const;
    MultiPoly scaled(double s) const;

private:
    int n_vars_ = 0;
    std::vector<Term> terms_;
};

}  // namespace diffeopt
