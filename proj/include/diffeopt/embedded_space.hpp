#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "diffeopt/smooth_map.hpp"

namespace diffeopt {

struct DomainMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BasePointMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A diffeological subspace of R^n cut out by constraint functions and carrying
/// a finite generating family of plots. Closure of the diffeology under
/// constants, gluing and smooth precomposition is implicit; only the generators
/// are stored.
class EmbeddedSpace {
public:
    EmbeddedSpace(int ambient_dim, std::vector<SmoothMap> constraints,
                  std::vector<SmoothMap> generating_plots, std::string label);

    int ambient_dim() const { return ambient_dim_; }
    const std::vector<SmoothMap>& constraints() const { return constraints_; }
    const std::vector<SmoothMap>& generating_plots() const { return plots_; }
    const std::string& label() const { return label_; }

    /// Largest |constraint| over all constraints at x.
    double constraint_residual(const Eigen::VectorXd& x) const;

    /// Ambient coordinate functions restricted to the space; the default test
    /// family for germ equivalence.
    std::vector<SmoothMap> coordinate_functions() const;

    // Stock spaces used throughout the tests and the CLI.
    static std::shared_ptr<const EmbeddedSpace> euclidean(int n);
    static std::shared_ptr<const EmbeddedSpace> cross();   // {xy = 0} in R^2
    static std::shared_ptr<const EmbeddedSpace> circle();  // {x^2 + y^2 = 1} in R^2

private:
    int ambient_dim_;
    std::vector<SmoothMap> constraints_;
    std::vector<SmoothMap> plots_;
    std::string label_;
};

using SpacePtr = std::shared_ptr<const EmbeddedSpace>;

/// Product space: ambient dims add, constraints lift blockwise, generators are
/// pairwise products of the factors' generators.
SpacePtr make_product(const SpacePtr& a, const SpacePtr& b);

/// A smooth path through a base point of an embedded space, carrying the
/// path-derivative functional d_c.
class PathGerm {
public:
    PathGerm(Eigen::VectorXd base_point, SmoothMap path, SpacePtr space);

    const Eigen::VectorXd& base_point() const { return base_; }
    const SmoothMap& path() const { return path_; }
    const SpacePtr& space() const { return space_; }

    Eigen::VectorXd at(double t) const;
    /// Ambient velocity c'(0); exact for polynomial paths, 5-point stencil otherwise.
    Eigen::VectorXd velocity() const;

private:
    Eigen::VectorXd base_;
    SmoothMap path_;
    SpacePtr space_;
};

/// d_c(f) = d/dt f(c(t)) at t = 0. Exact when both f and the path are
/// polynomial, otherwise a 5-point central difference with h = 1e-4.
double path_derivative(const SmoothMap& f, const PathGerm& c);

/// Germ equivalence through a finite family of test functions:
/// |d_{c1}(f) - d_{c2}(f)| <= 1e-7 for every f.
bool germs_equivalent(const PathGerm& c1, const PathGerm& c2, const std::vector<SmoothMap>& test_functions);

struct ConeProbeResult {
    std::vector<Eigen::VectorXd> class_velocities;  // one ambient velocity per class
    std::vector<int> class_of_path;                 // class index per sample path
};

/// Partition sample paths based at x by germ equivalence under the ambient
/// coordinate functions; representatives of the observed internal-external cone.
ConeProbeResult probe_cone(const SpacePtr& space, const Eigen::VectorXd& x,
                           const std::vector<PathGerm>& sample_paths);

}  // namespace diffeopt
