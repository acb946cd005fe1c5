#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace diffeopt {

struct InvalidTriangulation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EmptyTriangulation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Oriented 2-simplex referencing triangulation vertices; the affine map
/// Delta_2 -> R^2 is determined by the three vertex positions.
struct Simplex2 {
    std::array<int, 3> v{0, 0, 0};
};

/// Barycentric refinement rule: a fixed triangulation of the standard simplex
/// whose composition with each mesh simplex produces the refined mesh.
struct RefinementRule {
    enum class Kind { Midpoint4 };
    Kind kind = Kind::Midpoint4;
    // 4 sub-simplices x 3 vertices x barycentric coordinates.
    std::array<std::array<std::array<double, 3>, 3>, 4> sub{};

    static RefinementRule midpoint4();
};

struct ValidityReport {
    bool nondegenerate = true;    // condition (1): embedded, positively oriented simplices
    bool covering = true;         // condition (2): simplex areas sum to the domain area
    bool interior_disjoint = true;  // condition (3): intersections only along borders
    bool conforming = true;       // condition (4): interior edges shared by exactly two simplices
    std::vector<int> degenerate_simplices;
    std::vector<std::pair<int, int>> offending_pairs;
    double area_sum = 0.0;
    double domain_area = 0.0;
    std::vector<std::string> notes;

    bool ok() const { return nondegenerate && covering && interior_disjoint && conforming; }
};

/// Affine triangulation of a polygonal planar domain, identified by vertex
/// positions plus connectivity. Simplex orientation is normalized positive at
/// construction.
class Triangulation2D {
public:
    /// `normalize_orientation` flips negatively oriented simplices at build
    /// time; vertex-motion operations pass false so inversions stay visible
    /// to validate().
    Triangulation2D(std::vector<Eigen::Vector2d> vertices, std::vector<Simplex2> simplices,
                    std::vector<Eigen::Vector2d> domain_polygon, bool normalize_orientation = true);

    int n_vertices() const { return static_cast<int>(vertices_.size()); }
    int n_simplices() const { return static_cast<int>(simplices_.size()); }
    const std::vector<Eigen::Vector2d>& vertices() const { return vertices_; }
    const std::vector<Simplex2>& simplices() const { return simplices_; }
    const std::vector<Eigen::Vector2d>& domain() const { return domain_; }
    bool affine_flag() const { return true; }

    const Eigen::Vector2d& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
    double signed_area(int simplex) const;
    /// Undirected edges as (min, max) vertex pairs.
    std::vector<std::pair<int, int>> undirected_edges() const;

    static Triangulation2D unit_square_two_triangles();
    static Triangulation2D single_triangle(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                           const Eigen::Vector2d& c);

private:
    std::vector<Eigen::Vector2d> vertices_;
    std::vector<Simplex2> simplices_;
    std::vector<Eigen::Vector2d> domain_;
};

ValidityReport validate(const Triangulation2D& t);

/// One refinement pass: each simplex composed with the rule's sub-maps; each
/// edge midpoint is computed once per undirected edge so shared new vertices
/// coincide exactly. Throws InvalidTriangulation unless validate(t) passes.
Triangulation2D refine(const Triangulation2D& t, const RefinementRule& mu);

/// [t, mu(t), ..., mu^k(t)]; every element passes validate. Requires k <= 10.
std::vector<Triangulation2D> refine_sequence(const Triangulation2D& t, const RefinementRule& mu, int k);

/// Maximum edge length; throws EmptyTriangulation.
double mesh_size(const Triangulation2D& t);

/// Move vertices by scale * displacement (indices absent from the map stay
/// fixed). Validity is not guaranteed; callers re-validate.
Triangulation2D perturb_vertices(const Triangulation2D& t, const std::map<int, Eigen::Vector2d>& displacement,
                                 double scale);

/// Largest scale in [0, hi] keeping perturb_vertices valid, by bisection to 1e-6.
double max_valid_scale(const Triangulation2D& t, const std::map<int, Eigen::Vector2d>& displacement, double hi);

}  // namespace diffeopt
