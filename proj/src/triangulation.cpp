#include "diffeopt/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diffeopt/discrete_curve.hpp"  // segments_intersect

namespace diffeopt {

namespace {

constexpr double kAreaRelTol = 1e-9;
constexpr double kGeomTol = 1e-12;

double triangle_signed_area(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
    return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

double polygon_area(const std::vector<Eigen::Vector2d>& poly) {
    double acc = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % n];
        acc += p.x() * q.y() - q.x() * p.y();
    }
    return 0.5 * std::abs(acc);
}

bool point_strictly_inside(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                           const Eigen::Vector2d& c) {
    const double d1 = triangle_signed_area(a, b, p);
    const double d2 = triangle_signed_area(b, c, p);
    const double d3 = triangle_signed_area(c, a, p);
    return d1 > kGeomTol && d2 > kGeomTol && d3 > kGeomTol;
}

bool point_on_segment(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    const double cross = (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x());
    if (std::abs(cross) > kGeomTol) return false;
    const double dot = (p - a).dot(b - a);
    return dot >= -kGeomTol && dot <= (b - a).squaredNorm() + kGeomTol;
}

bool point_on_polygon_boundary(const Eigen::Vector2d& p, const std::vector<Eigen::Vector2d>& poly) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (point_on_segment(p, poly[i], poly[(i + 1) % n])) return true;
    }
    return false;
}

// Open-segment crossing: true if the segments meet outside their shared endpoints.
bool edges_cross_improperly(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                            const Eigen::Vector2d& d) {
    const bool share_ac = (a - c).norm() <= kGeomTol;
    const bool share_ad = (a - d).norm() <= kGeomTol;
    const bool share_bc = (b - c).norm() <= kGeomTol;
    const bool share_bd = (b - d).norm() <= kGeomTol;
    const int shared = int(share_ac) + int(share_ad) + int(share_bc) + int(share_bd);
    if (shared >= 2) return false;  // identical edges are handled elsewhere
    if (!segments_intersect(a, b, c, d)) return false;
    if (shared == 1) {
        // Sharing one endpoint is fine unless the other endpoint lies on the edge interior.
        const Eigen::Vector2d& free_ab = (share_ac || share_ad) ? b : a;
        const Eigen::Vector2d& free_cd = (share_ac || share_bc) ? d : c;
        return point_on_segment(free_ab, c, d) || point_on_segment(free_cd, a, b);
    }
    return true;
}

}  // namespace

RefinementRule RefinementRule::midpoint4() {
    RefinementRule r;
    r.kind = Kind::Midpoint4;
    const std::array<double, 3> v0{1.0, 0.0, 0.0};
    const std::array<double, 3> v1{0.0, 1.0, 0.0};
    const std::array<double, 3> v2{0.0, 0.0, 1.0};
    const std::array<double, 3> m01{0.5, 0.5, 0.0};
    const std::array<double, 3> m12{0.0, 0.5, 0.5};
    const std::array<double, 3> m20{0.5, 0.0, 0.5};
    r.sub = {{{v0, m01, m20}, {m01, v1, m12}, {m20, m12, v2}, {m01, m12, m20}}};
    return r;
}

Triangulation2D::Triangulation2D(std::vector<Eigen::Vector2d> vertices, std::vector<Simplex2> simplices,
                                 std::vector<Eigen::Vector2d> domain_polygon, bool normalize_orientation)
    : vertices_(std::move(vertices)), simplices_(std::move(simplices)), domain_(std::move(domain_polygon)) {
    if (domain_.size() < 3) throw std::invalid_argument("Triangulation2D: domain polygon needs >= 3 vertices");
    for (auto& s : simplices_) {
        for (int k = 0; k < 3; ++k) {
            if (s.v[static_cast<std::size_t>(k)] < 0 || s.v[static_cast<std::size_t>(k)] >= n_vertices())
                throw std::invalid_argument("Triangulation2D: simplex vertex index out of range");
        }
        if (!normalize_orientation) continue;
        // Degenerate simplices are left alone and reported by validate().
        const double a = triangle_signed_area(vertices_[static_cast<std::size_t>(s.v[0])],
                                              vertices_[static_cast<std::size_t>(s.v[1])],
                                              vertices_[static_cast<std::size_t>(s.v[2])]);
        if (a < 0.0) std::swap(s.v[1], s.v[2]);
    }
}

double Triangulation2D::signed_area(int simplex) const {
    const Simplex2& s = simplices_[static_cast<std::size_t>(simplex)];
    return triangle_signed_area(vertices_[static_cast<std::size_t>(s.v[0])],
                                vertices_[static_cast<std::size_t>(s.v[1])],
                                vertices_[static_cast<std::size_t>(s.v[2])]);
}

std::vector<std::pair<int, int>> Triangulation2D::undirected_edges() const {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(simplices_.size() * 3);
    for (const Simplex2& s : simplices_) {
        for (int k = 0; k < 3; ++k) {
            const int a = s.v[static_cast<std::size_t>(k)];
            const int b = s.v[static_cast<std::size_t>((k + 1) % 3)];
            edges.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

Triangulation2D Triangulation2D::unit_square_two_triangles() {
    std::vector<Eigen::Vector2d> vs = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    std::vector<Simplex2> ss = {Simplex2{{0, 1, 2}}, Simplex2{{0, 2, 3}}};
    return Triangulation2D(vs, ss, vs);
}

Triangulation2D Triangulation2D::single_triangle(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                                 const Eigen::Vector2d& c) {
    return Triangulation2D({a, b, c}, {Simplex2{{0, 1, 2}}}, {a, b, c});
}

ValidityReport validate(const Triangulation2D& t) {
    ValidityReport report;
    report.domain_area = polygon_area(t.domain());

    // (1) non-degenerate, positively oriented simplices
    for (int i = 0; i < t.n_simplices(); ++i) {
        if (t.signed_area(i) <= kGeomTol) {
            report.nondegenerate = false;
            report.degenerate_simplices.push_back(i);
        }
        report.area_sum += t.signed_area(i);
    }
    if (!report.nondegenerate) report.notes.push_back("degenerate or inverted simplices present");

    // (2) covering by area
    if (report.domain_area <= 0.0 ||
        std::abs(report.area_sum - report.domain_area) > kAreaRelTol * std::max(1.0, report.domain_area)) {
        report.covering = false;
        report.notes.push_back("simplex areas do not sum to the domain area");
    }

    // (3) interior disjointness
    for (int i = 0; i < t.n_simplices(); ++i) {
        const Simplex2& si = t.simplices()[static_cast<std::size_t>(i)];
        std::array<Eigen::Vector2d, 3> pi{t.vertex(si.v[0]), t.vertex(si.v[1]), t.vertex(si.v[2])};
        Eigen::Vector2d lo_i = pi[0].cwiseMin(pi[1]).cwiseMin(pi[2]);
        Eigen::Vector2d hi_i = pi[0].cwiseMax(pi[1]).cwiseMax(pi[2]);
        for (int j = i + 1; j < t.n_simplices(); ++j) {
            const Simplex2& sj = t.simplices()[static_cast<std::size_t>(j)];
            std::array<Eigen::Vector2d, 3> pj{t.vertex(sj.v[0]), t.vertex(sj.v[1]), t.vertex(sj.v[2])};
            Eigen::Vector2d lo_j = pj[0].cwiseMin(pj[1]).cwiseMin(pj[2]);
            Eigen::Vector2d hi_j = pj[0].cwiseMax(pj[1]).cwiseMax(pj[2]);
            if ((lo_i - hi_j).maxCoeff() > kGeomTol || (lo_j - hi_i).maxCoeff() > kGeomTol) continue;

            bool bad = false;
            if (si.v == sj.v) bad = true;
            for (int a = 0; a < 3 && !bad; ++a) {
                for (int b = 0; b < 3 && !bad; ++b) {
                    if (edges_cross_improperly(pi[static_cast<std::size_t>(a)], pi[static_cast<std::size_t>((a + 1) % 3)],
                                               pj[static_cast<std::size_t>(b)], pj[static_cast<std::size_t>((b + 1) % 3)]))
                        bad = true;
                }
            }
            for (int k = 0; k < 3 && !bad; ++k) {
                if (point_strictly_inside(pi[static_cast<std::size_t>(k)], pj[0], pj[1], pj[2])) bad = true;
                if (point_strictly_inside(pj[static_cast<std::size_t>(k)], pi[0], pi[1], pi[2])) bad = true;
            }
            if (bad) {
                report.interior_disjoint = false;
                report.offending_pairs.emplace_back(i, j);
            }
        }
    }
    if (!report.interior_disjoint) report.notes.push_back("simplices overlap beyond shared borders");

    // (4) conformity: interior edges shared by exactly two simplices
    std::map<std::pair<int, int>, std::vector<int>> edge_owners;
    for (int i = 0; i < t.n_simplices(); ++i) {
        const Simplex2& s = t.simplices()[static_cast<std::size_t>(i)];
        for (int k = 0; k < 3; ++k) {
            const int a = s.v[static_cast<std::size_t>(k)];
            const int b = s.v[static_cast<std::size_t>((k + 1) % 3)];
            edge_owners[{std::min(a, b), std::max(a, b)}].push_back(i);
        }
    }
    for (const auto& [edge, owners] : edge_owners) {
        if (owners.size() == 2) continue;
        if (owners.size() == 1) {
            const Eigen::Vector2d mid = 0.5 * (t.vertex(edge.first) + t.vertex(edge.second));
            if (point_on_polygon_boundary(mid, t.domain())) continue;  // boundary edge
            report.conforming = false;
            report.offending_pairs.emplace_back(owners[0], owners[0]);
            report.notes.push_back("interior edge owned by a single simplex (hanging node or gap)");
        } else {
            report.conforming = false;
            for (std::size_t a = 0; a + 1 < owners.size(); ++a)
                report.offending_pairs.emplace_back(owners[a], owners[a + 1]);
            report.notes.push_back("edge shared by more than two simplices");
        }
    }
    return report;
}

Triangulation2D refine(const Triangulation2D& t, const RefinementRule& mu) {
    if (!validate(t).ok()) throw InvalidTriangulation("refine: input triangulation fails validation");
    if (mu.kind != RefinementRule::Kind::Midpoint4)
        throw std::invalid_argument("refine: unsupported refinement rule");

    std::vector<Eigen::Vector2d> vertices = t.vertices();
    std::map<std::pair<int, int>, int> midpoint_id;
    // One midpoint per undirected edge, computed once from the shared endpoints.
    for (const auto& edge : t.undirected_edges()) {
        midpoint_id[edge] = static_cast<int>(vertices.size());
        vertices.push_back(0.5 * (t.vertex(edge.first) + t.vertex(edge.second)));
    }

    auto mid = [&](int a, int b) { return midpoint_id.at({std::min(a, b), std::max(a, b)}); };

    std::vector<Simplex2> simplices;
    simplices.reserve(static_cast<std::size_t>(t.n_simplices()) * 4);
    for (const Simplex2& s : t.simplices()) {
        const int a = s.v[0], b = s.v[1], c = s.v[2];
        const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
        simplices.push_back(Simplex2{{a, ab, ca}});
        simplices.push_back(Simplex2{{ab, b, bc}});
        simplices.push_back(Simplex2{{ca, bc, c}});
        simplices.push_back(Simplex2{{ab, bc, ca}});
    }
    return Triangulation2D(std::move(vertices), std::move(simplices), t.domain());
}

std::vector<Triangulation2D> refine_sequence(const Triangulation2D& t, const RefinementRule& mu, int k) {
    if (k < 0 || k > 10) throw std::invalid_argument("refine_sequence: k must lie in [0, 10]");
    std::vector<Triangulation2D> seq;
    seq.reserve(static_cast<std::size_t>(k) + 1);
    seq.push_back(t);
    for (int level = 0; level < k; ++level) seq.push_back(refine(seq.back(), mu));
    return seq;
}

double mesh_size(const Triangulation2D& t) {
    if (t.n_simplices() == 0) throw EmptyTriangulation("mesh_size: triangulation has no simplices");
    double h = 0.0;
    for (const Simplex2& s : t.simplices()) {
        for (int k = 0; k < 3; ++k) {
            const Eigen::Vector2d& a = t.vertex(s.v[static_cast<std::size_t>(k)]);
            const Eigen::Vector2d& b = t.vertex(s.v[static_cast<std::size_t>((k + 1) % 3)]);
            h = std::max(h, (a - b).norm());
        }
    }
    return h;
}

Triangulation2D perturb_vertices(const Triangulation2D& t, const std::map<int, Eigen::Vector2d>& displacement,
                                 double scale) {
    std::vector<Eigen::Vector2d> vertices = t.vertices();
    for (const auto& [idx, d] : displacement) {
        if (idx < 0 || idx >= t.n_vertices())
            throw std::invalid_argument("perturb_vertices: vertex index out of range");
        vertices[static_cast<std::size_t>(idx)] += scale * d;
    }
    return Triangulation2D(std::move(vertices), t.simplices(), t.domain(), /*normalize_orientation=*/false);
}

double max_valid_scale(const Triangulation2D& t, const std::map<int, Eigen::Vector2d>& displacement, double hi) {
    if (!validate(t).ok()) return 0.0;
    double lo = 0.0;
    if (validate(perturb_vertices(t, displacement, hi)).ok()) return hi;
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (validate(perturb_vertices(t, displacement, mid)).ok())
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace diffeopt
