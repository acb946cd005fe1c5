#include <cmath>
#include <random>

#include <doctest.h>

#include "diffeopt/embedded_space.hpp"

using namespace diffeopt;

namespace {

Eigen::VectorXd vec2(double x, double y) {
    Eigen::VectorXd v(2);
    v << x, y;
    return v;
}

// Path along one axis of the cross: t -> (p(t), 0) or (0, p(t)).
PathGerm axis_germ(const SpacePtr& cross, int axis, const Poly1& p) {
    std::vector<Poly1> comps(2, Poly1::constant(0.0));
    comps[static_cast<std::size_t>(axis)] = p;
    return PathGerm(vec2(0, 0), SmoothMap::polynomial_path(std::move(comps)), cross);
}

}  // namespace

TEST_CASE("path_derivative on polynomial data matches hand-differentiated composites") {
    auto plane = EmbeddedSpace::euclidean(2);
    auto cross = EmbeddedSpace::cross();

    const SmoothMap f_x = SmoothMap::coordinate(2, 0);
    const SmoothMap f_xy = SmoothMap::polynomial({MultiPoly(2, {{1.0, {1, 1}}})});
    const SmoothMap f_quad = SmoothMap::polynomial({MultiPoly(2, {{1.0, {2, 0}}, {3.0, {0, 1}}})});  // x^2 + 3y

    const PathGerm along_x = axis_germ(cross, 0, Poly1::variable());
    CHECK(path_derivative(f_x, along_x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(path_derivative(f_xy, along_x) == doctest::Approx(0.0).epsilon(1e-12));

    // c(t) = (t, t^2): d/dt (t^2 + 3 t^2) = 0 at t = 0; c(t) = (t, t): slope 3.
    const PathGerm parabola(vec2(0, 0), SmoothMap::polynomial_path({Poly1::variable(), Poly1({0.0, 0.0, 1.0})}),
                            plane);
    const PathGerm diagonal(vec2(0, 0), SmoothMap::polynomial_path({Poly1::variable(), Poly1::variable()}), plane);
    CHECK(path_derivative(f_quad, parabola) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(path_derivative(f_quad, diagonal) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("path_derivative rejects dimension mismatches") {
    auto plane = EmbeddedSpace::euclidean(2);
    const PathGerm c(vec2(0, 0), SmoothMap::polynomial_path({Poly1::variable(), Poly1::constant(0.0)}), plane);
    const SmoothMap f3 = SmoothMap::coordinate(3, 0);
    CHECK_THROWS_AS(path_derivative(f3, c), DomainMismatch);
}

TEST_CASE("path_derivative is linear in f") {
    auto plane = EmbeddedSpace::euclidean(2);
    const PathGerm c(vec2(0, 0), SmoothMap::polynomial_path({Poly1({0.0, 1.0, -0.5}), Poly1({0.0, 2.0, 1.0})}),
                     plane);
    const SmoothMap f = SmoothMap::polynomial({MultiPoly(2, {{1.0, {2, 0}}, {2.0, {0, 1}}})});
    const SmoothMap g = SmoothMap::polynomial({MultiPoly(2, {{1.0, {1, 1}}, {-1.0, {1, 0}}})});
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        const double a = coeff(rng), b = coeff(rng);
        const SmoothMap combo = SmoothMap::polynomial(
            {f.poly_components()[0].scaled(a) + g.poly_components()[0].scaled(b)});
        const double lhs = path_derivative(combo, c);
        const double rhs = a * path_derivative(f, c) + b * path_derivative(g, c);
        CHECK(std::abs(lhs - rhs) <= 1e-8);
    }
}

TEST_CASE("germ equivalence on the cross: axes are distinct cone directions") {
    auto cross = EmbeddedSpace::cross();
    const auto coords = cross->coordinate_functions();

    const PathGerm ex = axis_germ(cross, 0, Poly1::variable());
    const PathGerm ex_again = axis_germ(cross, 0, Poly1::variable());
    const PathGerm ey = axis_germ(cross, 1, Poly1::variable());
    const PathGerm ex_fast = axis_germ(cross, 0, Poly1({0.0, 2.0}));

    CHECK(germs_equivalent(ex, ex_again, coords));
    CHECK_FALSE(germs_equivalent(ex, ey, coords));
    CHECK_FALSE(germs_equivalent(ex, ex_fast, coords));
}

TEST_CASE("germ equivalence requires matching base points") {
    auto plane = EmbeddedSpace::euclidean(2);
    const PathGerm at_origin(vec2(0, 0), SmoothMap::polynomial_path({Poly1::variable(), Poly1::constant(0.0)}),
                             plane);
    const PathGerm elsewhere(vec2(1, 0),
                             SmoothMap::polynomial_path({Poly1({1.0, 1.0}), Poly1::constant(0.0)}), plane);
    CHECK_THROWS_AS(germs_equivalent(at_origin, elsewhere, plane->coordinate_functions()),
                    BasePointMismatch);
}

TEST_CASE("on open subsets of R^n germ equivalence is velocity equality") {
    auto plane = EmbeddedSpace::euclidean(2);
    const auto coords = plane->coordinate_functions();
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coeff(-1.5, 1.5);
    for (int trial = 0; trial < 40; ++trial) {
        const double vx = coeff(rng), vy = coeff(rng);
        const Poly1 px({0.0, vx, coeff(rng)});
        const Poly1 py({0.0, vy, coeff(rng)});
        const PathGerm a(vec2(0, 0), SmoothMap::polynomial_path({px, py}), plane);

        // same velocity, different higher order
        const PathGerm b(vec2(0, 0),
                         SmoothMap::polynomial_path({Poly1({0.0, vx, coeff(rng), coeff(rng)}),
                                                     Poly1({0.0, vy, coeff(rng)})}),
                         plane);
        // generic distinct velocity
        const PathGerm c(vec2(0, 0),
                         SmoothMap::polynomial_path({Poly1({0.0, vx + 0.5 + std::abs(coeff(rng))}),
                                                     Poly1({0.0, vy})}),
                         plane);

        const bool ab = germs_equivalent(a, b, coords);
        const bool ac = germs_equivalent(a, c, coords);
        CHECK(ab == ((a.velocity() - b.velocity()).norm() <= 1e-6));
        CHECK(ac == ((a.velocity() - c.velocity()).norm() <= 1e-6));
        CHECK(ab);
        CHECK_FALSE(ac);
    }
}

TEST_CASE("germ equivalence is reflexive, symmetric and transitive on sampled germs") {
    auto cross = EmbeddedSpace::cross();
    const auto coords = cross->coordinate_functions();
    std::vector<PathGerm> germs;
    for (double speed : {1.0, 2.0, -1.0}) {
        for (int axis : {0, 1}) {
            germs.push_back(axis_germ(cross, axis, Poly1({0.0, speed})));
            germs.push_back(axis_germ(cross, axis, Poly1({0.0, speed, 0.7})));  // same germ, curved
        }
    }
    for (const auto& a : germs) CHECK(germs_equivalent(a, a, coords));
    for (const auto& a : germs)
        for (const auto& b : germs) CHECK(germs_equivalent(a, b, coords) == germs_equivalent(b, a, coords));
    for (const auto& a : germs)
        for (const auto& b : germs)
            for (const auto& c : germs) {
                if (germs_equivalent(a, b, coords) && germs_equivalent(b, c, coords))
                    CHECK(germs_equivalent(a, c, coords));
            }
}

TEST_CASE("products: constraints lift and plots stay inside the zero set") {
    auto cross = EmbeddedSpace::cross();
    // point {0} in R^1 = zero set of the identity coordinate
    auto point = std::make_shared<EmbeddedSpace>(
        1, std::vector<SmoothMap>{SmoothMap::coordinate(1, 0)},
        std::vector<SmoothMap>{SmoothMap::polynomial_path({Poly1::constant(0.0)})}, "point");
    auto prod = make_product(cross, point);
    CHECK(prod->ambient_dim() == 3);
    CHECK(prod->constraints().size() == 2);
    Eigen::VectorXd p(3);
    p << 2.0, 0.0, 0.0;  // on the x-axis sheet, z = 0
    CHECK(prod->constraint_residual(p) == doctest::Approx(0.0).epsilon(1e-12));
    p << 1.0, 1.0, 0.0;  // off the cross
    CHECK(prod->constraint_residual(p) > 0.5);

    auto line = EmbeddedSpace::euclidean(1);
    auto plane = make_product(line, line);
    CHECK(plane->ambient_dim() == 2);
    CHECK(plane->constraints().empty());
    CHECK(plane->generating_plots().size() == 1);

    // torus: S^1 x S^1 in R^4; sample the product plot on a grid
    auto torus = make_product(EmbeddedSpace::circle(), EmbeddedSpace::circle());
    CHECK(torus->ambient_dim() == 4);
    CHECK(torus->constraints().size() == 2);
    const SmoothMap& plot = torus->generating_plots().front();
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            Eigen::VectorXd u(2);
            u << -3.0 + 0.6 * i, -3.0 + 0.6 * j;
            CHECK(torus->constraint_residual(plot(u)) <= 1e-9);
        }
    }
}

TEST_CASE("probe_cone separates velocities into classes") {
    auto cross = EmbeddedSpace::cross();

    SUBCASE("axis paths at distinct speeds give one class each") {
        std::vector<PathGerm> paths;
        for (double speed : {1.0, -1.0, 2.0, -2.0}) {
            paths.push_back(axis_germ(cross, 0, Poly1({0.0, speed})));
            paths.push_back(axis_germ(cross, 1, Poly1({0.0, speed})));
        }
        const ConeProbeResult cone = probe_cone(cross, vec2(0, 0), paths);
        CHECK(cone.class_velocities.size() == 8);
        // brute-force pairwise equivalence agrees with the partition
        const auto coords = cross->coordinate_functions();
        for (std::size_t i = 0; i < paths.size(); ++i)
            for (std::size_t j = 0; j < paths.size(); ++j)
                CHECK(germs_equivalent(paths[i], paths[j], coords) ==
                      (cone.class_of_path[i] == cone.class_of_path[j]));
    }

    SUBCASE("circle paths with different angular speeds") {
        auto circle = EmbeddedSpace::circle();
        std::vector<PathGerm> paths;
        for (double a : {1.0, 2.0}) {
            SmoothMap path(1, 2,
                           [a](const Eigen::VectorXd& t) {
                               Eigen::VectorXd x(2);
                               x << std::cos(a * t[0]), std::sin(a * t[0]);
                               return x;
                           },
                           4);
            paths.emplace_back(vec2(1, 0), path, circle);
        }
        const ConeProbeResult cone = probe_cone(circle, vec2(1, 0), paths);
        CHECK(cone.class_velocities.size() == 2);
        CHECK((cone.class_velocities[0] - vec2(0, 1)).norm() <= 1e-6);
        CHECK((cone.class_velocities[1] - vec2(0, 2)).norm() <= 1e-6);
    }

    SUBCASE("a single constant path is one class with zero velocity") {
        std::vector<PathGerm> paths{axis_germ(cross, 0, Poly1::constant(0.0))};
        const ConeProbeResult cone = probe_cone(cross, vec2(0, 0), paths);
        CHECK(cone.class_velocities.size() == 1);
        CHECK(cone.class_velocities[0].norm() <= 1e-12);
    }
}

TEST_CASE("every smooth path through the origin of the cross has an axis velocity") {
    auto cross = EmbeddedSpace::cross();
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        const int axis = trial % 2;
        Poly1 p({0.0, coeff(rng), coeff(rng), coeff(rng)});
        const PathGerm germ = axis_germ(cross, axis, p);
        const Eigen::VectorXd v = germ.velocity();
        const double off_axis = axis == 0 ? std::abs(v[1]) : std::abs(v[0]);
        CHECK(off_axis <= 1e-6);
    }
}

TEST_CASE("PathGerm construction enforces base point and constraints") {
    auto cross = EmbeddedSpace::cross();
    CHECK_THROWS_AS(PathGerm(vec2(0, 0),
                             SmoothMap::polynomial_path({Poly1({0.5, 1.0}), Poly1::constant(0.0)}), cross),
                    std::invalid_argument);  // path(0) != base
    CHECK_THROWS_AS(PathGerm(vec2(0, 0),
                             SmoothMap::polynomial_path({Poly1::variable(), Poly1::variable()}), cross),
                    std::invalid_argument);  // leaves the cross
}
