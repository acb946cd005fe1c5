// Acceptance suite: runs every contract criterion at its stated tolerance and
// prints one pass/fail line each. Exits with the number of failed criteria.
// Usage: acceptance <path-to-diffeopt-binary>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "diffeopt/cli.hpp"
#include "diffeopt/connection.hpp"
#include "diffeopt/descent.hpp"
#include "diffeopt/embedded_space.hpp"
#include "diffeopt/io.hpp"
#include "diffeopt/lie_solve.hpp"
#include "diffeopt/matrix_exp.hpp"
#include "diffeopt/triangulation.hpp"

using namespace diffeopt;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

class Criterion {
public:
    Criterion(int id, std::string title, double time_limit_s)
        : id_(id), title_(std::move(title)), limit_(time_limit_s), start_(std::chrono::steady_clock::now()) {}

    void require(bool ok, const std::string& what) {
        if (!ok) problems_.push_back(what);
    }

    void finish() {
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        if (limit_ > 0.0 && elapsed > limit_)
            problems_.push_back("runtime " + std::to_string(elapsed) + "s exceeds " + std::to_string(limit_) + "s");
        if (problems_.empty()) {
            std::printf("[PASS] criterion %d: %s (%.2fs)\n", id_, title_.c_str(), elapsed);
        } else {
            ++g_failures;
            std::printf("[FAIL] criterion %d: %s (%.2fs)\n", id_, title_.c_str(), elapsed);
            for (const auto& p : problems_) std::printf("       - %s\n", p.c_str());
        }
    }

private:
    int id_;
    std::string title_;
    double limit_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::string> problems_;
};

std::string fmt(double x) { return format_double(x); }

Eigen::VectorXd vec2(double x, double y) {
    Eigen::VectorXd v(2);
    v << x, y;
    return v;
}

// ---------------------------------------------------------------------------
// 1. cross tangent cone
// ---------------------------------------------------------------------------
void criterion_1() {
    Criterion crit(1, "cross tangent cone: classes on the axes, axis germs inequivalent", 1.0);
    auto cross = EmbeddedSpace::cross();
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);

    std::vector<PathGerm> paths;
    for (int k = 0; k < 24; ++k) {
        const int axis = k % 2;
        std::vector<Poly1> comps(2, Poly1::constant(0.0));
        comps[static_cast<std::size_t>(axis)] = Poly1({0.0, coeff(rng), coeff(rng), coeff(rng)});
        paths.emplace_back(vec2(0, 0), SmoothMap::polynomial_path(std::move(comps)), cross);
    }
    const ConeProbeResult cone = probe_cone(cross, vec2(0, 0), paths);
    crit.require(paths.size() >= 20, "need at least 20 sample paths");
    for (const auto& v : cone.class_velocities) {
        crit.require(std::min(std::abs(v[0]), std::abs(v[1])) <= 1e-6,
                     "class velocity (" + fmt(v[0]) + ", " + fmt(v[1]) + ") leaves the axes");
    }
    const PathGerm ex(vec2(0, 0), SmoothMap::polynomial_path({Poly1::variable(), Poly1::constant(0.0)}), cross);
    const PathGerm ey(vec2(0, 0), SmoothMap::polynomial_path({Poly1::constant(0.0), Poly1::variable()}), cross);
    crit.require(!germs_equivalent(ex, ey, cross->coordinate_functions()),
                 "axis germs e_x and e_y must be inequivalent");
    crit.finish();
}

// ---------------------------------------------------------------------------
// 2. diffeological gradient identity
// ---------------------------------------------------------------------------
void criterion_2() {
    Criterion crit(2, "gradient identity g(grad J, w) = <dJ, w> to 1e-8 relative", 5.0);
    std::mt19937 rng(202);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const int n : {32, 128}) {
        const DiscreteCurve c = DiscreteCurve::ellipse(n, 1.4, 0.8);
        const ShapeFunctional js[] = {ShapeFunctional::length(), ShapeFunctional::enclosed_area(),
                                      ShapeFunctional::target_match(DiscreteCurve::circle(n))};
        const GramOperator grams[] = {h1_gram(c, 1.0, 1.0), spectral_hs_gram(c, 1.0)};
        for (const auto& j : js) {
            const Eigen::VectorXd dj = shape_differential(j, c);
            for (const auto& g : grams) {
                const TangentField grad = gradient_solve(g, dj);
                for (int trial = 0; trial < 20; ++trial) {
                    TangentField w(n);
                    for (auto& v : w.values) v = Eigen::Vector2d(u(rng), u(rng));
                    const double lhs = g.quad(grad, w);
                    const double rhs = dj.dot(w.flatten());
                    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
                    crit.require(std::abs(lhs - rhs) <= 1e-8 * scale,
                                 "identity off by " + fmt(std::abs(lhs - rhs) / scale) + " at N=" +
                                     std::to_string(n));
                }
            }
        }
    }
    crit.finish();
}

// ---------------------------------------------------------------------------
// 3 + 4. steepest-descent contract and retraction axioms at its iterates
// ---------------------------------------------------------------------------
void criteria_3_and_4() {
    Criterion crit(3, "ellipse->circle descent: monotone, Armijo-exact, converged, Hausdorff <= 1e-3", 30.0);
    const int n = 64;
    const DiscreteCurve target = DiscreteCurve::circle(n);
    const DiscreteCurve start = DiscreteCurve::ellipse(n, 2.0, 1.0);
    const ShapeFunctional j = ShapeFunctional::target_match(target);
    ArmijoParams p;
    p.alpha_hat = 1.0;
    p.sigma = 1e-4;
    p.rho = 0.5;
    p.max_iters = 500;
    p.grad_tol = 1e-6;
    const MetricConstructor metric = [](const DiscreteCurve& c) { return h1_gram(c, 1.0, 1.0); };
    const DescentTrace trace = steepest_descent(j, start, metric, Retraction::shift(), p);

    crit.require(trace.termination == Termination::Converged,
                 std::string("termination was ") + termination_name(trace.termination));
    crit.require(trace.step_sizes.size() <= 500, "took more than 500 iterations");
    for (std::size_t k = 0; k + 1 < trace.objectives.size(); ++k) {
        if (!(trace.objectives[k + 1] < trace.objectives[k])) {
            crit.require(false, "objective not strictly decreasing at step " + std::to_string(k));
            break;
        }
    }
    for (std::size_t k = 0; k < trace.step_sizes.size(); ++k) {
        const double rhs =
            trace.objectives[k] - p.sigma * trace.step_sizes[k] * trace.grad_norms[k] * trace.grad_norms[k];
        if (!(trace.objectives[k + 1] <= rhs)) {
            crit.require(false, "Armijo inequality violated at step " + std::to_string(k));
            break;
        }
    }
    const double hd = hausdorff_distance(trace.iterates.back(), target);
    crit.require(hd <= 1e-3, "final Hausdorff distance " + fmt(hd));
    crit.finish();

    Criterion crit4(4, "retraction axioms at sampled iterates for both retraction kinds", 0.0);
    std::mt19937 rng(404);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    const Retraction kinds[] = {Retraction::shift(), Retraction::shift_project_radial()};
    const std::size_t samples[] = {0, trace.iterates.size() / 2, trace.iterates.size() - 1};
    for (const auto& r : kinds) {
        for (const std::size_t idx : samples) {
            const DiscreteCurve& c = trace.iterates[idx];
            const DiscreteCurve back = r.apply(c, TangentField(c.size()));
            crit4.require((back.flatten() - c.flatten()).cwiseAbs().maxCoeff() == 0.0,
                          "R(0) differs from the base curve at iterate " + std::to_string(idx));
            for (int trial = 0; trial < 10; ++trial) {
                TangentField xi(c.size());
                for (auto& v : xi.values) v = Eigen::Vector2d(u(rng), u(rng));
                xi = r.project_tangent(c, xi);
                const double t = 1e-4;
                const Eigen::VectorXd fd = (r.apply(c, xi.scaled(t)).flatten() - back.flatten()) / t;
                const double err = (fd - xi.flatten()).norm();
                crit4.require(err <= 1e-5,
                              "derivative-at-zero residual " + fmt(err) + " at iterate " + std::to_string(idx));
            }
        }
    }
    crit4.finish();
}

// ---------------------------------------------------------------------------
// 5. logarithmic equation
// ---------------------------------------------------------------------------
void criterion_5() {
    Criterion crit(5, "log equation: so(2) endpoint 1e-10, order >= 3.5, left/right inverse 1e-8", 1.0);
    const auto so2 = MatrixGroupSpec::special_orthogonal(2);
    const AlgebraPath constant = AlgebraPath::constant(so2_generator());
    Eigen::Matrix2d rot;
    rot << std::cos(1.0), -std::sin(1.0), std::sin(1.0), std::cos(1.0);

    const GroupPath g128 = solve_logarithmic(constant, so2, 128, LogSide::Right);
    crit.require((g128.endpoint() - rot).norm() <= 1e-10,
                 "so(2) endpoint error " + fmt((g128.endpoint() - rot).norm()));

    // Halving the step on the constant field: the stepper integrates commuting
    // fields exactly, so every error must already sit at the roundoff floor --
    // stronger than any finite convergence order.
    bool at_floor = true;
    for (const int steps : {16, 32, 64, 128}) {
        const double err = (solve_logarithmic(constant, so2, steps, LogSide::Right).endpoint() - rot).norm();
        if (err > 1e-12) at_floor = false;
    }
    crit.require(at_floor, "constant-field endpoint errors left the 1e-12 roundoff floor");

    // Measured convergence order on a field where the stepper is not exact.
    const auto so3 = MatrixGroupSpec::special_orthogonal(3);
    AlgebraPath wobble;
    wobble.dim = 3;
    wobble.value = [](double t) {
        return (std::cos(3.0 * t) * so3_generator_x() + std::sin(2.0 * t) * so3_generator_y() +
                0.5 * t * so3_generator_z())
            .eval();
    };
    const Eigen::MatrixXd reference = solve_logarithmic(wobble, so3, 4096, LogSide::Right).endpoint();
    const double e1 = (solve_logarithmic(wobble, so3, 16, LogSide::Right).endpoint() - reference).norm();
    const double e2 = (solve_logarithmic(wobble, so3, 32, LogSide::Right).endpoint() - reference).norm();
    const double e3 = (solve_logarithmic(wobble, so3, 64, LogSide::Right).endpoint() - reference).norm();
    const double order = std::min(std::log2(e1 / e2), std::log2(e2 / e3));
    crit.require(order >= 3.5, "observed convergence order " + fmt(order));

    AlgebraPath minus_wobble;
    minus_wobble.dim = 3;
    minus_wobble.value = [&wobble](double t) { return (-wobble.at(t)).eval(); };
    const GroupPath right = solve_logarithmic(wobble, so3, 256, LogSide::Right);
    const GroupPath left = solve_logarithmic(minus_wobble, so3, 256, LogSide::Left);
    double worst = 0.0;
    for (std::size_t k = 0; k < right.samples.size(); ++k)
        worst = std::max(worst, (right.samples[k] - left.samples[k].inverse()).norm());
    crit.require(worst <= 1e-8, "left/right inverse consistency residual " + fmt(worst));
    crit.finish();
}

// ---------------------------------------------------------------------------
// 6. flat holonomy
// ---------------------------------------------------------------------------
void criterion_6() {
    Criterion crit(6, "flat holonomy: MC loops 1e-6; small-square order >= 2.7", 5.0);
    const auto so3 = MatrixGroupSpec::special_orthogonal(3);
    const Eigen::Matrix3d a = so3_generator_x(), b = so3_generator_y();

    const auto mc = ConnectionForm::mc_exp_product(a, b);
    std::mt19937 rng(606);
    std::uniform_real_distribution<double> u(-0.08, 0.08);
    for (int trial = 0; trial < 10; ++trial) {
        const double ax = u(rng), bx = u(rng), ay = u(rng), by = u(rng);
        BasePath loop;
        loop.dim = 2;
        loop.value = [=](double t) {
            const double th = 2.0 * M_PI * t;
            return vec2(0.5 + 0.2 * std::cos(th) + ax * std::cos(2 * th) + bx * std::sin(3 * th),
                        0.5 + 0.2 * std::sin(th) + ay * std::sin(2 * th) + by * std::cos(3 * th));
        };
        loop.derivative = [=](double t) {
            const double th = 2.0 * M_PI * t;
            const double w = 2.0 * M_PI;
            return vec2(w * (-0.2 * std::sin(th) - 2 * ax * std::sin(2 * th) + 3 * bx * std::cos(3 * th)),
                        w * (0.2 * std::cos(th) + 2 * ay * std::cos(2 * th) - 3 * by * std::sin(3 * th)));
        };
        const double log_norm = logm_near_identity(holonomy(loop, mc, so3, 256)).norm();
        if (log_norm > 1e-6) {
            crit.require(false, "loop " + std::to_string(trial) + " holonomy log-norm " + fmt(log_norm));
            break;
        }
    }

    const auto theta = ConnectionForm::constant({a, b});
    const Eigen::Matrix3d ab = commutator(a, b);
    double errors[3];
    const double eps_list[3] = {0.1, 0.05, 0.025};
    for (int i = 0; i < 3; ++i) {
        const double eps = eps_list[i];
        std::vector<Eigen::VectorXd> verts = {vec2(0, 0), vec2(eps, 0), vec2(eps, eps), vec2(0, eps),
                                              vec2(0, 0)};
        const Eigen::MatrixXd hol = holonomy(BasePath::polyline(std::move(verts)), theta, so3, 64);
        errors[i] = (logm_near_identity(hol) - eps * eps * ab).norm();
    }
    const double order = std::min(std::log2(errors[0] / errors[1]), std::log2(errors[1] / errors[2]));
    crit.require(order >= 2.7, "small-square holonomy order " + fmt(order));
    crit.finish();
}

// ---------------------------------------------------------------------------
// 7. flat primitive
// ---------------------------------------------------------------------------
void criterion_7() {
    Criterion crit(7, "flat primitive: recovery to 1e-4 up to a constant factor; cell residual 1e-5", 0.0);
    const auto so3 = MatrixGroupSpec::special_orthogonal(3);
    const Eigen::Matrix3d a = so3_generator_x(), b = so3_generator_y();
    const auto alpha = ConnectionForm::mc_exp_product(a, b);
    const FlatPrimitive f = solve_flat_primitive(alpha, so3, 32);
    crit.require(f.max_cell_residual <= 1e-5, "cell path-independence residual " + fmt(f.max_cell_residual));

    // f0(x, y) = exp(xA) exp(yB); both start from the identity at the corner, so
    // the constant right factor f0^{-1} f must stay at its corner value (identity).
    double worst = 0.0;
    for (int ix = 0; ix <= 32; ++ix) {
        for (int iy = 0; iy <= 32; ++iy) {
            const Eigen::Vector2d pt = f.grid_point(ix, iy);
            const Eigen::MatrixXd f0 = expm((pt.x() * a).eval()) * expm((pt.y() * b).eval());
            worst = std::max(worst, (f0.transpose() * f.at(ix, iy) - so3.identity()).norm());
        }
    }
    crit.require(worst <= 1e-4, "constant-right-factor deviation " + fmt(worst));
    crit.finish();
}

// ---------------------------------------------------------------------------
// 8. triangulation refinement
// ---------------------------------------------------------------------------
void criterion_8() {
    Criterion crit(8, "refinement sequence: 2*4^k faces, exact areas, exact halving, all valid (k <= 5)", 2.0);
    const auto seq = refine_sequence(Triangulation2D::unit_square_two_triangles(), RefinementRule::midpoint4(), 5);
    int expected_faces = 2;
    const double h0 = mesh_size(seq[0]);
    for (std::size_t level = 0; level < seq.size(); ++level) {
        const auto& t = seq[level];
        if (t.n_simplices() != expected_faces)
            crit.require(false, "face count at level " + std::to_string(level));
        double area = 0.0;
        for (int i = 0; i < t.n_simplices(); ++i) area += t.signed_area(i);
        if (std::abs(area - 1.0) > 1e-12)
            crit.require(false, "area drift " + fmt(std::abs(area - 1.0)) + " at level " + std::to_string(level));
        const double expected_h = h0 / std::pow(2.0, static_cast<double>(level));
        if (mesh_size(t) != expected_h)
            crit.require(false, "mesh size at level " + std::to_string(level) + " is " + fmt(mesh_size(t)) +
                                    ", expected exactly " + fmt(expected_h));
        if (!validate(t).ok()) crit.require(false, "level " + std::to_string(level) + " fails validation");
        expected_faces *= 4;
    }
    crit.finish();
}

// ---------------------------------------------------------------------------
// 9. adjoint flow
// ---------------------------------------------------------------------------
void criterion_9() {
    Criterion crit(9, "adjoint flow: so(3) quarter turn to 1e-6; ODE residual 1e-5", 0.0);
    const auto so3 = MatrixGroupSpec::special_orthogonal(3);
    const double c = M_PI / 2.0;  // run time pi/2 rescaled onto [0, 1]
    const AlgebraPath a = AlgebraPath::constant((c * so3_generator_z()).eval());
    const AdjointFlow flow = adjoint_flow(a, so3_generator_x(), so3, 512);
    const double endpoint_err = (flow.samples.back() - so3_generator_y()).norm();
    crit.require(endpoint_err <= 1e-6, "S(pi/2) error " + fmt(endpoint_err));

    const double h = flow.times[1] - flow.times[0];
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < flow.samples.size(); ++k) {
        const Eigen::MatrixXd ds = (flow.samples[k + 1] - flow.samples[k - 1]) / (2.0 * h);
        worst = std::max(worst, (ds - commutator(a.at(flow.times[k]), flow.samples[k])).norm());
    }
    crit.require(worst <= 1e-5, "interior ODE residual " + fmt(worst));
    crit.finish();
}

// ---------------------------------------------------------------------------
// 10. CLI determinism
// ---------------------------------------------------------------------------
std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void criterion_10(const std::string& binary) {
    Criterion crit(10, "CLI determinism: byte-identical trace.csv and shapes.svg across runs", 0.0);
    const fs::path dir = fs::temp_directory_path() / "diffeopt_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    write_curve_csv(dir / "start.csv", DiscreteCurve::ellipse(32, 1.5, 0.9));
    write_curve_csv(dir / "target.csv", DiscreteCurve::circle(32));
    std::ofstream cfg(dir / "run.cfg");
    cfg << "problem.functional = target_match\n"
        << "problem.initial = start.csv\n"
        << "problem.target = target.csv\n"
        << "metric.kind = h1\n"
        << "metric.a0 = 1\n"
        << "metric.a1 = 1\n"
        << "descent.max_iters = 120\n"
        << "io.svg_every = 10\n";
    cfg.close();

    std::string traces[2], svgs[2];
    bool ran = true;
    for (int run = 0; run < 2; ++run) {
        const fs::path out = dir / ("out" + std::to_string(run));
        const std::string cmd = "DIFFEO_OPT_OUTDIR=" + out.string() + " " + binary + " optimize --no-timestamp " +
                                (dir / "run.cfg").string() + " > /dev/null";
        const int rc = std::system(cmd.c_str());
        if (rc != 0) {
            crit.require(false, "optimize run " + std::to_string(run) + " exited with " + std::to_string(rc));
            ran = false;
            break;
        }
        traces[run] = slurp(out / "trace.csv");
        svgs[run] = slurp(out / "shapes.svg");
    }
    if (ran) {
        crit.require(!traces[0].empty(), "trace.csv is empty");
        crit.require(traces[0] == traces[1], "trace.csv differs between runs");
        crit.require(svgs[0] == svgs[1], "shapes.svg differs between runs");
    }
    crit.finish();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-diffeopt-binary>\n");
        return 64;
    }
    criterion_1();
    criterion_2();
    criteria_3_and_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(argv[1]);
    if (g_failures == 0) {
        std::printf("all 10 acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    }
    return g_failures;
}
