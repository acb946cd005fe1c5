#include "diffeopt/cli.hpp"

#include <cmath>
#include <memory>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "diffeopt/config.hpp"
#include "diffeopt/connection.hpp"
#include "diffeopt/descent.hpp"
#include "diffeopt/embedded_space.hpp"
#include "diffeopt/io.hpp"
#include "diffeopt/lie_solve.hpp"
#include "diffeopt/matrix_exp.hpp"
#include "diffeopt/triangulation.hpp"

namespace diffeopt::cli {

namespace {

namespace fs = std::filesystem;

fs::path resolve_outdir(Config& cfg) {
    std::string dir = cfg.get_string_or("io.outdir", "out");
    if (const char* env = std::getenv("DIFFEO_OPT_OUTDIR")) dir = env;
    fs::path p(dir);
    if (!p.is_absolute()) p = cfg.base_dir() / p;
    fs::create_directories(p);
    return p;
}

void require_open_unit_interval(double value, const std::string& key) {
    if (!(value > 0.0 && value < 1.0))
        throw ConfigError("config: key '" + key + "' must lie in the open interval (0,1), got " +
                          format_double(value));
}

ArmijoParams read_armijo(Config& cfg) {
    ArmijoParams p;
    p.alpha_hat = cfg.get_double_or("descent.alpha_hat", 1.0);
    p.sigma = cfg.get_double_or("descent.sigma", 1e-4);
    p.rho = cfg.get_double_or("descent.rho", 0.5);
    p.max_iters = cfg.get_int_or("descent.max_iters", 500);
    p.max_backtracks = cfg.get_int_or("descent.max_backtracks", 40);
    p.grad_tol = cfg.get_double_or("descent.grad_tol", 1e-6);
    require_open_unit_interval(p.sigma, "descent.sigma");
    require_open_unit_interval(p.rho, "descent.rho");
    if (p.alpha_hat <= 0.0) throw ConfigError("config: key 'descent.alpha_hat' must be positive");
    if (p.max_iters <= 0) throw ConfigError("config: key 'descent.max_iters' must be positive");
    if (p.max_backtracks < 0) throw ConfigError("config: key 'descent.max_backtracks' must be >= 0");
    if (p.grad_tol <= 0.0) throw ConfigError("config: key 'descent.grad_tol' must be positive");
    return p;
}

MetricConstructor read_metric(Config& cfg) {
    const std::string kind = cfg.get_string_or("metric.kind", "h1");
    if (kind == "l2") {
        const double a0 = cfg.get_double_or("metric.a0", 1.0);
        if (a0 <= 0.0) throw ConfigError("config: key 'metric.a0' must be positive");
        return [a0](const DiscreteCurve& c) { return l2_gram(c, a0); };
    }
    if (kind == "h1") {
        const double a0 = cfg.get_double_or("metric.a0", 1.0);
        const double a1 = cfg.get_double_or("metric.a1", 1.0);
        if (a0 <= 0.0) throw ConfigError("config: key 'metric.a0' must be positive");
        if (a1 < 0.0) throw ConfigError("config: key 'metric.a1' must be nonnegative");
        return [a0, a1](const DiscreteCurve& c) { return h1_gram(c, a0, a1); };
    }
    if (kind == "hs") {
        const double s = cfg.get_double_or("metric.s", 1.0);
        if (s < 0.0 || s > 2.0) throw ConfigError("config: key 'metric.s' must lie in [0, 2]");
        return [s](const DiscreteCurve& c) { return spectral_hs_gram(c, s); };
    }
    throw ConfigError("config: key 'metric.kind' must be one of l2, h1, hs");
}

MatrixGroupSpec read_group(Config& cfg) {
    const std::string g = cfg.get_string_or("lie.group", "so2");
    if (g.size() >= 3) {
        const std::string family = g.substr(0, 2);
        const int d = std::atoi(g.c_str() + 2);
        if (d >= 1 && d <= 9) {
            if (family == "so") return MatrixGroupSpec::special_orthogonal(d);
            if (family == "sl") return MatrixGroupSpec::special_linear(d);
            if (family == "gl") return MatrixGroupSpec::general_linear(d);
        }
    }
    throw ConfigError("config: key 'lie.group' must look like so2, so3, sl2, gl3, ...");
}

Eigen::MatrixXd read_matrix(Config& cfg, const std::string& key, int d) {
    const std::vector<double> xs = cfg.get_doubles(key);
    if (static_cast<int>(xs.size()) != d * d)
        throw ConfigError("config: key '" + key + "' must hold " + std::to_string(d * d) +
                          " numbers (row-major " + std::to_string(d) + "x" + std::to_string(d) + ")");
    Eigen::MatrixXd m(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = xs[static_cast<std::size_t>(r * d + c)];
    return m;
}

AlgebraPath read_algebra_path(Config& cfg, int d) {
    std::vector<Eigen::MatrixXd> coeffs;
    for (int k = 0;; ++k) {
        const std::string key = "lie.v.k" + std::to_string(k);
        if (!cfg.has(key)) break;
        coeffs.push_back(read_matrix(cfg, key, d));
    }
    if (coeffs.empty()) throw ConfigError("config: missing algebra path coefficients 'lie.v.k0', ...");
    return AlgebraPath::polynomial(std::move(coeffs));
}

void write_group_path_csv(const fs::path& file, const GroupPath& path) {
    std::ofstream out(file);
    if (!out) throw IoError("write_group_path_csv: cannot open " + file.string());
    const int d = path.spec.dim;
    out << "t";
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) out << ",g" << r << c;
    out << "\n";
    for (std::size_t j = 0; j < path.samples.size(); ++j) {
        out << format_double(path.times[j]);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) out << "," << format_double(path.samples[j](r, c));
        out << "\n";
    }
}

ConnectionForm read_connection(Config& cfg, const std::string& prefix, int d) {
    const std::string kind = cfg.get_string_or(prefix + ".kind", "constant");
    if (kind == "constant") {
        const Eigen::MatrixXd a = read_matrix(cfg, prefix + ".x", d);
        const Eigen::MatrixXd b = read_matrix(cfg, prefix + ".y", d);
        return ConnectionForm::constant({a, b});
    }
    if (kind == "mc") {
        const Eigen::MatrixXd a = read_matrix(cfg, prefix + ".a", d);
        const Eigen::MatrixXd b = read_matrix(cfg, prefix + ".b", d);
        return ConnectionForm::mc_exp_product(a, b);
    }
    throw ConfigError("config: key '" + prefix + ".kind' must be 'constant' or 'mc'");
}

BasePath read_loop(Config& cfg) {
    const std::string kind = cfg.get_string_or("lie.loop.kind", "square");
    if (kind == "square") {
        std::vector<double> corner = {0.0, 0.0};
        if (auto c = cfg.try_get_doubles("lie.loop.corner")) corner = *c;
        const double side = cfg.get_double_or("lie.loop.side", 1.0);
        const Eigen::Vector2d o(corner[0], corner[1]);
        std::vector<Eigen::VectorXd> verts;
        const Eigen::Vector2d ex(side, 0.0), ey(0.0, side);
        verts.push_back(o);
        verts.push_back(o + ex);
        verts.push_back(o + ex + ey);
        verts.push_back(o + ey);
        verts.push_back(o);
        return BasePath::polyline(std::move(verts));
    }
    if (kind == "polyline") {
        std::vector<Eigen::VectorXd> verts;
        for (int k = 0;; ++k) {
            const std::string key = "lie.loop.v" + std::to_string(k);
            if (!cfg.has(key)) break;
            const std::vector<double> xy = cfg.get_doubles(key);
            if (xy.size() != 2) throw ConfigError("config: key '" + key + "' must hold two numbers");
            Eigen::VectorXd v(2);
            v << xy[0], xy[1];
            verts.push_back(std::move(v));
        }
        if (verts.size() < 2) throw ConfigError("config: polyline loop needs vertices 'lie.loop.v0', ...");
        return BasePath::polyline(std::move(verts));
    }
    if (kind == "circle") {
        std::vector<double> center = {0.5, 0.5};
        if (auto c = cfg.try_get_doubles("lie.loop.center")) center = *c;
        const double radius = cfg.get_double_or("lie.loop.radius", 0.25);
        BasePath p;
        p.dim = 2;
        p.value = [center, radius](double t) {
            Eigen::VectorXd x(2);
            const double th = 2.0 * M_PI * t;
            x << center[0] + radius * std::cos(th), center[1] + radius * std::sin(th);
            return x;
        };
        p.derivative = [radius](double t) {
            Eigen::VectorXd x(2);
            const double th = 2.0 * M_PI * t;
            x << -2.0 * M_PI * radius * std::sin(th), 2.0 * M_PI * radius * std::cos(th);
            return x;
        };
        return p;
    }
    throw ConfigError("config: key 'lie.loop.kind' must be 'square', 'circle' or 'polyline'");
}

RunReport fail(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    RunReport r;
    r.exit_code = 1;
    r.summary = message;
    return r;
}

MultiPoly parse_monomials(const std::string& text, int n_vars, const std::string& key) {
    // monomial list: "coeff:e1,e2 coeff:e1,e2 ...", e.g. xy = "1:1,1"
    std::istringstream ss(text);
    std::string tok;
    std::vector<MultiPoly::Term> terms;
    while (ss >> tok) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos)
            throw ConfigError("config: key '" + key + "': monomial '" + tok + "' lacks 'coeff:exponents'");
        MultiPoly::Term t;
        try {
            t.coeff = std::stod(tok.substr(0, colon));
        } catch (const std::exception&) {
            throw ConfigError("config: key '" + key + "': bad coefficient in '" + tok + "'");
        }
        std::string exps = tok.substr(colon + 1);
        std::replace(exps.begin(), exps.end(), ',', ' ');
        std::istringstream es(exps);
        int e = 0;
        while (es >> e) t.exps.push_back(e);
        if (static_cast<int>(t.exps.size()) != n_vars)
            throw ConfigError("config: key '" + key + "': monomial '" + tok + "' needs " +
                              std::to_string(n_vars) + " exponents");
        terms.push_back(std::move(t));
    }
    if (terms.empty()) throw ConfigError("config: key '" + key + "' holds no monomials");
    return MultiPoly(n_vars, std::move(terms));
}

}  // namespace

RunReport cmd_optimize(const fs::path& config_path, bool no_timestamp) {
    try {
        Config cfg = Config::parse_file(config_path);
        const std::string functional_kind = cfg.get_string("problem.functional");
        const DiscreteCurve initial = read_curve_csv(cfg.get_path("problem.initial"));

        ShapeFunctional j = ShapeFunctional::length();
        if (functional_kind == "length") {
            j = ShapeFunctional::length();
        } else if (functional_kind == "enclosed_area") {
            j = ShapeFunctional::enclosed_area();
        } else if (functional_kind == "target_match") {
            j = ShapeFunctional::target_match(read_curve_csv(cfg.get_path("problem.target")));
        } else {
            throw ConfigError("config: key 'problem.functional' must be length, enclosed_area or target_match");
        }

        const MetricConstructor metric = read_metric(cfg);
        const ArmijoParams params = read_armijo(cfg);
        const std::string retraction_kind = cfg.get_string_or("descent.retraction", "shift");
        Retraction retraction = Retraction::shift();
        if (retraction_kind == "shift_project_radial")
            retraction = Retraction::shift_project_radial();
        else if (retraction_kind != "shift")
            throw ConfigError("config: key 'descent.retraction' must be shift or shift_project_radial");
        const int svg_every = cfg.get_int_or("io.svg_every", 10);
        const fs::path outdir = resolve_outdir(cfg);
        cfg.finish();

        const DescentTrace trace = steepest_descent(j, initial, metric, retraction, params);

        RunReport report;
        const fs::path trace_file = outdir / "trace.csv";
        const fs::path svg_file = outdir / "shapes.svg";
        const fs::path final_file = outdir / "final_curve.csv";
        write_trace_csv(trace_file, trace);
        write_shapes_svg(svg_file, trace.iterates, svg_every, !no_timestamp);
        write_curve_csv(final_file, trace.iterates.back());
        report.files = {trace_file, svg_file, final_file};

        std::ostringstream summary;
        summary << "iterations=" << trace.step_sizes.size() << " final_objective="
                << format_double(trace.objectives.back()) << " termination=" << termination_name(trace.termination);
        report.summary = summary.str();
        std::cout << report.summary << "\n";
        switch (trace.termination) {
            case Termination::Converged:
                report.exit_code = 0;
                break;
            case Termination::MaxIters:
                report.exit_code = 2;
                break;
            case Termination::LineSearchFailure:
                report.exit_code = 3;
                break;
        }
        return report;
    } catch (const std::exception& e) {
        return fail(e.what());
    }
}

RunReport cmd_lie(const std::string& subcommand, const fs::path& config_path) {
    try {
        Config cfg = Config::parse_file(config_path);
        const MatrixGroupSpec spec = read_group(cfg);
        const int steps = cfg.get_int_or("lie.steps", 128);
        if (steps < 8) throw ConfigError("config: key 'lie.steps' must be >= 8");
        const fs::path outdir = resolve_outdir(cfg);
        RunReport report;
        std::ostringstream rep;

        if (subcommand == "solve-log") {
            const std::string side_name = cfg.get_string_or("lie.side", "right");
            if (side_name != "left" && side_name != "right")
                throw ConfigError("config: key 'lie.side' must be 'left' or 'right'");
            const LogSide side = side_name == "left" ? LogSide::Left : LogSide::Right;
            const AlgebraPath v = read_algebra_path(cfg, spec.dim);
            cfg.finish();
            const GroupPath path = solve_logarithmic(v, spec, steps, side);
            const fs::path csv = outdir / "group_path.csv";
            write_group_path_csv(csv, path);
            rep << "group=" << spec.name << " side=" << side_name << " steps=" << steps << "\n";
            rep << "membership_residual_max=" << format_double(path.max_membership_residual()) << "\n";
            rep << "endpoint_membership_residual=" << format_double(spec.membership_check(path.endpoint())) << "\n";
            report.files = {csv};
        } else if (subcommand == "holonomy") {
            const ConnectionForm theta = read_connection(cfg, "lie.theta", spec.dim);
            const BasePath loop = read_loop(cfg);
            cfg.finish();
            const Eigen::MatrixXd hol = holonomy(loop, theta, spec, steps);
            const GroupPath lift = horizontal_lift(loop, theta, spec.identity(), spec, steps);
            const fs::path csv = outdir / "lift_path.csv";
            write_group_path_csv(csv, lift);
            double log_norm = std::numeric_limits<double>::quiet_NaN();
            if ((hol - spec.identity()).norm() < 0.9) log_norm = logm_near_identity(hol).norm();
            rep << "group=" << spec.name << " steps=" << steps << "\n";
            rep << "holonomy_log_norm=" << format_double(log_norm) << "\n";
            rep << "membership_residual_max=" << format_double(lift.max_membership_residual()) << "\n";
            report.files = {csv};
        } else if (subcommand == "flat") {
            const int grid = cfg.get_int_or("lie.grid", 32);
            if (grid < 2) throw ConfigError("config: key 'lie.grid' must be >= 2");
            const ConnectionForm alpha = read_connection(cfg, "lie.alpha", spec.dim);
            cfg.finish();
            const FlatPrimitive f = solve_flat_primitive(alpha, spec, grid);
            const fs::path csv = outdir / "flat_grid.csv";
            std::ofstream out(csv);
            if (!out) throw IoError("cmd_lie: cannot open " + csv.string());
            out << "x,y";
            for (int r = 0; r < spec.dim; ++r)
                for (int c = 0; c < spec.dim; ++c) out << ",f" << r << c;
            out << "\n";
            for (int ix = 0; ix <= grid; ++ix) {
                for (int iy = 0; iy <= grid; ++iy) {
                    const Eigen::Vector2d p = f.grid_point(ix, iy);
                    out << format_double(p.x()) << "," << format_double(p.y());
                    for (int r = 0; r < spec.dim; ++r)
                        for (int c = 0; c < spec.dim; ++c) out << "," << format_double(f.at(ix, iy)(r, c));
                    out << "\n";
                }
            }
            rep << "group=" << spec.name << " grid=" << grid << "\n";
            rep << "max_cell_residual=" << format_double(f.max_cell_residual) << "\n";
            report.files = {csv};
        } else {
            throw ConfigError("cmd_lie: unknown subcommand '" + subcommand + "'");
        }

        const fs::path report_file = outdir / "report.txt";
        std::ofstream rout(report_file);
        rout << rep.str();
        rout.close();
        report.files.push_back(report_file);
        report.summary = rep.str();
        std::cout << rep.str();
        return report;
    } catch (const std::exception& e) {
        return fail(e.what());
    }
}

RunReport cmd_mesh_validate(const fs::path& mesh_file) {
    try {
        const Triangulation2D t = read_mesh(mesh_file);
        const ValidityReport r = validate(t);
        std::ostringstream out;
        out << "nondegenerate=" << (r.nondegenerate ? "pass" : "fail") << "\n"
            << "covering=" << (r.covering ? "pass" : "fail") << " area_sum=" << format_double(r.area_sum)
            << " domain_area=" << format_double(r.domain_area) << "\n"
            << "interior_disjoint=" << (r.interior_disjoint ? "pass" : "fail") << "\n"
            << "conforming=" << (r.conforming ? "pass" : "fail") << "\n";
        for (const auto& [a, b] : r.offending_pairs) out << "offending_pair=" << a << "," << b << "\n";
        for (int s : r.degenerate_simplices) out << "degenerate_simplex=" << s << "\n";
        std::cout << out.str();
        RunReport report;
        report.summary = out.str();
        report.exit_code = r.ok() ? 0 : 1;
        return report;
    } catch (const std::exception& e) {
        return fail(e.what());
    }
}

RunReport cmd_mesh_refine(const fs::path& mesh_file, int levels, const fs::path& outdir) {
    try {
        const Triangulation2D t = read_mesh(mesh_file);
        const ValidityReport r = validate(t);
        if (!r.ok()) {
            std::ostringstream msg;
            msg << "mesh fails validation";
            for (const auto& [a, b] : r.offending_pairs) msg << "; offending faces " << a << "," << b;
            for (int s : r.degenerate_simplices) msg << "; degenerate face " << s;
            return fail(msg.str());
        }
        fs::create_directories(outdir);
        const std::vector<Triangulation2D> seq = refine_sequence(t, RefinementRule::midpoint4(), levels);
        RunReport report;
        std::ostringstream csv;
        csv << "level,faces,mesh_size\n";
        for (std::size_t level = 0; level < seq.size(); ++level) {
            const fs::path mesh_out = outdir / ("mesh_level" + std::to_string(level) + ".txt");
            write_mesh(mesh_out, seq[level]);
            report.files.push_back(mesh_out);
            csv << level << "," << seq[level].n_simplices() << "," << format_double(mesh_size(seq[level])) << "\n";
        }
        const fs::path csv_file = outdir / "mesh_sizes.csv";
        std::ofstream out(csv_file);
        out << csv.str();
        out.close();
        report.files.push_back(csv_file);
        std::cout << csv.str();
        report.summary = csv.str();
        return report;
    } catch (const std::exception& e) {
        return fail(e.what());
    }
}

RunReport cmd_cone_probe(const fs::path& config_path) {
    try {
        Config cfg = Config::parse_file(config_path);
        SpacePtr space;
        const std::string space_kind = cfg.get_string_or("cone.space", "custom");
        int dim = 0;
        if (space_kind == "cross") {
            space = EmbeddedSpace::cross();
            dim = 2;
        } else if (space_kind == "circle") {
            space = EmbeddedSpace::circle();
            dim = 2;
        } else if (space_kind == "custom") {
            dim = cfg.get_int("cone.ambient_dim");
            if (dim <= 0) throw ConfigError("config: key 'cone.ambient_dim' must be positive");
            std::vector<SmoothMap> constraints;
            for (int k = 0;; ++k) {
                const std::string key = "cone.constraint" + std::to_string(k);
                if (!cfg.has(key)) break;
                constraints.push_back(SmoothMap::polynomial({parse_monomials(cfg.get_string(key), dim, key)}));
            }
            space = std::make_shared<EmbeddedSpace>(dim, std::move(constraints), std::vector<SmoothMap>{},
                                                    "custom");
        } else {
            throw ConfigError("config: key 'cone.space' must be cross, circle or custom");
        }

        const std::vector<double> base_raw = cfg.get_doubles("cone.base");
        if (static_cast<int>(base_raw.size()) != dim)
            throw ConfigError("config: key 'cone.base' must hold " + std::to_string(dim) + " numbers");
        Eigen::VectorXd base(dim);
        for (int i = 0; i < dim; ++i) base[i] = base_raw[static_cast<std::size_t>(i)];

        std::vector<PathGerm> germs;
        for (int p = 0;; ++p) {
            const std::string prefix = "cone.path" + std::to_string(p);
            if (!cfg.has(prefix + ".c0")) break;
            std::vector<Poly1> comps;
            for (int c = 0; c < dim; ++c) {
                const std::string key = prefix + ".c" + std::to_string(c);
                comps.push_back(Poly1(cfg.get_doubles(key)));
            }
            germs.emplace_back(base, SmoothMap::polynomial_path(std::move(comps)), space);
        }
        if (germs.empty()) throw ConfigError("config: no sample paths ('cone.path0.c0', ...)");
        const fs::path outdir = resolve_outdir(cfg);
        cfg.finish();

        const ConeProbeResult cone = probe_cone(space, base, germs);
        const fs::path csv_file = outdir / "cone_classes.csv";
        std::ofstream out(csv_file);
        if (!out) throw IoError("cmd_cone_probe: cannot open " + csv_file.string());
        out << "class_id";
        for (int i = 1; i <= dim; ++i) out << ",v_" << i;
        out << "\n";
        for (std::size_t cls = 0; cls < cone.class_velocities.size(); ++cls) {
            out << cls;
            for (int i = 0; i < dim; ++i) out << "," << format_double(cone.class_velocities[cls][i]);
            out << "\n";
        }
        out.close();
        RunReport report;
        report.files = {csv_file};
        std::ostringstream summary;
        summary << "paths=" << germs.size() << " classes=" << cone.class_velocities.size();
        report.summary = summary.str();
        std::cout << report.summary << "\n";
        return report;
    } catch (const std::exception& e) {
        return fail(e.what());
    }
}

}  // namespace diffeopt::cli
