#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "diffeopt/cli.hpp"
#include "diffeopt/io.hpp"

using namespace diffeopt;

namespace {

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "diffeopt_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("cmd_optimize: start at the target terminates converged with all files") {
    const fs::path dir = fresh_dir("opt_trivial");
    write_curve_csv(dir / "curve.csv", DiscreteCurve::circle(16));
    write_file(dir / "run.cfg",
               "problem.functional = target_match\n"
               "problem.initial = curve.csv\n"
               "problem.target = curve.csv\n"
               "metric.kind = h1\n"
               "io.outdir = out\n");
    const auto report = cli::cmd_optimize(dir / "run.cfg", true);
    CHECK(report.exit_code == 0);
    REQUIRE(report.files.size() == 3);
    for (const auto& f : report.files) {
        CHECK(fs::exists(f));
        CHECK(fs::file_size(f) > 0);
    }
    CHECK(report.summary.find("termination=converged") != std::string::npos);
    CHECK(report.summary.find("iterations=0") != std::string::npos);
}

TEST_CASE("cmd_optimize: sigma outside (0,1) exits 1 naming the key and the bound") {
    const fs::path dir = fresh_dir("opt_sigma");
    write_curve_csv(dir / "curve.csv", DiscreteCurve::circle(16));
    write_file(dir / "run.cfg",
               "problem.functional = length\n"
               "problem.initial = curve.csv\n"
               "descent.sigma = 1.5\n");
    const auto report = cli::cmd_optimize(dir / "run.cfg", true);
    CHECK(report.exit_code == 1);
    CHECK(report.summary.find("descent.sigma") != std::string::npos);
    CHECK(report.summary.find("(0,1)") != std::string::npos);
}

TEST_CASE("cmd_optimize: unknown keys are rejected with their path") {
    const fs::path dir = fresh_dir("opt_unknown");
    write_curve_csv(dir / "curve.csv", DiscreteCurve::circle(16));
    write_file(dir / "run.cfg",
               "problem.functional = length\n"
               "problem.initial = curve.csv\n"
               "problem.tarket = curve.csv\n");
    const auto report = cli::cmd_optimize(dir / "run.cfg", true);
    CHECK(report.exit_code == 1);
    CHECK(report.summary.find("problem.tarket") != std::string::npos);
}

TEST_CASE("cmd_optimize: exit codes distinguish max_iters and line-search failure") {
    const fs::path dir = fresh_dir("opt_exitcodes");
    write_curve_csv(dir / "curve.csv", DiscreteCurve::circle(16));

    write_file(dir / "maxiters.cfg",
               "problem.functional = length\n"
               "problem.initial = curve.csv\n"
               "metric.kind = l2\n"
               "descent.alpha_hat = 0.05\n"
               "descent.max_iters = 3\n"
               "io.outdir = out_max\n");
    CHECK(cli::cmd_optimize(dir / "maxiters.cfg", true).exit_code == 2);

    write_file(dir / "lsfail.cfg",
               "problem.functional = length\n"
               "problem.initial = curve.csv\n"
               "metric.kind = l2\n"
               "descent.alpha_hat = 50\n"
               "descent.sigma = 0.99\n"
               "descent.max_backtracks = 0\n"
               "io.outdir = out_ls\n");
    CHECK(cli::cmd_optimize(dir / "lsfail.cfg", true).exit_code == 3);
}

TEST_CASE("cmd_optimize: spectral metric run converges end to end") {
    const fs::path dir = fresh_dir("opt_hs");
    const DiscreteCurve target = DiscreteCurve::circle(16);
    std::vector<Eigen::Vector2d> nodes = target.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] *= 1.05;
    write_curve_csv(dir / "start.csv", DiscreteCurve(nodes));
    write_curve_csv(dir / "target.csv", target);
    write_file(dir / "run.cfg",
               "problem.functional = target_match\n"
               "problem.initial = start.csv\n"
               "problem.target = target.csv\n"
               "metric.kind = hs\n"
               "metric.s = 1.0\n"
               "descent.grad_tol = 1e-8\n"
               "io.outdir = out\n");
    const auto report = cli::cmd_optimize(dir / "run.cfg", true);
    CHECK(report.exit_code == 0);
    CHECK(report.summary.find("termination=converged") != std::string::npos);
}

TEST_CASE("cmd_lie flat writes the grid and a residual report") {
    const fs::path dir = fresh_dir("lie_flat");
    write_file(dir / "run.cfg",
               "lie.group = so3\n"
               "lie.grid = 16\n"
               "lie.alpha.kind = mc\n"
               "lie.alpha.a = 0 0 0 0 0 -1 0 1 0\n"
               "lie.alpha.b = 0 0 1 0 0 0 -1 0 0\n"
               "io.outdir = out\n");
    const auto report = cli::cmd_lie("flat", dir / "run.cfg");
    CHECK(report.exit_code == 0);
    const auto pos = report.summary.find("max_cell_residual=");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(report.summary.substr(pos + std::string("max_cell_residual=").size())) <= 1e-5);
    for (const auto& f : report.files) CHECK(fs::file_size(f) > 0);
}

TEST_CASE("cmd_lie solve-log reports the rotation endpoint") {
    const fs::path dir = fresh_dir("lie_solvelog");
    write_file(dir / "run.cfg",
               "lie.group = so2\n"
               "lie.steps = 128\n"
               "lie.side = right\n"
               "lie.v.k0 = 0 -1 1 0\n"
               "io.outdir = out\n");
    const auto report = cli::cmd_lie("solve-log", dir / "run.cfg");
    CHECK(report.exit_code == 0);
    REQUIRE(report.files.size() == 2);
    const std::string csv = slurp(report.files[0]);
    CHECK(csv.rfind("t,g00,g01,g10,g11\n", 0) == 0);
    // endpoint row carries cos(1), -sin(1): parse the last line
    const auto last_newline = csv.find_last_of('\n', csv.size() - 2);
    const std::string last = csv.substr(last_newline + 1);
    CHECK(last.rfind("1,", 0) == 0);
    CHECK(last.find("0.5403023058681") != std::string::npos);
    CHECK(report.summary.find("membership_residual_max=") != std::string::npos);
}

TEST_CASE("cmd_lie holonomy: flat connection reports a tiny log norm") {
    const fs::path dir = fresh_dir("lie_holonomy");
    write_file(dir / "run.cfg",
               "lie.group = so3\n"
               "lie.steps = 256\n"
               "lie.theta.kind = mc\n"
               "lie.theta.a = 0 0 0 0 0 -1 0 1 0\n"
               "lie.theta.b = 0 0 1 0 0 0 -1 0 0\n"
               "lie.loop.kind = circle\n"
               "lie.loop.center = 0.5 0.5\n"
               "lie.loop.radius = 0.3\n"
               "io.outdir = out\n");
    const auto report = cli::cmd_lie("holonomy", dir / "run.cfg");
    CHECK(report.exit_code == 0);
    const auto pos = report.summary.find("holonomy_log_norm=");
    REQUIRE(pos != std::string::npos);
    const double log_norm = std::stod(report.summary.substr(pos + std::string("holonomy_log_norm=").size()));
    CHECK(log_norm <= 1e-6);
}

TEST_CASE("cmd_lie holonomy: an open path exits 1 with NotALoop") {
    const fs::path dir = fresh_dir("lie_notaloop");
    write_file(dir / "open.cfg",
               "lie.group = so2\n"
               "lie.theta.kind = constant\n"
               "lie.theta.x = 0 -1 1 0\n"
               "lie.theta.y = 0 0 0 0\n"
               "lie.loop.kind = polyline\n"
               "lie.loop.v0 = 0 0\n"
               "lie.loop.v1 = 1 0\n"
               "lie.loop.v2 = 1 1\n"
               "io.outdir = out\n");
    const auto report = cli::cmd_lie("holonomy", dir / "open.cfg");
    CHECK(report.exit_code == 1);
    CHECK(report.summary.find("endpoints differ") != std::string::npos);
}

TEST_CASE("cmd_mesh_refine prints the exact halving sequence") {
    const fs::path dir = fresh_dir("mesh_refine");
    write_mesh(dir / "square.txt", Triangulation2D::unit_square_two_triangles());
    const auto report = cli::cmd_mesh_refine(dir / "square.txt", 3, dir / "out");
    CHECK(report.exit_code == 0);
    REQUIRE(report.files.size() == 5);  // 4 mesh levels + csv
    const std::string csv = slurp(report.files.back());
    const double h0 = std::sqrt(2.0);
    std::string expected = "level,faces,mesh_size\n";
    expected += "0,2," + format_double(h0) + "\n";
    expected += "1,8," + format_double(h0 / 2) + "\n";
    expected += "2,32," + format_double(h0 / 4) + "\n";
    expected += "3,128," + format_double(h0 / 8) + "\n";
    CHECK(csv == expected);
}

TEST_CASE("cmd_mesh_validate and refine reject an overlapping mesh naming faces") {
    const fs::path dir = fresh_dir("mesh_invalid");
    write_file(dir / "bad.txt",
               "4 3\n0 0\n1 0\n1 1\n0 1\n0 1 2\n0 2 3\n0 1 3\n");
    const auto vreport = cli::cmd_mesh_validate(dir / "bad.txt");
    CHECK(vreport.exit_code == 1);
    CHECK(vreport.summary.find("offending_pair=") != std::string::npos);
    const auto rreport = cli::cmd_mesh_refine(dir / "bad.txt", 1, dir / "out");
    CHECK(rreport.exit_code == 1);
    CHECK(rreport.summary.find("offending faces") != std::string::npos);
}

TEST_CASE("cmd_cone_probe: eight axis paths give eight rows on the axes") {
    const fs::path dir = fresh_dir("cone_probe");
    std::string cfg =
        "cone.space = cross\n"
        "cone.base = 0 0\n"
        "io.outdir = out\n";
    int p = 0;
    for (const double speed : {1.0, -1.0, 2.0, -2.0}) {
        cfg += "cone.path" + std::to_string(p) + ".c0 = 0 " + format_double(speed) + "\n";
        cfg += "cone.path" + std::to_string(p) + ".c1 = 0\n";
        ++p;
        cfg += "cone.path" + std::to_string(p) + ".c0 = 0\n";
        cfg += "cone.path" + std::to_string(p) + ".c1 = 0 " + format_double(speed) + "\n";
        ++p;
    }
    write_file(dir / "run.cfg", cfg);
    const auto report = cli::cmd_cone_probe(dir / "run.cfg");
    CHECK(report.exit_code == 0);
    const std::string csv = slurp(report.files[0]);
    CHECK(csv.rfind("class_id,v_1,v_2\n", 0) == 0);
    int rows = 0;
    std::size_t pos = csv.find('\n');
    while ((pos = csv.find('\n', pos + 1)) != std::string::npos) ++rows;
    CHECK(rows == 8);
    // every representative velocity lies on a coordinate axis
    std::istringstream ss(csv);
    std::string line;
    std::getline(ss, line);  // header
    while (std::getline(ss, line)) {
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        int cls;
        double vx, vy;
        row >> cls >> vx >> vy;
        CHECK(std::min(std::abs(vx), std::abs(vy)) <= 1e-6);
    }
}
