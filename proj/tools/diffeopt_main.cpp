#include <string>

#include <CLI11.hpp>

#include "diffeopt/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"diffeopt - gradient descent on discrete shape spaces, Lie-group logarithmic equations, "
                 "holonomy, tangent-cone probing and triangulation refinement"};
    app.require_subcommand(1);

    std::string config_path;
    bool no_timestamp = false;
    auto* optimize = app.add_subcommand("optimize", "run the configured steepest-descent problem");
    optimize->add_option("config", config_path, "run configuration file")->required();
    optimize->add_flag("--no-timestamp", no_timestamp, "suppress the timestamp comment in shapes.svg");

    auto* lie = app.add_subcommand("lie", "matrix Lie group solvers");
    lie->require_subcommand(1);
    std::string lie_config;
    auto* solve_log = lie->add_subcommand("solve-log", "integrate a logarithmic equation");
    solve_log->add_option("config", lie_config, "run configuration file")->required();
    auto* holonomy = lie->add_subcommand("holonomy", "holonomy of a connection along a loop");
    holonomy->add_option("config", lie_config, "run configuration file")->required();
    auto* flat = lie->add_subcommand("flat", "integrate a flat connection form to a group-valued primitive");
    flat->add_option("config", lie_config, "run configuration file")->required();

    auto* mesh = app.add_subcommand("mesh", "triangulation tools");
    mesh->require_subcommand(1);
    std::string mesh_file;
    std::string mesh_outdir = "out";
    int levels = 1;
    auto* mesh_validate = mesh->add_subcommand("validate", "check the triangulation axioms");
    mesh_validate->add_option("mesh", mesh_file, "mesh file (plain text V F format)")->required();
    auto* mesh_refine = mesh->add_subcommand("refine", "midpoint-refine a mesh k times");
    mesh_refine->add_option("mesh", mesh_file, "mesh file (plain text V F format)")->required();
    mesh_refine->add_option("--levels", levels, "number of refinement levels")->required();
    mesh_refine->add_option("--outdir", mesh_outdir, "output directory");

    auto* cone = app.add_subcommand("cone", "tangent cone probing");
    cone->require_subcommand(1);
    std::string cone_config;
    auto* cone_probe = cone->add_subcommand("probe", "partition sample paths into velocity classes");
    cone_probe->add_option("config", cone_config, "run configuration file")->required();

    CLI11_PARSE(app, argc, argv);

    if (optimize->parsed()) return diffeopt::cli::cmd_optimize(config_path, no_timestamp).exit_code;
    if (solve_log->parsed()) return diffeopt::cli::cmd_lie("solve-log", lie_config).exit_code;
    if (holonomy->parsed()) return diffeopt::cli::cmd_lie("holonomy", lie_config).exit_code;
    if (flat->parsed()) return diffeopt::cli::cmd_lie("flat", lie_config).exit_code;
    if (mesh_validate->parsed()) return diffeopt::cli::cmd_mesh_validate(mesh_file).exit_code;
    if (mesh_refine->parsed()) return diffeopt::cli::cmd_mesh_refine(mesh_file, levels, mesh_outdir).exit_code;
    if (cone_probe->parsed()) return diffeopt::cli::cmd_cone_probe(cone_config).exit_code;
    return 1;
}
