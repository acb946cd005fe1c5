#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace diffeopt::cli {

struct RunReport {
    int exit_code = 0;
    std::vector<std::filesystem::path> files;
    std::string summary;
};

/// Steepest-descent driver: runs the configured problem and writes trace.csv,
/// shapes.svg and final_curve.csv to the output directory.
/// Exit codes: 0 converged, 2 max_iters, 3 line_search_failure, 1 config/load error.
RunReport cmd_optimize(const std::filesystem::path& config_path, bool no_timestamp);

/// Lie solvers: subcommand is one of "solve-log", "holonomy", "flat".
RunReport cmd_lie(const std::string& subcommand, const std::filesystem::path& config_path);

/// Mesh subcommands: "validate" and "refine" over the plain-text mesh format.
RunReport cmd_mesh_validate(const std::filesystem::path& mesh_file);
RunReport cmd_mesh_refine(const std::filesystem::path& mesh_file, int levels,
                          const std::filesystem::path& outdir);

/// Tangent-cone probe; emits a CSV of velocity class representatives.
RunReport cmd_cone_probe(const std::filesystem::path& config_path);

}  // namespace diffeopt::cli
