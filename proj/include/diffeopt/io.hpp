#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "diffeopt/descent.hpp"
#include "diffeopt/discrete_curve.hpp"
#include "diffeopt/triangulation.hpp"

namespace diffeopt {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal representation; identical inputs format identically.
std::string format_double(double x);

// Curve CSV: header "x,y", one node per row, closed implicitly.
DiscreteCurve read_curve_csv(const std::filesystem::path& file);
void write_curve_csv(const std::filesystem::path& file, const DiscreteCurve& c);

// Trace CSV: header "iter,objective,step,grad_norm"; the final row carries step 0.
void write_trace_csv(const std::filesystem::path& file, const DescentTrace& trace);

/// Stroke-only SVG overlay of closed polylines: first and last iterate plus
/// every `every_k`-th in between (every_k <= 0 keeps only first and last).
/// The timestamp comment is suppressed when with_timestamp is false.
void write_shapes_svg(const std::filesystem::path& file, const std::vector<DiscreteCurve>& curves, int every_k,
                      bool with_timestamp);

// Mesh text format: line 1 "V F", V lines "x y", F lines "i j k" (0-based).
Triangulation2D read_mesh(const std::filesystem::path& file);
void write_mesh(const std::filesystem::path& file, const Triangulation2D& t);

}  // namespace diffeopt
