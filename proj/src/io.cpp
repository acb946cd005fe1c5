#include "diffeopt/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace diffeopt {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

DiscreteCurve read_curve_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("read_curve_csv: cannot open " + file.string());
    std::string line;
    if (!std::getline(in, line)) throw IoError("read_curve_csv: empty file " + file.string());
    // tolerate whitespace and an optional BOM around the header
    std::string header;
    for (char ch : line)
        if (!std::isspace(static_cast<unsigned char>(ch)) && static_cast<unsigned char>(ch) < 0x80) header += ch;
    if (header != "x,y") throw IoError("read_curve_csv: expected header 'x,y' in " + file.string());
    std::vector<Eigen::Vector2d> nodes;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double x = 0.0, y = 0.0;
        if (!(ss >> x >> y))
            throw IoError("read_curve_csv: malformed row " + std::to_string(line_no) + " in " + file.string());
        nodes.emplace_back(x, y);
    }
    try {
        return DiscreteCurve(std::move(nodes));
    } catch (const std::invalid_argument& e) {
        throw IoError("read_curve_csv: " + file.string() + ": " + e.what());
    }
}

void write_curve_csv(const std::filesystem::path& file, const DiscreteCurve& c) {
    std::ofstream out(file);
    if (!out) throw IoError("write_curve_csv: cannot open " + file.string());
    out << "x,y\n";
    for (int i = 0; i < c.size(); ++i)
        out << format_double(c.node(i).x()) << "," << format_double(c.node(i).y()) << "\n";
}

void write_trace_csv(const std::filesystem::path& file, const DescentTrace& trace) {
    std::ofstream out(file);
    if (!out) throw IoError("write_trace_csv: cannot open " + file.string());
    out << "iter,objective,step,grad_norm\n";
    for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
        const double step = k < trace.step_sizes.size() ? trace.step_sizes[k] : 0.0;
        out << k << "," << format_double(trace.objectives[k]) << "," << format_double(step) << ","
            << format_double(trace.grad_norms[k]) << "\n";
    }
}

void write_shapes_svg(const std::filesystem::path& file, const std::vector<DiscreteCurve>& curves, int every_k,
                      bool with_timestamp) {
    if (curves.empty()) throw IoError("write_shapes_svg: no curves");
    std::vector<std::size_t> keep;
    keep.push_back(0);
    if (every_k > 0) {
        for (std::size_t i = static_cast<std::size_t>(every_k); i + 1 < curves.size();
             i += static_cast<std::size_t>(every_k))
            keep.push_back(i);
    }
    if (curves.size() > 1) keep.push_back(curves.size() - 1);

    Eigen::Vector2d lo(std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
    Eigen::Vector2d hi = -lo;
    for (std::size_t idx : keep) {
        for (const auto& p : curves[idx].nodes()) {
            lo = lo.cwiseMin(p);
            hi = hi.cwiseMax(p);
        }
    }
    const Eigen::Vector2d span = hi - lo;
    const double pad = 0.05 * std::max(span.x(), span.y());
    lo -= Eigen::Vector2d(pad, pad);
    hi += Eigen::Vector2d(pad, pad);

    std::ofstream out(file);
    if (!out) throw IoError("write_shapes_svg: cannot open " + file.string());
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (with_timestamp) {
        const auto now = std::chrono::system_clock::now();
        out << "<!-- generated " << std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count()
            << " -->\n";
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_double(lo.x()) << " "
        << format_double(lo.y()) << " " << format_double(hi.x() - lo.x()) << " " << format_double(hi.y() - lo.y())
        << "\">\n";
    for (std::size_t n = 0; n < keep.size(); ++n) {
        const DiscreteCurve& c = curves[keep[n]];
        out << "  <path fill=\"none\" stroke=\"" << (n == 0 ? "#888888" : (n + 1 == keep.size() ? "#000000" : "#bbbbbb"))
            << "\" stroke-width=\"" << format_double(0.004 * std::max(hi.x() - lo.x(), hi.y() - lo.y()))
            << "\" d=\"";
        for (int i = 0; i < c.size(); ++i) {
            out << (i == 0 ? "M" : "L") << format_double(c.node(i).x()) << " " << format_double(c.node(i).y());
        }
        out << "Z\"/>\n";
    }
    out << "</svg>\n";
}

Triangulation2D read_mesh(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("read_mesh: cannot open " + file.string());
    int nv = 0, nf = 0;
    if (!(in >> nv >> nf)) throw IoError("read_mesh: missing 'V F' header in " + file.string());
    if (nv < 3 || nf < 1) throw IoError("read_mesh: implausible counts in " + file.string());
    std::vector<Eigen::Vector2d> vertices(static_cast<std::size_t>(nv));
    for (int i = 0; i < nv; ++i) {
        if (!(in >> vertices[static_cast<std::size_t>(i)].x() >> vertices[static_cast<std::size_t>(i)].y()))
            throw IoError("read_mesh: malformed vertex " + std::to_string(i) + " in " + file.string());
    }
    std::vector<Simplex2> simplices(static_cast<std::size_t>(nf));
    for (int i = 0; i < nf; ++i) {
        auto& s = simplices[static_cast<std::size_t>(i)];
        if (!(in >> s.v[0] >> s.v[1] >> s.v[2]))
            throw IoError("read_mesh: malformed face " + std::to_string(i) + " in " + file.string());
    }
    // Domain polygon: boundary of the face set (edges owned by one face), walked in order.
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& s : simplices) {
        for (int k = 0; k < 3; ++k) {
            const int a = s.v[static_cast<std::size_t>(k)];
            const int b = s.v[static_cast<std::size_t>((k + 1) % 3)];
            edge_count[{std::min(a, b), std::max(a, b)}]++;
        }
    }
    std::map<int, std::vector<int>> boundary_adj;
    for (const auto& [e, cnt] : edge_count) {
        if (cnt == 1) {
            boundary_adj[e.first].push_back(e.second);
            boundary_adj[e.second].push_back(e.first);
        }
    }
    std::vector<Eigen::Vector2d> domain;
    if (!boundary_adj.empty()) {
        const int start = boundary_adj.begin()->first;
        int prev = -1, cur = start;
        do {
            domain.push_back(vertices[static_cast<std::size_t>(cur)]);
            const auto& nbrs = boundary_adj[cur];
            if (nbrs.size() != 2) break;  // non-manifold boundary; validate() will flag the mesh
            const int next = (nbrs[0] == prev) ? nbrs[1] : nbrs[0];
            prev = cur;
            cur = next;
        } while (cur != start && domain.size() <= boundary_adj.size());
    }
    if (domain.size() < 3) {
        // fall back to the bounding box so validation can still run and report
        Eigen::Vector2d lo = vertices.front(), hi = vertices.front();
        for (const auto& p : vertices) {
            lo = lo.cwiseMin(p);
            hi = hi.cwiseMax(p);
        }
        domain = {lo, {hi.x(), lo.y()}, hi, {lo.x(), hi.y()}};
    }
    return Triangulation2D(std::move(vertices), std::move(simplices), std::move(domain));
}

void write_mesh(const std::filesystem::path& file, const Triangulation2D& t) {
    std::ofstream out(file);
    if (!out) throw IoError("write_mesh: cannot open " + file.string());
    out << t.n_vertices() << " " << t.n_simplices() << "\n";
    for (const auto& p : t.vertices()) out << format_double(p.x()) << " " << format_double(p.y()) << "\n";
    for (const auto& s : t.simplices()) out << s.v[0] << " " << s.v[1] << " " << s.v[2] << "\n";
}

}  // namespace diffeopt
