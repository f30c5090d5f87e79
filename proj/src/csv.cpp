#include "weakkam/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace weakkam {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file " + path.string());
    return out;
}

void write_coord_header(std::ofstream& out, int ndim) {
    for (int i = 0; i < ndim; ++i) out << "x" << i << ",";
}

}  // namespace

void write_grid_function_csv(const std::filesystem::path& path, const GridFunction& u) {
    auto out = open_out(path);
    write_coord_header(out, u.grid().ndim());
    out << "value\n";
    for (int p = 0; p < u.size(); ++p) {
        for (double c : u.grid().position(p)) out << format_double(c) << ",";
        out << format_double(u[p]) << "\n";
    }
}

GridFunction read_grid_function_csv(const std::filesystem::path& path, const PeriodicGrid& grid) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty CSV " + path.string());
    std::vector<double> values;
    values.reserve(grid.size());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto pos = line.rfind(',');
        if (pos == std::string::npos) throw ConfigError("malformed CSV row in " + path.string());
        values.push_back(std::stod(line.substr(pos + 1)));
    }
    return GridFunction(grid, std::move(values));
}

void write_residual_history_csv(const std::filesystem::path& path,
                                const std::vector<ResidualRecord>& history) {
    auto out = open_out(path);
    out << "iteration,sup_change,shift,c_est\n";
    for (const auto& r : history) {
        out << r.iteration << "," << format_double(r.sup_change) << "," << format_double(r.shift)
            << "," << format_double(r.c_running) << "\n";
    }
}

void write_orbit_csv(const std::filesystem::path& path, const CalibratedOrbit& orbit,
                     const PeriodicGrid& grid) {
    auto out = open_out(path);
    out << "step,";
    write_coord_header(out, grid.ndim());
    out << "defect\n";
    for (std::size_t s = 0; s < orbit.points.size(); ++s) {
        out << s << ",";
        for (double c : grid.position(orbit.points[s])) out << format_double(c) << ",";
        out << format_double(s < orbit.defects.size() ? orbit.defects[s] : 0.0) << "\n";
    }
}

void write_cycle_csv(const std::filesystem::path& path, const MinMeanCycleResult& cycle,
                     const ActionKernel& k) {
    auto out = open_out(path);
    out << "step,";
    write_coord_header(out, k.grid().ndim());
    out << "edge_weight\n";
    for (std::size_t s = 0; s < cycle.cycle.size(); ++s) {
        out << s << ",";
        for (double c : k.grid().position(cycle.cycle[s])) out << format_double(c) << ",";
        double w = 0.0;
        if (s + 1 < cycle.cycle.size()) {
            const auto kk = k.find_edge(cycle.cycle[s], cycle.cycle[s + 1]);
            if (kk) w = k.cost(*kk)[cycle.cycle[s + 1]];
        }
        out << format_double(w) << "\n";
    }
}

void write_point_set_csv(const std::filesystem::path& path, const std::vector<int>& points,
                         const PeriodicGrid& grid) {
    auto out = open_out(path);
    write_coord_header(out, grid.ndim());
    out << "index\n";
    for (int p : points) {
        for (double c : grid.position(p)) out << format_double(c) << ",";
        out << p << "\n";
    }
}

}  // namespace weakkam
