#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "weakkam/critical.hpp"
#include "weakkam/grid.hpp"
#include "weakkam/semigroup.hpp"

namespace weakkam {

/// One row per point in row-major index order: coordinates then value.
void write_grid_function_csv(const std::filesystem::path& path, const GridFunction& u);
GridFunction read_grid_function_csv(const std::filesystem::path& path, const PeriodicGrid& grid);

void write_residual_history_csv(const std::filesystem::path& path,
                                const std::vector<ResidualRecord>& history);

void write_orbit_csv(const std::filesystem::path& path, const CalibratedOrbit& orbit,
                     const PeriodicGrid& grid);

void write_cycle_csv(const std::filesystem::path& path, const MinMeanCycleResult& cycle,
                     const ActionKernel& k);

void write_point_set_csv(const std::filesystem::path& path, const std::vector<int>& points,
                         const PeriodicGrid& grid);

std::string format_double(double v);

}  // namespace weakkam
