#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weakkam/model.hpp"
#include "weakkam/semigroup.hpp"
#include "weakkam/symmetry.hpp"

namespace weakkam {

struct SymmetryElementSpec {
    std::string type;  // "shift" | "reflection"
    int axis = 0;
    int amount = 1;    // shifts only
};

struct RunConfig {
    // model
    std::string potential = "cosine";  // "cosine" | "zero" | path to CSV
    std::vector<double> kinetic;       // defaults to ones
    std::vector<double> shift;         // defaults to zeros

    // grid
    std::vector<int> dims{256};
    std::vector<double> lengths;       // defaults to 2*pi per axis

    // solver
    double dt = 0.05;
    std::optional<double> vmax;        // default derived from the potential range
    double tol = 1e-10;
    int max_iter = 200000;
    std::string rule = "endpoint";     // "endpoint" | "midpoint"
    std::string direction = "backward";
    std::string seed_kind = "zero";    // "zero" | "random"
    unsigned long long seed = 0;

    // mather
    double mather_tol = 1e-6;

    std::vector<SymmetryElementSpec> symmetry;
    std::filesystem::path output_dir = "out";

    /// Parses the JSON document; unknown keys are rejected. Throws
    /// ConfigError naming the offending field.
    static RunConfig from_json_text(const std::string& text);
    static RunConfig from_file(const std::filesystem::path& path);

    /// Applies a dotted-path override such as "grid.dims=[64,64]" or
    /// "dt=0.1" to the JSON document before parsing.
    static RunConfig from_file_with_overrides(const std::filesystem::path& path,
                                              const std::vector<std::string>& overrides);

    void validate() const;

    PeriodicGrid make_grid() const;
    LagrangianModel make_model() const;
    double effective_vmax() const;
    ActionKernel make_kernel() const;
    GridFunction make_seed(const PeriodicGrid& grid) const;
    std::optional<SymmetryGroup> make_group(const PeriodicGrid& grid) const;
    Direction make_direction() const;
};

}  // namespace weakkam
