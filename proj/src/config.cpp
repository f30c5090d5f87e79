#include "weakkam/config.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <numbers>
#include <random>
#include <set>

#include "json.hpp"
#include "weakkam/csv.hpp"

namespace weakkam {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, _] : j.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError(fmt::format("config: unknown key \"{}\" in {}", key, where));
        }
    }
}

template <typename T>
void read_into(const json& j, const char* key, T& out) {
    if (j.contains(key)) {
        try {
            out = j.at(key).get<T>();
        } catch (const json::exception&) {
            throw ConfigError(fmt::format("config: field \"{}\" has the wrong type", key));
        }
    }
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(fmt::format("config: invalid JSON ({})", e.what()));
    }
    reject_unknown(j, {"model", "grid", "dt", "vmax", "tol", "max_iter", "rule", "direction",
                       "seed_kind", "seed", "mather_tol", "symmetry", "output_dir"},
                   "top level");
    RunConfig c;
    if (j.contains("model")) {
        const auto& m = j.at("model");
        reject_unknown(m, {"kind", "potential", "kinetic", "shift"}, "model");
        if (m.contains("potential")) {
            const auto& p = m.at("potential");
            if (p.is_string()) {
                c.potential = p.get<std::string>();
            } else if (p.is_object() && p.contains("csv")) {
                c.potential = p.at("csv").get<std::string>();
            } else {
                throw ConfigError("config: model.potential must be a name or {\"csv\": path}");
            }
        }
        read_into(m, "kinetic", c.kinetic);
        read_into(m, "shift", c.shift);
    }
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        reject_unknown(g, {"dims", "lengths"}, "grid");
        read_into(g, "dims", c.dims);
        read_into(g, "lengths", c.lengths);
    }
    read_into(j, "dt", c.dt);
    if (j.contains("vmax")) {
        double v = 0.0;
        read_into(j, "vmax", v);
        c.vmax = v;
    }
    read_into(j, "tol", c.tol);
    read_into(j, "max_iter", c.max_iter);
    read_into(j, "rule", c.rule);
    read_into(j, "direction", c.direction);
    read_into(j, "seed_kind", c.seed_kind);
    read_into(j, "seed", c.seed);
    read_into(j, "mather_tol", c.mather_tol);
    if (j.contains("symmetry")) {
        const auto& s = j.at("symmetry");
        reject_unknown(s, {"elements"}, "symmetry");
        if (s.contains("elements")) {
            for (const auto& e : s.at("elements")) {
                reject_unknown(e, {"type", "axis", "amount"}, "symmetry.elements");
                SymmetryElementSpec spec;
                read_into(e, "type", spec.type);
                read_into(e, "axis", spec.axis);
                read_into(e, "amount", spec.amount);
                c.symmetry.push_back(std::move(spec));
            }
        }
    }
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    c.validate();
    return c;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
    return from_file_with_overrides(path, {});
}

RunConfig RunConfig::from_file_with_overrides(const std::filesystem::path& path,
                                              const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(fmt::format("config: invalid JSON in {} ({})", path.string(), e.what()));
    }
    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(fmt::format("config: override \"{}\" is not key=value", ov));
        }
        const std::string keypath = ov.substr(0, eq);
        const std::string raw = ov.substr(eq + 1);
        json value;
        try {
            value = json::parse(raw);
        } catch (const json::exception&) {
            value = raw;  // bare strings allowed
        }
        json* cur = &j;
        std::size_t start = 0;
        while (true) {
            const auto dot = keypath.find('.', start);
            const std::string part = keypath.substr(start, dot - start);
            if (part.empty()) throw ConfigError("config: empty key in override " + ov);
            if (dot == std::string::npos) {
                (*cur)[part] = value;
                break;
            }
            cur = &(*cur)[part];
            start = dot + 1;
        }
    }
    return from_json_text(j.dump());
}

void RunConfig::validate() const {
    const int d = static_cast<int>(dims.size());
    if (d == 0) throw ConfigError("config: grid.dims must be non-empty");
    for (int n : dims) {
        if (n < 3) throw ConfigError("config: every entry of grid.dims must be at least 3");
    }
    if (!lengths.empty() && static_cast<int>(lengths.size()) != d) {
        throw ConfigError("config: grid.lengths size must match grid.dims");
    }
    for (double l : lengths) {
        if (!(l > 0.0)) throw ConfigError("config: grid.lengths entries must be positive");
    }
    if (!kinetic.empty() && static_cast<int>(kinetic.size()) != d) {
        throw ConfigError("config: model.kinetic size must match grid.dims");
    }
    for (double m : kinetic) {
        if (!(m > 0.0)) throw ConfigError("config: model.kinetic entries must be positive");
    }
    if (!shift.empty() && static_cast<int>(shift.size()) != d) {
        throw ConfigError("config: model.shift size must match grid.dims");
    }
    if (!(dt > 0.0)) throw ConfigError("config: dt must be positive");
    if (vmax && !(*vmax > 0.0)) throw ConfigError("config: vmax must be positive");
    if (!(tol > 0.0)) throw ConfigError("config: tol must be positive");
    if (max_iter <= 0) throw ConfigError("config: max_iter must be positive");
    if (!(mather_tol > 0.0)) throw ConfigError("config: mather_tol must be positive");
    if (rule != "endpoint" && rule != "midpoint") {
        throw ConfigError("config: rule must be \"endpoint\" or \"midpoint\"");
    }
    if (direction != "backward" && direction != "forward") {
        throw ConfigError("config: direction must be \"backward\" or \"forward\"");
    }
    if (seed_kind != "zero" && seed_kind != "random") {
        throw ConfigError("config: seed_kind must be \"zero\" or \"random\"");
    }
    for (const auto& s : symmetry) {
        if (s.type != "shift" && s.type != "reflection") {
            throw ConfigError("config: symmetry element type must be \"shift\" or \"reflection\"");
        }
        if (s.axis < 0 || s.axis >= d) {
            throw ConfigError("config: symmetry element axis out of range");
        }
    }
}

PeriodicGrid RunConfig::make_grid() const {
    std::vector<double> len = lengths;
    if (len.empty()) len.assign(dims.size(), 2.0 * std::numbers::pi);
    return PeriodicGrid(dims, len);
}

LagrangianModel RunConfig::make_model() const {
    std::shared_ptr<const Potential> pot;
    if (potential == "cosine") {
        pot = std::make_shared<CosinePotential>();
    } else if (potential == "zero") {
        pot = std::make_shared<ZeroPotential>();
    } else {
        pot = std::make_shared<TabulatedPotential>(
            read_grid_function_csv(potential, make_grid()));
    }
    std::vector<double> kin = kinetic;
    if (kin.empty()) kin.assign(dims.size(), 1.0);
    std::vector<double> sh = shift;
    if (sh.empty()) sh.assign(dims.size(), 0.0);
    return LagrangianModel(std::move(pot), std::move(kin), std::move(sh));
}

double RunConfig::effective_vmax() const {
    if (vmax) return *vmax;
    // Potential range over the grid bounds the speed of minimizing curves.
    const auto grid = make_grid();
    const auto model = make_model();
    double umin = std::numeric_limits<double>::infinity();
    double umax = -umin;
    for (int p = 0; p < grid.size(); ++p) {
        const auto pos = grid.position(p);
        const std::vector<double> v0(grid.ndim(), 0.0);
        const double u = -model.eval(pos, v0);  // L(x,0) = -U(x) up to the shift
        umin = std::min(umin, u);
        umax = std::max(umax, u);
    }
    double spmax = 0.0;
    for (int i = 0; i < grid.ndim(); ++i) spmax = std::max(spmax, grid.spacing(i));
    return 2.0 * (1.0 + (umax - umin)) * std::max(1.0, spmax / dt);
}

ActionKernel RunConfig::make_kernel() const {
    return build_kernel(make_model(), make_grid(), dt, effective_vmax(),
                        rule == "midpoint" ? ActionRule::Midpoint : ActionRule::Endpoint);
}

GridFunction RunConfig::make_seed(const PeriodicGrid& grid) const {
    if (seed_kind == "zero") return GridFunction(grid, 0.0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> vals(grid.size());
    for (double& v : vals) v = dist(rng);
    return GridFunction(grid, std::move(vals));
}

std::optional<SymmetryGroup> RunConfig::make_group(const PeriodicGrid& grid) const {
    if (symmetry.empty()) return std::nullopt;
    std::vector<GridSymmetry> gens;
    gens.push_back(make_identity(grid));
    for (const auto& s : symmetry) {
        if (s.type == "shift") {
            gens.push_back(make_shift(grid, s.axis, s.amount));
        } else {
            gens.push_back(make_reflection(grid, s.axis));
        }
    }
    return SymmetryGroup::generate(std::move(gens));
}

Direction RunConfig::make_direction() const {
    return direction == "forward" ? Direction::Forward : Direction::Backward;
}

}  // namespace weakkam
