#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "harmext/boundary.hpp"
#include "harmext/curve.hpp"

#include <nlohmann/json.hpp>

namespace harmext {

enum class Stage { Compat, Analyze, Hilbert, Extend };

struct Knobs {
    int order = 32;          // truncation order K
    int grid_m = 256;        // boundary sample grid M
    int base_lattice = 128;  // extension base points
    int profile_grid = 256;  // d-profile nodes
    int extend_order = 24;   // local series rectangle for evaluation
};

struct PointSpec {
    enum class Kind { None, Ring, Csv } kind = Kind::None;
    double radius = 0.0;
    int count = 0;
    std::filesystem::path csv_path;
};

struct JobConfig {
    JobConfig(CurveModel c, BoundaryData d) : curve(std::move(c)), data(std::move(d)) {}

    CurveModel curve;
    BoundaryData data;
    Knobs knobs;
    std::vector<Stage> outputs;
    PointSpec points;
    std::filesystem::path out_dir = "out";
    nlohmann::json echo;  // normalized configuration for the report
};

// Parses a JSON (or TOML, by extension) job description; throws ConfigError
// on any malformed or missing field.
JobConfig load_config(const std::filesystem::path& path);

JobConfig config_from_json(const nlohmann::json& j,
                           const std::filesystem::path& base_dir = ".");

// Minimal TOML-to-JSON conversion covering tables, arrays of tables, inline
// tables, arrays, strings, numbers and booleans.
nlohmann::json toml_to_json(const std::string& text);

const char* to_string(Stage s);

}  // namespace harmext
