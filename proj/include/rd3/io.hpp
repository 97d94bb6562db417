#pragma once

#include "rd3/bvp.hpp"
#include "rd3/continuation.hpp"
#include "rd3/kernels.hpp"

#include "json.hpp"

#include <map>
#include <string>
#include <vector>

namespace rd3::io {

/// 17 significant digits, round-trip exact.
std::string fmt(double x);

/// Flat key=value configuration. '#' starts a comment; blank lines are ignored.
using Config = std::map<std::string, std::string>;
Config read_config(const std::string& path);
/// Parse "key=value" overrides on top of an existing config.
void apply_overrides(Config& cfg, const std::vector<std::string>& kv);

double get(const Config& cfg, const std::string& key, double fallback);
int get_int(const Config& cfg, const std::string& key, int fallback);
std::string get_str(const Config& cfg, const std::string& key, const std::string& fallback);

/// SystemParams from keys eps, A0, A1, B0, B1, C0, C1, D, L (missing keys keep `base`).
SystemParams params_from(const Config& cfg, SystemParams base = {});
nlohmann::json to_json(const SystemParams& p);

/// Column-labelled numeric table.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};
void write_csv(const std::string& path, const Table& t);
Table read_csv(const std::string& path);

Table orbit_table(const PeriodicOrbit& orbit);
Table profile_table(const Profile& f, double L, int n);
Table diagram_table(const std::vector<DiagramRow>& rows);
Table region_table(const std::vector<kernels::RegionCell>& cells);

void write_json(const std::string& path, const nlohmann::json& j);

/// Create the directory (and parents) or throw IoError.
void ensure_dir(const std::string& dir);

}  // namespace rd3::io
