#include "rd3/io.hpp"

#include "rd3/errors.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace rd3::io {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

void put_kv(Config& cfg, const std::string& line, const std::string& where) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError("config: expected key=value in " + where + ": '" + line + "'");
    const std::string k = trim(line.substr(0, eq));
    if (k.empty()) throw DomainError("config: empty key in " + where);
    cfg[k] = trim(line.substr(eq + 1));
}

}  // namespace

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Config read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config " + path);
    Config cfg;
    std::string line;
    while (std::getline(in, line)) {
        const auto h = line.find('#');
        if (h != std::string::npos) line.resize(h);
        line = trim(line);
        if (!line.empty()) put_kv(cfg, line, path);
    }
    return cfg;
}

void apply_overrides(Config& cfg, const std::vector<std::string>& kv) {
    for (const auto& s : kv) put_kv(cfg, s, "override");
}

double get(const Config& cfg, const std::string& key, double fallback) {
    const auto it = cfg.find(key);
    if (it == cfg.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::logic_error&) {
        throw DomainError("config: '" + key + "' is not a number: " + it->second);
    }
}

int get_int(const Config& cfg, const std::string& key, int fallback) {
    const double v = get(cfg, key, fallback);
    if (v != static_cast<int>(v)) throw DomainError("config: '" + key + "' must be an integer");
    return static_cast<int>(v);
}

std::string get_str(const Config& cfg, const std::string& key, const std::string& fallback) {
    const auto it = cfg.find(key);
    return it == cfg.end() ? fallback : it->second;
}

SystemParams params_from(const Config& cfg, SystemParams p) {
    p.eps = get(cfg, "eps", p.eps);
    p.A0 = get(cfg, "A0", p.A0);
    p.A1 = get(cfg, "A1", p.A1);
    p.B0 = get(cfg, "B0", p.B0);
    p.B1 = get(cfg, "B1", p.B1);
    p.C0 = get(cfg, "C0", p.C0);
    p.C1 = get(cfg, "C1", p.C1);
    p.D = get(cfg, "D", p.D);
    p.L = get(cfg, "L", p.L);
    return p;
}

nlohmann::json to_json(const SystemParams& p) {
    return {{"eps", p.eps}, {"A0", p.A0}, {"A1", p.A1}, {"B0", p.B0}, {"B1", p.B1},
            {"C0", p.C0},   {"C1", p.C1}, {"D", p.D},   {"L", p.L}};
}

void write_csv(const std::string& path, const Table& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
    out << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << fmt(r[i]);
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

Table read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    Table t;
    std::string line;
    if (!std::getline(in, line)) return t;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) t.header.push_back(cell);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table orbit_table(const PeriodicOrbit& orbit) {
    Table t{{"x", "u", "p", "v", "q", "w", "r"}, {}};
    for (const auto& [x, y] : orbit.samples()) t.rows.push_back({x, y.u, y.p, y.v, y.q, y.w, y.r});
    return t;
}

Table profile_table(const Profile& f, double L, int n) {
    Table t{{"x", "u", "p", "v", "q", "w", "r"}, {}};
    for (int i = 0; i <= n; ++i) {
        const double x = -L + 2.0 * L * i / n;
        const PhasePoint y = f(x);
        t.rows.push_back({x, y.u, y.p, y.v, y.q, y.w, y.r});
    }
    return t;
}

Table diagram_table(const std::vector<DiagramRow>& rows) {
    Table t{{"step", "A", "mass", "stability_hint", "branch_id"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({double(r.step), r.A, r.mass, double(r.stability_hint), double(r.branch_id)});
    return t;
}

Table region_table(const std::vector<kernels::RegionCell>& cells) {
    // nearest_boundary: 0 line A1+B1=C1, 1 line A1+B1=-C1, 2 saddle-node curve
    Table t{{"A1", "B1", "count", "nearest_boundary", "distance"}, {}};
    for (const auto& c : cells) t.rows.push_back({c.A1, c.B1, double(c.count), double(int(c.nearest)), c.distance});
    return t;
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create directory " + dir);
}

}  // namespace rd3::io
