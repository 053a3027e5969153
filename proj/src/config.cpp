#include "vortsim/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "vortsim/errors.hpp"

namespace vortsim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view value, const std::string& key) {
    double out = 0.0;
    const auto* begin = value.data();
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end)
        fail("config", "key '" + key + "': expected a number, got '" + std::string(value) + "'");
    return out;
}

int parse_int(std::string_view value, const std::string& key) {
    int out = 0;
    const auto* begin = value.data();
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end)
        fail("config", "key '" + key + "': expected an integer, got '" + std::string(value) + "'");
    return out;
}

bool parse_bool(std::string_view value, const std::string& key) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    fail("config", "key '" + key + "': expected true/false, got '" + std::string(value) + "'");
}

template <typename T, typename Parse>
std::vector<T> parse_list(std::string_view value, const std::string& key, Parse parse) {
    std::vector<T> out;
    std::size_t pos = 0;
    while (pos <= value.size()) {
        const std::size_t comma = value.find(',', pos);
        const std::string_view item =
            trim(value.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
        if (item.empty()) fail("config", "key '" + key + "': empty list element");
        out.push_back(parse(item, key));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) fail("config", "key '" + key + "': empty list");
    return out;
}

std::string join_path(const std::string& base, const std::string& rel) {
    if (rel.empty() || rel.front() == '/') return rel;
    if (base.empty() || base == ".") return rel;
    return base + "/" + rel;
}

}  // namespace

std::vector<TablePoint> load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("io", "cannot open table file '" + path + "'");
    std::vector<TablePoint> table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream row(line);
        double t = 0.0, v = 0.0;
        if (!(row >> t)) continue;  // blank or comment-only line
        if (!(row >> v))
            fail("config", path + ":" + std::to_string(line_no) + ": expected two columns");
        double extra;
        if (row >> extra)
            fail("config", path + ":" + std::to_string(line_no) + ": expected two columns");
        if (!table.empty() && !(t > table.back().t))
            fail("config", path + ":" + std::to_string(line_no) + ": times must be strictly increasing");
        table.push_back({t, v});
    }
    if (table.size() < 2) fail("config", path + ": table needs at least two rows");
    return table;
}

RunConfig parse_config(std::string_view text, const std::string& base_dir) {
    RunConfig cfg;
    std::set<std::string> seen;
    std::size_t pos = 0, line_no = 0;
    std::string drive_table_path, mass_table_path;

    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            fail("config", "line " + std::to_string(line_no) + ": expected key = value");
        const std::string key{trim(line.substr(0, eq))};
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            fail("config", "line " + std::to_string(line_no) + ": expected key = value");
        if (!seen.insert(key).second)
            fail("config", "duplicate key '" + key + "'");

        if (key == "device.length_x") cfg.device.length_x = parse_double(value, key);
        else if (key == "device.length_y") cfg.device.length_y = parse_double(value, key);
        else if (key == "device.thickness") cfg.device.thickness = parse_double(value, key);
        else if (key == "device.coherence_length") cfg.device.coherence_length = parse_double(value, key);
        else if (key == "device.penetration_depth") cfg.device.penetration_depth = parse_double(value, key);
        else if (key == "device.suppression_factor") cfg.device.suppression_factor = parse_double(value, key);
        else if (key == "device.light_speed_ratio") cfg.device.light_speed_ratio = parse_double(value, key);
        else if (key == "pulse.amplitude") cfg.pulse.amplitude = parse_double(value, key);
        else if (key == "pulse.width") cfg.pulse.width = parse_double(value, key);
        else if (key == "pulse.window_start") cfg.pulse.window_start = parse_double(value, key);
        else if (key == "pulse.window_end") cfg.pulse.window_end = parse_double(value, key);
        else if (key == "pulse.shape") {
            if (value == "gaussian_derivative") cfg.pulse.shape = PulseShape::GaussianDerivative;
            else if (value == "tabulated") cfg.pulse.shape = PulseShape::Tabulated;
            else fail("config", "key 'pulse.shape': unknown shape '" + std::string(value) + "'");
        }
        else if (key == "pulse.table") drive_table_path = std::string(value);
        else if (key == "pulse.mass") cfg.pulse.mass = parse_double(value, key);
        else if (key == "pulse.mass_table") mass_table_path = std::string(value);
        else if (key == "pulse.regulator_mass") cfg.pulse.regulator_mass = parse_double(value, key);
        else if (key == "grid.slots") cfg.grid.slots = parse_int(value, key);
        else if (key == "grid.transverse_modes")
            cfg.grid.transverse_indices = parse_list<int>(value, key, parse_int);
        else if (key == "grid.gauge_quanta") cfg.grid.gauge_quanta = parse_int(value, key);
        else if (key == "integrator.dt") cfg.integrator.dt = parse_double(value, key);
        else if (key == "integrator.sample_stride") cfg.integrator.sample_stride = parse_int(value, key);
        else if (key == "integrator.convergence_tol") cfg.integrator.convergence_tol = parse_double(value, key);
        else if (key == "sweep.masses")
            cfg.sweep_masses = parse_list<double>(value, key, parse_double);
        else if (key == "transport.uv_coefficient") {
            if (value == "calibrate") cfg.uv_coefficient.reset();
            else cfg.uv_coefficient = parse_double(value, key);
        }
        else if (key == "transport.calibration_mass") cfg.calibration_mass = parse_double(value, key);
        else if (key == "output.directory") cfg.output.directory = std::string(value);
        else if (key == "output.emit_per_mode") cfg.output.emit_per_mode = parse_bool(value, key);
        else if (key == "output.emit_plot_scripts") cfg.output.emit_plot_scripts = parse_bool(value, key);
        else if (key == "threads") cfg.threads = parse_int(value, key);
        else fail("config", "unknown key '" + key + "'");
    }

    if (!drive_table_path.empty())
        cfg.pulse.drive_table = load_table(join_path(base_dir, drive_table_path));
    if (!mass_table_path.empty())
        cfg.pulse.mass_table = load_table(join_path(base_dir, mass_table_path));

    cfg.device = DeviceParams::make(cfg.device.length_x, cfg.device.length_y,
                                    cfg.device.thickness, cfg.device.coherence_length,
                                    cfg.device.penetration_depth,
                                    cfg.device.suppression_factor,
                                    cfg.device.light_speed_ratio);
    cfg.pulse.gauge_quanta = cfg.grid.gauge_quanta;
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("io", "cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string dir = ".";
    const std::size_t slash = path.find_last_of('/');
    if (slash != std::string::npos) dir = path.substr(0, slash);
    return parse_config(buf.str(), dir);
}

void validate(const RunConfig& cfg) {
    validate(cfg.device);
    validate(cfg.pulse);
    if (cfg.grid.slots < 4 || cfg.grid.slots % 2 != 0)
        fail("config", "key 'grid.slots': must be even and at least 4");
    if (cfg.grid.transverse_indices.empty())
        fail("config", "key 'grid.transverse_modes': needs at least one m_y");
    {
        std::set<int> uniq(cfg.grid.transverse_indices.begin(),
                           cfg.grid.transverse_indices.end());
        if (uniq.size() != cfg.grid.transverse_indices.size())
            fail("config", "key 'grid.transverse_modes': duplicate m_y values");
    }
    if (cfg.pulse.gauge_quanta != cfg.grid.gauge_quanta)
        fail("config", "gauge_quanta mismatch between pulse and grid");
    if (!(cfg.integrator.dt > 0.0))
        fail("config", "key 'integrator.dt': must be positive");
    if (cfg.integrator.sample_stride < 1)
        fail("config", "key 'integrator.sample_stride': must be at least 1");
    if (!(cfg.integrator.convergence_tol > 0.0))
        fail("config", "key 'integrator.convergence_tol': must be positive");
    if (cfg.sweep_masses.empty())
        fail("config", "key 'sweep.masses': needs at least one value");
    for (double m : cfg.sweep_masses)
        if (!(m > 0.0)) fail("config", "key 'sweep.masses': masses must be positive");
    {
        std::set<double> uniq(cfg.sweep_masses.begin(), cfg.sweep_masses.end());
        if (uniq.size() != cfg.sweep_masses.size())
            fail("config", "key 'sweep.masses': duplicate M0 values");
    }
    if (cfg.uv_coefficient && !std::isfinite(*cfg.uv_coefficient))
        fail("config", "key 'transport.uv_coefficient': must be finite");
    if (!(cfg.calibration_mass > 0.0))
        fail("config", "key 'transport.calibration_mass': must be positive");
    if (cfg.threads < 0)
        fail("config", "key 'threads': must be non-negative");
    if (cfg.output.directory.empty())
        fail("config", "key 'output.directory': must not be empty");
}

}  // namespace vortsim
