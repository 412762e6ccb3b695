#include "omdyn/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace omdyn {

namespace {

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

const char* kind_name(ConfigErrorKind k) {
    switch (k) {
        case ConfigErrorKind::UnknownKey: return "unknown key";
        case ConfigErrorKind::MalformedNumber: return "malformed number";
        case ConfigErrorKind::ConstraintViolation: return "constraint violation";
        case ConfigErrorKind::BadSection: return "bad section";
    }
    return "error";
}

double parse_number(const std::string& value, int line) {
    const std::string v = trim(value);
    double out = 0;
    const char* first = v.data();
    const char* last = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError(ConfigErrorKind::MalformedNumber, line, "cannot parse '" + v + "'");
    return out;
}

int parse_int(const std::string& value, int line) {
    const std::string v = trim(value);
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError(ConfigErrorKind::MalformedNumber, line, "cannot parse '" + v + "'");
    return out;
}

SweepParam parse_sweep_param(const std::string& v, int line) {
    if (v == "jm") return SweepParam::Jm;
    if (v == "delta") return SweepParam::Delta;
    if (v == "alpha_in") return SweepParam::AlphaIn;
    if (v == "theta") return SweepParam::Theta;
    if (v == "kappa") return SweepParam::Kappa;
    throw ConfigError(ConfigErrorKind::MalformedNumber, line,
                      "unknown sweep parameter '" + v + "'");
}

SweepTask parse_task(const std::string& v, int line) {
    if (v == "count") return SweepTask::Count;
    if (v == "stability") return SweepTask::Stability;
    if (v == "attractor") return SweepTask::Attractor;
    if (v == "basin") return SweepTask::Basin;
    throw ConfigError(ConfigErrorKind::MalformedNumber, line, "unknown task '" + v + "'");
}

}  // namespace

ConfigError::ConfigError(ConfigErrorKind kind, int line, const std::string& msg)
    : std::runtime_error("config line " + std::to_string(line) + ": " +
                         std::string(kind_name(kind)) + ": " + msg),
      kind_(kind),
      line_(line) {}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(ConfigErrorKind::BadSection, line_no, "unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "system" && section != "integration" && section != "sweep" &&
                section != "output")
                throw ConfigError(ConfigErrorKind::BadSection, line_no,
                                  "unknown section '" + section + "'");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(ConfigErrorKind::UnknownKey, line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        auto unknown = [&]() -> ConfigError {
            return ConfigError(ConfigErrorKind::UnknownKey, line_no,
                               "'" + key + "' in section [" + section + "]");
        };

        if (section == "system") {
            SystemParams& p = cfg.params;
            if (key == "omega1") p.omega1 = parse_number(value, line_no);
            else if (key == "omega2") p.omega2 = parse_number(value, line_no);
            else if (key == "kappa") p.kappa = parse_number(value, line_no);
            else if (key == "delta") p.delta = parse_number(value, line_no);
            else if (key == "g1") p.g1 = parse_number(value, line_no);
            else if (key == "g2") p.g2 = parse_number(value, line_no);
            else if (key == "gamma1") p.gamma1 = parse_number(value, line_no);
            else if (key == "gamma2") p.gamma2 = parse_number(value, line_no);
            else if (key == "jm") p.jm = parse_number(value, line_no);
            else if (key == "theta") p.theta = parse_number(value, line_no);
            else if (key == "alpha_in") p.alpha_in = parse_number(value, line_no);
            else if (key == "convention") {
                if (value == "paper") p.convention = Convention::Paper;
                else if (value == "rederived") p.convention = Convention::Rederived;
                else throw ConfigError(ConfigErrorKind::MalformedNumber, line_no,
                                       "convention must be paper|rederived");
            } else throw unknown();
            if (!p.valid())
                throw ConfigError(ConfigErrorKind::ConstraintViolation, line_no,
                                  "'" + key + "' violates kappa>0, gamma>0, jm>=0, finite");
        } else if (section == "integration") {
            IntegrationConfig& ic = cfg.integ;
            if (key == "dt") ic.dt = parse_number(value, line_no);
            else if (key == "t_total") ic.t_total = parse_number(value, line_no);
            else if (key == "t_transient") ic.t_transient = parse_number(value, line_no);
            else if (key == "record_stride") ic.record_stride = parse_int(value, line_no);
            else if (key == "blow_up_bound") ic.blow_up_bound = parse_number(value, line_no);
            else throw unknown();
            if (!ic.valid())
                throw ConfigError(ConfigErrorKind::ConstraintViolation, line_no,
                                  "'" + key + "' violates dt>0, t_transient<t_total, stride>=1");
        } else if (section == "sweep") {
            cfg.grid_seen = true;
            GridSpec& g = cfg.grid;
            if (key == "param1") g.x.param = parse_sweep_param(value, line_no);
            else if (key == "min1") g.x.min = parse_number(value, line_no);
            else if (key == "max1") g.x.max = parse_number(value, line_no);
            else if (key == "n1") g.x.n = parse_int(value, line_no);
            else if (key == "param2") g.y.param = parse_sweep_param(value, line_no);
            else if (key == "min2") g.y.min = parse_number(value, line_no);
            else if (key == "max2") g.y.max = parse_number(value, line_no);
            else if (key == "n2") g.y.n = parse_int(value, line_no);
            else if (key == "task") g.task = parse_task(value, line_no);
            else if (key == "basin_var_x") g.basin_var_x = parse_int(value, line_no);
            else if (key == "basin_var_y") g.basin_var_y = parse_int(value, line_no);
            else throw unknown();
            if (g.x.n < 2 || g.y.n < 2)
                throw ConfigError(ConfigErrorKind::ConstraintViolation, line_no,
                                  "grid needs n >= 2 per axis");
        } else if (section == "output") {
            if (key == "path") cfg.out_path = value;
            else if (key == "plot_script") {
                if (value == "true" || value == "1") cfg.emit_plot_script = true;
                else if (value == "false" || value == "0") cfg.emit_plot_script = false;
                else throw ConfigError(ConfigErrorKind::MalformedNumber, line_no,
                                       "plot_script must be true|false");
            } else if (key == "workers") cfg.workers = parse_int(value, line_no);
            else throw unknown();
        } else {
            throw ConfigError(ConfigErrorKind::UnknownKey, line_no,
                              "key '" + key + "' outside any section");
        }
    }
    cfg.grid.base = cfg.params;
    cfg.grid.integ = cfg.integ;
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace omdyn
