// INI-style run configuration: sections [system], [integration], [sweep],
// [output]; '#' comments; key = value. Unknown keys, malformed numbers and
// constraint violations produce line-numbered diagnostics.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "omdyn/sweep.hpp"

namespace omdyn {

struct RunConfig {
    SystemParams params{};
    IntegrationConfig integ{};
    GridSpec grid{};
    bool grid_seen = false;       // any [sweep] key present
    std::string out_path;
    bool emit_plot_script = false;
    int workers = 1;
};

enum class ConfigErrorKind { UnknownKey, MalformedNumber, ConstraintViolation, BadSection };

class ConfigError : public std::runtime_error {
public:
    ConfigError(ConfigErrorKind kind, int line, const std::string& msg);
    ConfigErrorKind kind() const { return kind_; }
    int line() const { return line_; }

private:
    ConfigErrorKind kind_;
    int line_;
};

// Parses over defaults; throws ConfigError on the first problem.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

}  // namespace omdyn
