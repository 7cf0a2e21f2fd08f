#pragma once

#include <string>

#include "sspare/errors.hpp"
#include "sspare/scenario.hpp"

namespace sspare {

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Scenario files are JSON, one scenario per file. Every key is checked:
// unknown keys are rejected with their path, so typos never silently fall
// back to defaults. Parsed scenarios are validated before being returned.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

// Serializes the full explicit field tree; parse(serialize(s)) == s.
std::string serialize_scenario(const Scenario& s);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace sspare
