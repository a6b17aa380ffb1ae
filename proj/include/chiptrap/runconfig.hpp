#pragma once

#include <map>
#include <string>

#include "chiptrap/heff.hpp"
#include "chiptrap/trapfield.hpp"

namespace chiptrap::runconfig {

// Everything one CLI invocation needs; defaults here, overridden first by a
// config file and then by command-line flags.
struct RunConfig {
    heff::SolverConfig solver;
    double phi2 = 0.3;  // stability partner angle
    trapfield::SpeciesConstants species = trapfield::SpeciesConstants::rb87();
    double bz_gauss = 0.05;
    std::string out_path;       // empty: stdout
    std::string format = "csv"; // csv | json
    bool from_constants = false;
    int threads = 1;

    void validate() const;
};

// Sections of a key-value config file: [solver], [species], [output].
using ConfigSections = std::map<std::string, std::map<std::string, std::string>>;

ConfigSections parse_config_file(const std::string& path);
ConfigSections parse_config_text(const std::string& text);

// Overlay file values onto `config`; unknown keys raise std::invalid_argument.
void apply_config(const ConfigSections& sections, RunConfig& config);

// Worker-thread count from the environment (CHIPTRAP_THREADS), or 0 if unset.
int threads_from_environment();

}  // namespace chiptrap::runconfig
