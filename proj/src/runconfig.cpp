#include "chiptrap/runconfig.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chiptrap::runconfig {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw std::invalid_argument("config key '" + key + "': expected a boolean, got '" +
                                value + "'");
}

double parse_double(const std::string& value, const std::string& key) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': expected a number, got '" +
                                    value + "'");
    }
}

int parse_int(const std::string& value, const std::string& key) {
    const double v = parse_double(value, key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw std::invalid_argument("config key '" + key + "': expected an integer");
    return i;
}

}  // namespace

void RunConfig::validate() const {
    solver.validate();
    species.validate();
    if (phi2 < 0.0 || phi2 >= constants::pi / 4.0)
        throw std::invalid_argument("phi2 must lie in [0, pi/4)");
    if (phi2 == solver.phi)
        throw std::invalid_argument("phi2 must differ from phi");
    if (format != "csv" && format != "json")
        throw std::invalid_argument("format must be csv or json");
    if (threads < 1) throw std::invalid_argument("threads must be at least 1");
    if (bz_gauss <= 0.0) throw std::invalid_argument("bz must be positive");
}

ConfigSections parse_config_text(const std::string& text) {
    ConfigSections sections;
    std::istringstream is(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        if (stripped.front() == '[') {
            if (stripped.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": unterminated section header");
            section = trim(stripped.substr(1, stripped.size() - 2));
            sections[section];
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": empty key");
        sections[section][key] = value;
    }
    return sections;
}

ConfigSections parse_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << file.rdbuf();
    return parse_config_text(buffer.str());
}

void apply_config(const ConfigSections& sections, RunConfig& config) {
    for (const auto& [section, entries] : sections) {
        for (const auto& [key, value] : entries) {
            if (section == "solver") {
                if (key == "rho_sq") config.solver.rho_sq = parse_double(value, key);
                else if (key == "m") config.solver.m = parse_int(value, key);
                else if (key == "phi") config.solver.phi = parse_double(value, key);
                else if (key == "phi2") config.phi2 = parse_double(value, key);
                else if (key == "dr") config.solver.dr = parse_double(value, key);
                else if (key == "n") config.solver.n_points = parse_int(value, key);
                else if (key == "h_reg") config.solver.h_reg = parse_double(value, key);
                else if (key == "shift")
                    config.solver.shift_to_trap_bottom = parse_bool(value, key);
                else
                    throw std::invalid_argument("unknown [solver] key: " + key);
            } else if (section == "species") {
                if (key == "name") config.species.name = value;
                else if (key == "mass_kg") config.species.mass = parse_double(value, key);
                else if (key == "mass_amu")
                    config.species.mass = parse_double(value, key) *
                                          constants::atomic_mass_unit;
                else if (key == "mu_b") config.species.mu_b = parse_double(value, key);
                else if (key == "hbar") config.species.hbar = parse_double(value, key);
                else
                    throw std::invalid_argument("unknown [species] key: " + key);
            } else if (section == "output") {
                if (key == "out") config.out_path = value;
                else if (key == "format") config.format = value;
                else if (key == "from_constants")
                    config.from_constants = parse_bool(value, key);
                else if (key == "bz") config.bz_gauss = parse_double(value, key);
                else
                    throw std::invalid_argument("unknown [output] key: " + key);
            } else {
                throw std::invalid_argument("unknown config section: [" + section + "]");
            }
        }
    }
}

int threads_from_environment() {
    const char* env = std::getenv("CHIPTRAP_THREADS");
    if (!env) return 0;
    try {
        const int n = std::stoi(env);
        return n > 0 ? n : 0;
    } catch (const std::exception&) {
        return 0;
    }
}

}  // namespace chiptrap::runconfig
