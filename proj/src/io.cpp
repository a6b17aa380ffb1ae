#include "chiptrap/io.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace chiptrap::io {

namespace {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

nlohmann::json config_json(const heff::SolverConfig& config, double phi2) {
    return {{"rho_sq", config.rho_sq}, {"m", config.m},       {"phi", config.phi},
            {"phi2", phi2},            {"dr", config.dr},     {"n", config.n_points},
            {"h_reg", config.h_reg},   {"shift", config.shift_to_trap_bottom}};
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

std::vector<ResonanceRow> flatten(const std::vector<resonance::ScanPoint>& points) {
    std::vector<ResonanceRow> rows;
    for (const auto& point : points) {
        if (!point.ok()) continue;
        for (const auto& res : point.resonances)
            rows.push_back({point.rho_sq, point.m, res.label, res.energy, res.gamma,
                            res.stability});
    }
    return rows;
}

void write_resonance_csv(std::ostream& os, const std::vector<ResonanceRow>& rows,
                         const heff::SolverConfig& config, double phi2) {
    os << "# resonance table\n";
    os << "# units: E and Gamma in hbar*omega_T (zero at the trap bottom), "
          "stability dimensionless\n";
    os << "# config: rho_sq=" << fmt9(config.rho_sq) << " m=" << config.m
       << " phi=" << fmt9(config.phi) << " phi2=" << fmt9(phi2)
       << " dr=" << fmt9(config.dr) << " n=" << config.n_points
       << " h_reg=" << fmt9(config.h_reg)
       << " shift=" << (config.shift_to_trap_bottom ? 1 : 0) << "\n";
    os << "rho_sq,m,label,E,Gamma,stability\n";
    for (const auto& row : rows)
        os << fmt9(row.rho_sq) << ',' << row.m << ',' << row.label << ','
           << fmt9(row.energy) << ',' << fmt9(row.gamma) << ',' << fmt9(row.stability)
           << '\n';
}

std::vector<ResonanceRow> read_resonance_csv(std::istream& is) {
    std::vector<ResonanceRow> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // column header
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 6)
            throw std::runtime_error("malformed resonance CSV row: " + line);
        rows.push_back({std::stod(fields[0]), std::stoi(fields[1]), std::stoi(fields[2]),
                        std::stod(fields[3]), std::stod(fields[4]),
                        std::stod(fields[5])});
    }
    return rows;
}

void write_resonance_json(std::ostream& os, const std::vector<ResonanceRow>& rows,
                          const heff::SolverConfig& config, double phi2) {
    nlohmann::json j;
    j["config"] = config_json(config, phi2);
    j["results"] = nlohmann::json::array();
    for (const auto& row : rows)
        j["results"].push_back({{"rho_sq", row.rho_sq},
                                {"m", row.m},
                                {"label", row.label},
                                {"E", row.energy},
                                {"Gamma", row.gamma},
                                {"stability", row.stability}});
    os << j.dump(2) << '\n';
}

std::vector<ResonanceRow> read_resonance_json(std::istream& is) {
    nlohmann::json j;
    is >> j;
    std::vector<ResonanceRow> rows;
    for (const auto& item : j.at("results"))
        rows.push_back({item.at("rho_sq"), item.at("m"), item.at("label"), item.at("E"),
                        item.at("Gamma"), item.at("stability")});
    return rows;
}

void write_experimental_csv(std::ostream& os,
                            const std::vector<expmap::ExperimentalPoint>& points,
                            const std::string& context) {
    os << "# experimental mapping";
    if (!context.empty()) os << ": " << context;
    os << '\n';
    os << "# units: bz in Gauss, gradient in T/m, nu_t/nu_exp/splitting in Hz, "
          "lifetime in s\n";
    os << "bz_gauss,gradient,nu_t,omega_ratio,lifetime,splitting,nu_exp,e_num,gamma_num\n";
    for (const auto& p : points)
        os << fmt9(p.bz_gauss) << ',' << fmt9(p.gradient) << ',' << fmt9(p.nu_t) << ','
           << fmt9(p.omega_ratio) << ',' << fmt9(p.lifetime) << ',' << fmt9(p.splitting)
           << ',' << fmt9(p.nu_exp) << ',' << fmt9(p.e_num) << ',' << fmt9(p.gamma_num)
           << '\n';
}

std::vector<expmap::ExperimentalPoint> read_experimental_csv(std::istream& is) {
    std::vector<expmap::ExperimentalPoint> points;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 9)
            throw std::runtime_error("malformed experimental CSV row: " + line);
        expmap::ExperimentalPoint p;
        p.bz_gauss = std::stod(fields[0]);
        p.gradient = std::stod(fields[1]);
        p.nu_t = std::stod(fields[2]);
        p.omega_ratio = std::stod(fields[3]);
        p.lifetime = std::stod(fields[4]);
        p.splitting = std::stod(fields[5]);
        p.nu_exp = std::stod(fields[6]);
        p.e_num = std::stod(fields[7]);
        p.gamma_num = std::stod(fields[8]);
        p.stable = std::isinf(p.lifetime);
        points.push_back(p);
    }
    return points;
}

void write_experimental_json(std::ostream& os,
                             const std::vector<expmap::ExperimentalPoint>& points,
                             const std::string& context) {
    nlohmann::json j;
    j["config"] = {{"context", context}};
    j["results"] = nlohmann::json::array();
    for (const auto& p : points) {
        nlohmann::json item = {{"bz_gauss", p.bz_gauss},   {"gradient", p.gradient},
                               {"nu_t", p.nu_t},           {"omega_ratio", p.omega_ratio},
                               {"splitting", p.splitting}, {"nu_exp", p.nu_exp},
                               {"e_num", p.e_num},         {"gamma_num", p.gamma_num},
                               {"stable", p.stable}};
        if (std::isinf(p.lifetime))
            item["lifetime"] = "stable";
        else
            item["lifetime"] = p.lifetime;
        j["results"].push_back(item);
    }
    os << j.dump(2) << '\n';
}

}  // namespace chiptrap::io
