#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "chiptrap/expmap.hpp"
#include "chiptrap/heff.hpp"
#include "chiptrap/resonance.hpp"

namespace chiptrap::io {

// Flat record for the resonance tables consumed downstream.
struct ResonanceRow {
    double rho_sq = 0.0;
    int m = 0;
    int label = 0;
    double energy = 0.0;
    double gamma = 0.0;
    double stability = 0.0;
};

std::vector<ResonanceRow> flatten(const std::vector<resonance::ScanPoint>& points);

// CSV with '#'-prefixed header comments carrying units and the config echo;
// numeric fields use 9 significant digits.
void write_resonance_csv(std::ostream& os, const std::vector<ResonanceRow>& rows,
                         const heff::SolverConfig& config, double phi2);
std::vector<ResonanceRow> read_resonance_csv(std::istream& is);

// JSON with a top-level "config" object and a "results" array; numbers are
// written unrounded.
void write_resonance_json(std::ostream& os, const std::vector<ResonanceRow>& rows,
                          const heff::SolverConfig& config, double phi2);
std::vector<ResonanceRow> read_resonance_json(std::istream& is);

void write_experimental_csv(std::ostream& os,
                            const std::vector<expmap::ExperimentalPoint>& points,
                            const std::string& context);
std::vector<expmap::ExperimentalPoint> read_experimental_csv(std::istream& is);

void write_experimental_json(std::ostream& os,
                             const std::vector<expmap::ExperimentalPoint>& points,
                             const std::string& context);

}  // namespace chiptrap::io
