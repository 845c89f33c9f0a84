#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ruelle/config.hpp"

namespace ruelle {

// Exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_validation = 1, exit_numerical = 2 };

struct ResonanceReport {
  std::vector<Resonance> resonances;
  Metadata metadata;
};

ResonanceReport cmd_resonances(const RunConfig& cfg);
void write_resonances_csv(std::ostream& os, const ResonanceReport& report);

// Polishes cfg.lambda0 by Newton on every character factor before evaluating.
DistributionGrid cmd_distribution(const RunConfig& cfg, GridMode mode);

void cmd_words_stats(const RunConfig& cfg, std::ostream& os);
void cmd_surface_validate(const RunConfig& cfg, std::ostream& os);

// Newton from `guess` on each factor; the converged zero closest to the guess
// within `radius`. Throws ValidationError when nothing converges there.
cplx polish_resonance(const GeodesicCache& cache, cplx guess, double radius = 1e-2);

// Parses, dispatches and writes the output named by the config. Errors are
// reported on `err` and mapped to exit codes.
int run_command(const std::string& command, const std::string& config_text, std::ostream& out, std::ostream& err);

}  // namespace ruelle
