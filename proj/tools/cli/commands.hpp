#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "noma/sim.hpp"

namespace noma::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInternal = 3;

/// Parses argv (argv[0] is the program name), runs one subcommand and returns the
/// process exit code. Data goes to `out` unless -o is given; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Applies a JSON object of simulation settings onto `config`. Unknown keys and
/// wrongly typed values throw ConfigInvalidError.
void apply_config_json(const std::string& text, SimConfig& config);

/// Named starting points for `ber --preset`.
SimConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

/// True for runs that take far beyond a desk-scale budget: 64-QAM or larger,
/// SNR above 45 dB, or more than 1e8 simulated channel uses.
bool is_full_scale(const SimConfig& config);

/// Resolves a relative output path against NOMA_OUTPUT_DIR when that is set.
std::string resolve_output_path(const std::string& path);

}  // namespace noma::cli
