#pragma once

// The experiment commands behind the `aiqt` executable.

#include "aiqt/config.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace aiqt {

/// Writes the dataset JSON to `out`, the resolved config to `out` + ".config".
void cmd_gen_dataset(const ExperimentConfig& config, const std::filesystem::path& out,
                     std::ostream& log);

/// Writes metrics.csv, <model>.json (first seed), <model>_seed<s>.json and
/// config.resolved into `out_dir`.
void cmd_train(const ExperimentConfig& config, const std::filesystem::path& dataset,
               const std::filesystem::path& out_dir, std::ostream& log);

void cmd_sweep_line(const ExperimentConfig& config, const std::filesystem::path& model,
                    const std::filesystem::path& out, std::ostream& log);

void cmd_sweep_grid(const ExperimentConfig& config, const std::filesystem::path& model,
                    const std::filesystem::path& out, std::ostream& log);

}  // namespace aiqt
