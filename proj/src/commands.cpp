#include "aiqt/commands.hpp"

#include "aiqt/io.hpp"
#include "aiqt/spinchain.hpp"
#include "aiqt/sweep.hpp"
#include "aiqt/train.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace aiqt {
namespace {

std::filesystem::path with_suffix(const std::filesystem::path& p, const char* suffix) {
  return std::filesystem::path(p.string() + suffix);
}

}  // namespace

void cmd_gen_dataset(const ExperimentConfig& config, const std::filesystem::path& out,
                     std::ostream& log) {
  config.validate();
  Dataset d;
  d.n_qubits = config.n_qubits;
  d.seed = config.dataset_seed;
  d.total = config.total_samples;
  d.samples = sample_dataset(config.n_qubits, config.total_samples, config.dataset_seed);
  write_dataset(out, d);
  write_text(with_suffix(out, ".config"), config.to_text());

  std::array<int, kOutcomes> counts{};
  double e_min = d.samples.front().energy;
  double e_max = e_min;
  for (const auto& s : d.samples) {
    ++counts[outcome_index(s.label)];
    e_min = std::min(e_min, s.energy);
    e_max = std::max(e_max, s.energy);
  }
  log << "wrote " << d.samples.size() << " samples (N=" << d.n_qubits << ") to " << out.string()
      << "\n  Trivial: " << counts[0] << "  SB: " << counts[1] << "  SPT: " << counts[2]
      << "\n  ground energy range: [" << format_double(e_min) << ", " << format_double(e_max)
      << "]\n";
}

void cmd_train(const ExperimentConfig& config, const std::filesystem::path& dataset_path,
               const std::filesystem::path& out_dir, std::ostream& log) {
  config.validate();
  const Dataset d = read_dataset(dataset_path);
  if (d.n_qubits != config.n_qubits) {
    throw std::invalid_argument("dataset has " + std::to_string(d.n_qubits) +
                                " qubits but config n_qubits = " +
                                std::to_string(config.n_qubits));
  }
  std::filesystem::create_directories(out_dir);
  write_text(out_dir / "config.resolved", config.to_text());

  const Split split = stratified_split(d.samples, config.train_fraction, config.split_seed);
  log << "train " << split.train.size() << " / validation " << split.test.size() << " samples\n";

  const TrainConfig tc = config.train_config();
  const std::vector<ModelKind> kinds = config.models();
  const auto results = evaluate_baselines(tc, split.train, split.test, kinds);

  std::ostringstream csv;
  csv << kMetricsHeader << '\n';
  for (const auto& entry : results) {
    std::ostringstream part;
    write_metrics_csv(part, entry.runs);
    const std::string text = part.str();
    csv << text.substr(text.find('\n') + 1);
    for (const auto& run : entry.runs) {
      write_model(out_dir / (std::string(model_name(entry.model)) + "_seed" +
                             std::to_string(run.seed) + ".json"),
                  run.final_params);
    }
    write_model(out_dir / (std::string(model_name(entry.model)) + ".json"),
                entry.runs.front().final_params);
    log << model_name(entry.model) << ": final train loss "
        << format_double(entry.final_train_loss.mean) << " +- "
        << format_double(entry.final_train_loss.stddev) << ", val loss "
        << format_double(entry.final_val_loss.mean) << " +- "
        << format_double(entry.final_val_loss.stddev) << ", val accuracy "
        << format_double(entry.final_val_accuracy.mean) << " +- "
        << format_double(entry.final_val_accuracy.stddev) << "\n";
  }
  write_text(out_dir / "metrics.csv", csv.str());
}

void cmd_sweep_line(const ExperimentConfig& config, const std::filesystem::path& model_path,
                    const std::filesystem::path& out, std::ostream& log) {
  config.validate();
  const ModelParams model = read_model(model_path);
  const auto rows = sweep(model, line_points(config.line_gzz, config.line_resolution));
  std::ostringstream os;
  write_line_csv(os, rows);
  write_text(out, os.str());
  write_text(with_suffix(out, ".config"), config.to_text());
  log << "wrote " << rows.size() << " line points at g_zz = " << format_double(config.line_gzz)
      << " to " << out.string() << "\n";
}

void cmd_sweep_grid(const ExperimentConfig& config, const std::filesystem::path& model_path,
                    const std::filesystem::path& out, std::ostream& log) {
  config.validate();
  const ModelParams model = read_model(model_path);
  const auto rows = sweep(model, grid_points(config.grid_resolution));
  std::ostringstream os;
  write_grid_csv(os, rows);
  write_text(out, os.str());
  write_text(with_suffix(out, ".config"), config.to_text());
  log << "wrote " << rows.size() << " grid points to " << out.string() << "\n";
}

}  // namespace aiqt
