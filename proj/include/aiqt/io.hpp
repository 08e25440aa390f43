#pragma once

// File formats: dataset JSON, model JSON, metrics and sweep CSVs.
// Numbers are written with std::to_chars (shortest round-trip, '.' decimal
// separator) so output is byte-stable and locale-independent.

#include "aiqt/model.hpp"
#include "aiqt/spinchain.hpp"
#include "aiqt/train.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace aiqt {

inline constexpr const char* kLabelRule = "argmax-0.05";

std::string format_double(double x);

struct Dataset {
  int n_qubits = 0;
  std::uint64_t seed = 0;
  int total = 0;
  std::string label_rule = kLabelRule;
  std::vector<LabeledSample> samples;
};

nlohmann::ordered_json dataset_to_json(const Dataset& d);
Dataset dataset_from_json(const nlohmann::ordered_json& j);
void write_dataset(const std::filesystem::path& path, const Dataset& d);
Dataset read_dataset(const std::filesystem::path& path);

nlohmann::ordered_json model_to_json(const ModelParams& m);
ModelParams model_from_json(const nlohmann::ordered_json& j);
void write_model(const std::filesystem::path& path, const ModelParams& m);
ModelParams read_model(const std::filesystem::path& path);

inline constexpr const char* kMetricsHeader =
    "epoch,train_loss,val_loss,val_accuracy,theta,J,g,seed,model";

/// Header plus one row per (run, epoch), runs in the given order.
void write_metrics_csv(std::ostream& os, std::span<const SeedRun> runs);

/// Serialized text of a JSON document with a trailing newline.
std::string dump(const nlohmann::ordered_json& j);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace aiqt
