#include "aiqt/config.hpp"

#include "aiqt/io.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace aiqt {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw std::invalid_argument("config: key '" + std::string(key) + "' has malformed value '" +
                                std::string(value) + "'");
  }
  return out;
}

std::vector<int> parse_int_list(std::string_view key, std::string_view value) {
  std::vector<int> out;
  while (true) {
    const auto comma = value.find(',');
    out.push_back(parse_number<int>(key, trim(value.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    value = value.substr(comma + 1);
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view key, std::string_view)>;

template <class T>
Setter number(T ExperimentConfig::*field) {
  return [field](ExperimentConfig& c, std::string_view k, std::string_view v) {
    c.*field = parse_number<T>(k, v);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table{
      {"n_qubits", number(&ExperimentConfig::n_qubits)},
      {"total_samples", number(&ExperimentConfig::total_samples)},
      {"dataset_seed", number(&ExperimentConfig::dataset_seed)},
      {"train_fraction", number(&ExperimentConfig::train_fraction)},
      {"split_seed", number(&ExperimentConfig::split_seed)},
      {"model", [](ExperimentConfig& c, std::string_view, std::string_view v) { c.model = v; }},
      {"learning_rate", number(&ExperimentConfig::learning_rate)},
      {"batch_size", number(&ExperimentConfig::batch_size)},
      {"epochs", number(&ExperimentConfig::epochs)},
      {"seed", number(&ExperimentConfig::seed)},
      {"n_seeds", number(&ExperimentConfig::n_seeds)},
      {"layers", number(&ExperimentConfig::layers)},
      {"theta_init", number(&ExperimentConfig::theta_init)},
      {"te_theta_init", number(&ExperimentConfig::te_theta_init)},
      {"te_j_init", number(&ExperimentConfig::te_j_init)},
      {"te_g_init", number(&ExperimentConfig::te_g_init)},
      {"trotter_steps", number(&ExperimentConfig::trotter_steps)},
      {"phi_init_scale", number(&ExperimentConfig::phi_init_scale)},
      {"target_qubits",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.target_qubits = parse_int_list(k, v);
       }},
      {"grid_resolution", number(&ExperimentConfig::grid_resolution)},
      {"line_resolution", number(&ExperimentConfig::line_resolution)},
      {"line_gzz", number(&ExperimentConfig::line_gzz)},
  };
  return table;
}

}  // namespace

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
  if (n_qubits < 2 || n_qubits > 14) fail("n_qubits must be in [2, 14]");
  if (total_samples <= 0 || total_samples % 3 != 0) {
    fail("total_samples must be a positive multiple of 3");
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) fail("train_fraction must be in (0, 1)");
  models();
  if (n_seeds < 1) fail("n_seeds must be >= 1");
  if (trotter_steps < 1) fail("trotter_steps must be >= 1");
  if (grid_resolution < 2) fail("grid_resolution must be >= 2");
  if (line_resolution < 2) fail("line_resolution must be >= 2");
  if (!(line_gzz >= 0.0 && line_gzz <= kCouplingSum)) fail("line_gzz must be in [0, 4]");
  if (static_cast<int>(target_qubits.size()) != 2) {
    fail("target_qubits must name exactly 2 qubits (4 readout outcomes)");
  }
  validate_targets(n_qubits, target_qubits);
  train_config().validate();
}

std::vector<ModelKind> ExperimentConfig::models() const {
  if (model == "all") {
    return {ModelKind::Qnn, ModelKind::QftQnn, ModelKind::AiqtQft, ModelKind::AiqtTe};
  }
  return {parse_model_kind(model)};
}

TrainConfig ExperimentConfig::train_config() const {
  TrainConfig t;
  t.learning_rate = learning_rate;
  t.batch_size = batch_size;
  t.epochs = epochs;
  t.seeds.clear();
  for (int i = 0; i < n_seeds; ++i) t.seeds.push_back(seed + static_cast<std::uint64_t>(i));
  t.layers = layers;
  t.model = models().front();
  t.theta_init = theta_init;
  t.te_init = TfimTimeEvolution{te_theta_init, te_j_init, te_g_init, trotter_steps};
  t.phi_init_scale = phi_init_scale;
  t.target_qubits = target_qubits;
  return t;
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream os;
  std::string targets;
  for (std::size_t i = 0; i < target_qubits.size(); ++i) {
    targets += (i ? "," : "") + std::to_string(target_qubits[i]);
  }
  os << "n_qubits = " << n_qubits << '\n'
     << "total_samples = " << total_samples << '\n'
     << "dataset_seed = " << dataset_seed << '\n'
     << "train_fraction = " << format_double(train_fraction) << '\n'
     << "split_seed = " << split_seed << '\n'
     << "model = " << model << '\n'
     << "learning_rate = " << format_double(learning_rate) << '\n'
     << "batch_size = " << batch_size << '\n'
     << "epochs = " << epochs << '\n'
     << "seed = " << seed << '\n'
     << "n_seeds = " << n_seeds << '\n'
     << "layers = " << layers << '\n'
     << "theta_init = " << format_double(theta_init) << '\n'
     << "te_theta_init = " << format_double(te_theta_init) << '\n'
     << "te_j_init = " << format_double(te_j_init) << '\n'
     << "te_g_init = " << format_double(te_g_init) << '\n'
     << "trotter_steps = " << trotter_steps << '\n'
     << "phi_init_scale = " << format_double(phi_init_scale) << '\n'
     << "target_qubits = " << targets << '\n'
     << "grid_resolution = " << grid_resolution << '\n'
     << "line_resolution = " << line_resolution << '\n'
     << "line_gzz = " << format_double(line_gzz) << '\n';
  return os.str();
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" +
                                  std::string(key) + "'");
    }
    if (!seen.insert(std::string(key)).second) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": key '" +
                                  std::string(key) + "' repeated");
    }
    if (value.empty()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": key '" +
                                  std::string(key) + "' has no value");
    }
    it->second(c, key, value);
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) { return parse_config(read_text(path)); }

}  // namespace aiqt
