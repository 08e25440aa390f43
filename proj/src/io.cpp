#include "aiqt/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace aiqt {

using nlohmann::ordered_json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

std::string dump(const ordered_json& j) { return j.dump(1) + "\n"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  os << text;
  if (!os) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

ordered_json dataset_to_json(const Dataset& d) {
  ordered_json j;
  j["n_qubits"] = d.n_qubits;
  j["seed"] = d.seed;
  j["total"] = d.total;
  j["label_rule"] = d.label_rule;
  ordered_json samples = ordered_json::array();
  for (const auto& s : d.samples) {
    ordered_json e;
    e["g_zxz"] = s.couplings.g_zxz;
    e["g_x"] = s.couplings.g_x;
    e["g_zz"] = s.couplings.g_zz;
    e["label"] = std::string(label_name(s.label));
    e["energy"] = s.energy;
    ordered_json amps = ordered_json::array();
    for (const auto& z : s.state.amplitudes()) amps.push_back({z.real(), z.imag()});
    e["amplitudes"] = std::move(amps);
    samples.push_back(std::move(e));
  }
  j["samples"] = std::move(samples);
  return j;
}

Dataset dataset_from_json(const ordered_json& j) {
  Dataset d;
  try {
    d.n_qubits = j.at("n_qubits").get<int>();
    d.seed = j.at("seed").get<std::uint64_t>();
    d.total = j.at("total").get<int>();
    d.label_rule = j.at("label_rule").get<std::string>();
    const std::size_t dim = std::size_t{1} << d.n_qubits;
    for (const auto& e : j.at("samples")) {
      const auto& amps = e.at("amplitudes");
      if (amps.size() != dim) {
        throw std::invalid_argument("sample has " + std::to_string(amps.size()) +
                                    " amplitudes, expected " + std::to_string(dim));
      }
      std::vector<Complex> v;
      v.reserve(dim);
      for (const auto& z : amps) v.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
      const PhaseLabel label = parse_label(e.at("label").get<std::string>());
      if (label == PhaseLabel::Fail) throw std::invalid_argument("dataset sample labeled Fail");
      d.samples.push_back(LabeledSample{
          CouplingPoint{e.at("g_zxz").get<double>(), e.at("g_x").get<double>(),
                        e.at("g_zz").get<double>()},
          PureState(d.n_qubits, std::move(v)), label, e.at("energy").get<double>(),
          one_hot(label)});
    }
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("malformed dataset: ") + ex.what());
  }
  if (static_cast<int>(d.samples.size()) != d.total) {
    throw std::invalid_argument("malformed dataset: header total does not match sample count");
  }
  return d;
}

void write_dataset(const std::filesystem::path& path, const Dataset& d) {
  write_text(path, dump(dataset_to_json(d)));
}

Dataset read_dataset(const std::filesystem::path& path) {
  ordered_json j;
  try {
    j = ordered_json::parse(read_text(path));
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument("dataset '" + path.string() + "' is not valid JSON: " + ex.what());
  }
  return dataset_from_json(j);
}

ordered_json model_to_json(const ModelParams& m) {
  ordered_json j;
  j["variant"] = std::string(model_name(m.kind));
  j["n_qubits"] = m.n_qubits;
  j["target_qubits"] = m.target_qubits;
  ordered_json theta = nullptr;
  ordered_json cj = nullptr;
  ordered_json fg = nullptr;
  ordered_json steps = nullptr;
  if (m.aiqt) {
    if (const auto* q = std::get_if<QftInterp>(&*m.aiqt)) {
      theta = q->theta;
    } else {
      const auto& te = std::get<TfimTimeEvolution>(*m.aiqt);
      theta = te.theta;
      cj = te.coupling_j;
      fg = te.field_g;
      steps = te.n_steps;
    }
  }
  j["theta"] = theta;
  j["J"] = cj;
  j["g"] = fg;
  j["n_steps"] = steps;
  ordered_json phi = ordered_json::array();
  for (const auto& layer : m.qnn.layers) phi.push_back(layer);
  j["phi"] = std::move(phi);
  return j;
}

ModelParams model_from_json(const ordered_json& j) {
  ModelParams m;
  try {
    m.kind = parse_model_kind(j.at("variant").get<std::string>());
    m.n_qubits = j.at("n_qubits").get<int>();
    m.target_qubits = j.at("target_qubits").get<std::vector<int>>();
    switch (m.kind) {
      case ModelKind::Qnn:
        break;
      case ModelKind::QftQnn:
      case ModelKind::AiqtQft:
        m.aiqt = QftInterp{j.at("theta").get<double>()};
        break;
      case ModelKind::AiqtTe:
        m.aiqt = TfimTimeEvolution{j.at("theta").get<double>(), j.at("J").get<double>(),
                                   j.at("g").get<double>(), j.at("n_steps").get<int>()};
        break;
    }
    for (const auto& layer : j.at("phi")) {
      if (layer.size() != kGenerators) {
        throw std::invalid_argument("model layer must have 15 parameters");
      }
      m.qnn.layers.push_back(layer.get<LayerParams>());
    }
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("malformed model file: ") + ex.what());
  }
  m.validate();
  return m;
}

void write_model(const std::filesystem::path& path, const ModelParams& m) {
  write_text(path, dump(model_to_json(m)));
}

ModelParams read_model(const std::filesystem::path& path) {
  ordered_json j;
  try {
    j = ordered_json::parse(read_text(path));
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument("model '" + path.string() + "' is not valid JSON: " + ex.what());
  }
  return model_from_json(j);
}

void write_metrics_csv(std::ostream& os, std::span<const SeedRun> runs) {
  os << kMetricsHeader << '\n';
  for (const auto& run : runs) {
    for (const auto& r : run.metrics) {
      os << r.epoch << ',' << format_double(r.train_loss) << ',' << format_double(r.val_loss)
         << ',' << format_double(r.val_accuracy) << ','
         << (std::isnan(r.theta) ? std::string() : format_double(r.theta)) << ','
         << (r.coupling_j ? format_double(*r.coupling_j) : std::string()) << ','
         << (r.field_g ? format_double(*r.field_g) : std::string()) << ',' << run.seed << ','
         << model_name(run.model) << '\n';
    }
  }
}

}  // namespace aiqt
