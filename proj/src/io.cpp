#include "tailorder/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "tailorder/defs.hpp"

namespace tailorder::io {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(const std::string& path, const sampling::SampleMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  for (int j = 0; j < m.cols; ++j) {
    if (j) out << ',';
    out << 'x' << (j + 1);
  }
  out << '\n';
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      if (j) out << ',';
      out << format_double(m.at(i, j));
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

void write_manifest(const std::string& path, const RunManifest& m) {
  nlohmann::json j;
  j["command"] = m.command;
  j["params"] = m.params;
  j["seed"] = m.seed;
  j["version"] = m.version;
  j["outputs"] = m.outputs;
  j["duration_seconds"] = m.duration_seconds;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_manifest: cannot open " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write_manifest: write failed");
}

RunManifest read_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_manifest: cannot open " + path);
  nlohmann::json j;
  in >> j;
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.params = j.at("params").get<std::map<std::string, std::string>>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.version = j.value("version", "");
  m.outputs = j.value("outputs", std::vector<std::string>{});
  m.duration_seconds = j.value("duration_seconds", 0.0);
  return m;
}

}  // namespace tailorder::io
