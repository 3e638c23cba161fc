#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tailorder/sampling.hpp"

namespace tailorder::io {

/// Locale-independent decimal formatting, 17 significant digits.
std::string format_double(double v);

/// CSV with header x1,...,xd, one row per sample.
void write_csv(const std::string& path, const sampling::SampleMatrix& m);

// Reproducibility record serialized alongside every CLI output.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  std::string version;
  std::vector<std::string> outputs;
  double duration_seconds = 0.0;
};

void write_manifest(const std::string& path, const RunManifest& m);
RunManifest read_manifest(const std::string& path);

}  // namespace tailorder::io
