#pragma once

#include <cstdint>
#include <string>

#include "tailorder/sampling.hpp"

namespace tailorder::figure1 {

// Dagum-simplex scatter data: 2000 bivariate draws from the scale-mixture
// Archimedean copula with radial law Dagum(0.6, 1.8, 1), emitted once with
// uniform margins and once with standard normal scores.
struct Result {
  sampling::SampleMatrix uniform;
  sampling::SampleMatrix normal;
  std::string uniform_path;
  std::string normal_path;
};

/// Writes dagum-simplex-unif.csv, dagum-simplex-norm.csv and
/// run-manifest.json into `dir` and returns the generated matrices.
Result emit(const std::string& dir, std::uint64_t seed);

}  // namespace tailorder::figure1
