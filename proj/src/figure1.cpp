#include "tailorder/figure1.hpp"

#include <chrono>
#include <filesystem>

#include "tailorder/io.hpp"

namespace tailorder::figure1 {

Result emit(const std::string& dir, std::uint64_t seed) {
  namespace fs = std::filesystem;
  const auto t0 = std::chrono::steady_clock::now();
  const radial::RadialLaw law = radial::RadialLaw::dagum(0.6, 1.8, 1.0);
  Result r;
  r.uniform = sampling::sample_archimedean_scale_mixture(law, 2, {seed, 0}, 2000);
  r.normal = r.uniform;
  sampling::apply_normal_scores(r.normal);
  r.uniform_path = (fs::path(dir) / "dagum-simplex-unif.csv").string();
  r.normal_path = (fs::path(dir) / "dagum-simplex-norm.csv").string();
  io::write_csv(r.uniform_path, r.uniform);
  io::write_csv(r.normal_path, r.normal);
  io::RunManifest m;
  m.command = "figure1";
  m.params = {{"out", dir}};
  m.seed = seed;
  m.version = kVersion;
  m.outputs = {r.uniform_path, r.normal_path};
  m.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  io::write_manifest((fs::path(dir) / "run-manifest.json").string(), m);
  return r;
}

}  // namespace tailorder::figure1
