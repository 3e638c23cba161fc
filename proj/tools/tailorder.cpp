#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tailorder/figure1.hpp"
#include "tailorder/io.hpp"
#include "tailorder/modelspec.hpp"
#include "tailorder/sampling.hpp"
#include "tailorder/tailmetrics.hpp"
#include "tailorder/verify.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tailorder;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TAILORDER_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 1;
}

// --- sample ----------------------------------------------------------------

struct SampleArgs {
  std::string model;
  std::size_t n = 1000;
  std::uint64_t seed = default_seed();
  std::string margins = "uniform";
  std::string out;
};

int run_sample(const SampleArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const copulas::CopulaModel model = modelspec::parse(a.model);
  sampling::SampleMatrix m = sampling::sample_model(model, {a.seed, 0}, a.n);
  if (a.margins == "normal") {
    sampling::apply_normal_scores(m);
  } else if (a.margins != "uniform") {
    throw usage_error("margins must be 'uniform' or 'normal'");
  }
  io::write_csv(a.out, m);
  io::RunManifest manifest;
  manifest.command = "sample";
  manifest.params = {{"model", a.model},
                     {"n", std::to_string(a.n)},
                     {"margins", a.margins},
                     {"out", a.out}};
  manifest.seed = a.seed;
  manifest.version = kVersion;
  manifest.outputs = {a.out};
  manifest.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  io::write_manifest(a.out + ".manifest.json", manifest);
  return 0;
}

// --- tail-order --------------------------------------------------------------

struct TailOrderArgs {
  std::string model;
  std::string side = "lower";
  std::string method = "analytic";
  std::size_t n = 100000;
  double grid_lo = 0.0, grid_hi = 0.0;  // 0 = method default
  int grid_points = 0;
  bool report_lambda = false;
  std::uint64_t seed = default_seed();
  std::string out;
};

json catalog_json(const tailmetrics::CatalogEntry& e) {
  json j;
  j["model"] = e.model;
  if (e.kappa_lower) j["kappa_lower"] = *e.kappa_lower;
  if (e.kappa_upper) j["kappa_upper"] = *e.kappa_upper;
  if (e.lambda_lower) j["lambda_lower"] = *e.lambda_lower;
  if (e.lambda_upper) j["lambda_upper"] = *e.lambda_upper;
  if (e.moment_index) j["moment_index"] = *e.moment_index;
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

int run_tail_order(const TailOrderArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const copulas::CopulaModel model = modelspec::parse(a.model);
  const Side side = a.side == "lower"   ? Side::lower
                    : a.side == "upper" ? Side::upper
                                        : throw usage_error(
                                              "side must be lower or upper");
  const bool analytic = a.method == "analytic";
  if (!analytic && a.method != "mc")
    throw usage_error("method must be 'analytic' or 'mc'");
  if (analytic && !model.has_analytic_cdf())
    throw usage_error("model '" + a.model +
                      "' has no analytic diagonal; rerun with --method mc");

  tailmetrics::GridSpec grid = analytic ? tailmetrics::GridSpec::analytic()
                                        : tailmetrics::GridSpec::monte_carlo();
  if (a.grid_lo > 0.0) grid.u_min = a.grid_lo;
  if (a.grid_hi > 0.0) grid.u_max = a.grid_hi;
  if (a.grid_points > 0) grid.points = a.grid_points;

  std::function<double(double)> diag;
  sampling::SampleMatrix mc;
  if (analytic) {
    diag = side == Side::lower
               ? std::function<double(double)>(
                     [&model](double u) { return model.diagonal(u); })
               : std::function<double(double)>([&model](double u) {
                   return model.survival_diagonal(u);
                 });
  } else {
    mc = sampling::sample_model(model, {a.seed, 1}, a.n);
    diag = [&mc, side](double u) {
      return sampling::empirical_copula_diagonal(mc, u, side);
    };
  }

  const auto est = tailmetrics::estimate_tail_order_diagonal(
      diag, side, grid, model.dim(),
      analytic ? tailmetrics::Method::analytic_diagonal
               : tailmetrics::Method::monte_carlo);

  json j;
  j["model"] = model.describe();
  j["side"] = a.side;
  j["method"] = analytic ? "analytic" : "mc";
  j["kappa"] = est.kappa;
  j["raw_slope"] = est.raw_slope;
  j["stderr"] = est.stderr_;
  j["eta"] = est.eta;
  j["chi_bar"] = est.chi_bar;
  if (a.report_lambda)
    j["lambda"] = tailmetrics::estimate_lambda(diag, grid);
  j["grid"] = {{"u_min", grid.u_min},
               {"u_max", grid.u_max},
               {"points", grid.points},
               {"dropped", est.dropped_points}};
  if (!analytic) j["n"] = a.n;
  j["seed"] = a.seed;

  const auto cat = tailmetrics::tail_order_catalog(model);
  const auto& kc = side == Side::lower ? cat.kappa_lower : cat.kappa_upper;
  if (kc || cat.lambda_lower || cat.lambda_upper)
    j["catalog"] = catalog_json(cat);

  const std::string text = j.dump(2) + "\n";
  if (!a.out.empty()) {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + a.out);
    f << text;
    io::RunManifest manifest;
    manifest.command = "tail-order";
    manifest.params = {{"model", a.model},
                       {"side", a.side},
                       {"method", a.method},
                       {"n", std::to_string(a.n)},
                       {"grid-lo", io::format_double(grid.u_min)},
                       {"grid-hi", io::format_double(grid.u_max)},
                       {"grid-points", std::to_string(grid.points)},
                       {"lambda", a.report_lambda ? "1" : "0"},
                       {"out", a.out}};
    manifest.seed = a.seed;
    manifest.version = kVersion;
    manifest.outputs = {a.out};
    manifest.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    io::write_manifest(a.out + ".manifest.json", manifest);
  } else {
    std::cout << text;
  }
  return 0;
}

// --- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "quick";
  std::uint64_t seed = default_seed();
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  const verify::Suite suite = a.suite == "full"    ? verify::Suite::full
                              : a.suite == "quick" ? verify::Suite::quick
                                                   : throw usage_error(
                                                         "suite must be quick "
                                                         "or full");
  const auto results = verify::run_all(suite, a.seed);
  bool all_pass = true;
  json j;
  j["suite"] = a.suite;
  j["seed"] = a.seed;
  j["version"] = kVersion;
  json arr = json::array();
  for (const auto& r : results) {
    json jr;
    jr["id"] = r.id;
    jr["name"] = r.name;
    jr["pass"] = r.pass;
    jr["seconds"] = r.seconds;
    json checks = json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"label", c.label},
                        {"observed", c.observed},
                        {"target", c.target},
                        {"tolerance", c.tol},
                        {"pass", c.pass}});
    }
    jr["checks"] = checks;
    arr.push_back(jr);
    all_pass = all_pass && r.pass;
  }
  j["criteria"] = arr;
  j["pass"] = all_pass;
  const std::string text = j.dump(2) + "\n";
  if (!a.out.empty()) {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + a.out);
    f << text;
  } else {
    std::cout << text;
  }
  return all_pass ? 0 : 1;
}

// --- figure1 -----------------------------------------------------------------

struct Figure1Args {
  std::string out = ".";
  std::uint64_t seed = default_seed();
};

int run_figure1(const Figure1Args& a) {
  fs::create_directories(a.out);
  figure1::emit(a.out, a.seed);
  return 0;
}

// --- rerun -------------------------------------------------------------------

int run_rerun(const std::string& manifest_path) {
  const io::RunManifest m = io::read_manifest(manifest_path);
  const auto& p = m.params;
  auto get = [&p](const std::string& k, const std::string& dflt) {
    const auto it = p.find(k);
    return it == p.end() ? dflt : it->second;
  };
  if (m.command == "sample") {
    SampleArgs a;
    a.model = p.at("model");
    a.n = std::stoull(p.at("n"));
    a.margins = get("margins", "uniform");
    a.out = p.at("out");
    a.seed = m.seed;
    return run_sample(a);
  }
  if (m.command == "tail-order") {
    TailOrderArgs a;
    a.model = p.at("model");
    a.side = get("side", "lower");
    a.method = get("method", "analytic");
    a.n = std::stoull(get("n", "100000"));
    a.grid_lo = std::stod(get("grid-lo", "0"));
    a.grid_hi = std::stod(get("grid-hi", "0"));
    a.grid_points = std::stoi(get("grid-points", "0"));
    a.report_lambda = get("lambda", "0") == "1";
    a.out = p.at("out");
    a.seed = m.seed;
    return run_tail_order(a);
  }
  if (m.command == "figure1") {
    Figure1Args a;
    a.out = p.at("out");
    a.seed = m.seed;
    return run_figure1(a);
  }
  throw usage_error("manifest names unknown command '" + m.command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"copula sampling and tail-order estimation toolkit"};
  app.require_subcommand(1);

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "draw copula samples to CSV");
  sample->add_option("--model", sa.model, "model spec")->required();
  sample->add_option("--n", sa.n, "sample size");
  sample->add_option("--seed", sa.seed, "RNG seed");
  sample->add_option("--margins", sa.margins, "uniform|normal");
  sample->add_option("--out", sa.out, "output CSV path")->required();

  TailOrderArgs ta;
  auto* tail = app.add_subcommand("tail-order", "estimate a tail order");
  tail->add_option("--model", ta.model, "model spec")->required();
  tail->add_option("--side", ta.side, "lower|upper");
  tail->add_option("--method", ta.method, "analytic|mc");
  tail->add_option("--n", ta.n, "Monte Carlo sample size");
  tail->add_option("--grid-lo", ta.grid_lo, "grid lower endpoint");
  tail->add_option("--grid-hi", ta.grid_hi, "grid upper endpoint");
  tail->add_option("--grid-points", ta.grid_points, "grid point count");
  tail->add_flag("--lambda", ta.report_lambda,
                 "also report the tail-dependence parameter estimate");
  tail->add_option("--seed", ta.seed, "RNG seed");
  tail->add_option("--out", ta.out, "write the JSON report here");

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "run the verification suite");
  ver->add_option("--suite", va.suite, "quick|full");
  ver->add_option("--seed", va.seed, "RNG seed");
  ver->add_option("--out", va.out, "write the JSON report here");

  Figure1Args fa;
  auto* fig = app.add_subcommand("figure1",
                                 "emit the Dagum-simplex scatter data");
  fig->add_option("--out", fa.out, "output directory");
  fig->add_option("--seed", fa.seed, "RNG seed");

  std::string manifest_path;
  auto* rr = app.add_subcommand("rerun", "re-execute a run from its manifest");
  rr->add_option("--manifest", manifest_path, "manifest JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sample->parsed()) return run_sample(sa);
    if (tail->parsed()) return run_tail_order(ta);
    if (ver->parsed()) return run_verify(va);
    if (fig->parsed()) return run_figure1(fa);
    if (rr->parsed()) return run_rerun(manifest_path);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const unsupported_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    const std::string what = e.what();
    const bool io_ish = what.find("cannot open") != std::string::npos ||
                        what.find("write failed") != std::string::npos;
    std::cerr << "error: " << what << "\n";
    return io_ish ? 3 : 2;
  }
  return 2;
}
