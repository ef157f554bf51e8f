// bmolab: experiment runner for the weighted BMO / Carleson norm laboratory.
//
// Subcommands:
//   gen-corpus   write the seeded corpus (gridfunctions, arrays, manifest)
//   theorem-a    BMO -> Carleson comparison over the corpus
//   theorem-b    Carleson -> BMO synthesis comparison over the corpus
//   properties   bundled invariant suite (exit code reflects pass/fail)
//   norms        one-off norm computation for a stored function or array
//   report       re-emit a stored JSON report as CSV / gnuplot data
//
// Exit code 0 iff every assertion in the requested run passed.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bmolab/experiments.hpp"
#include "bmolab/io.hpp"

namespace {

bmolab::ExperimentConfig load_config(const std::string& path, std::uint64_t seed_override,
                                     int exact_threshold, std::int64_t mc_samples,
                                     const std::string& out_dir) {
  bmolab::ExperimentConfig cfg;
  if (!path.empty()) cfg = bmolab::ExperimentConfig::from_file(path);
  if (seed_override != 0) cfg.seed = seed_override;
  if (exact_threshold > 0) cfg.exact_threshold = exact_threshold;
  if (mc_samples > 0) cfg.mc_samples = mc_samples;
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw bmolab::DomainError("cannot open for write: " + path);
  os << text;
}

void emit_experiment(const bmolab::ExperimentReport& rep, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_text(out_dir + "/" + rep.experiment + ".json", rep.to_json() + "\n");
  write_text(out_dir + "/" + rep.experiment + ".csv", rep.to_csv());
  write_text(out_dir + "/" + rep.experiment + ".dat", rep.to_gnuplot());
  std::cout << rep.experiment << ": headline ratio " << rep.headline << " over "
            << rep.cases.size() << " cases -> " << out_dir << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bmolab: weighted BMO / Carleson norm laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  int exact_threshold = 0;
  std::int64_t mc_samples = 0;
  app.add_option("--config", config_path, "JSON experiment config");
  app.add_option("--seed", seed, "override the master seed");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--exact-threshold", exact_threshold,
                 "max term count for exact sign enumeration");
  app.add_option("--mc-samples", mc_samples, "Monte Carlo draws above the threshold");

  auto* gen = app.add_subcommand("gen-corpus", "write the seeded corpus");
  auto* tha = app.add_subcommand("theorem-a", "BMO -> Carleson comparison");
  auto* thb = app.add_subcommand("theorem-b", "Carleson -> BMO comparison");
  auto* props = app.add_subcommand("properties", "bundled invariant suite");

  auto* norms_cmd = app.add_subcommand("norms", "one-off norm computation");
  std::string norm_name = "bmo", input_path;
  norms_cmd->add_option("--norm", norm_name,
                        "bmo | jn | carleson | carleson-p2 | carleson-squarefn");
  norms_cmd->add_option("--input", input_path, "gridfunction (.gfn/.csv) or array (.json)")
      ->required();

  auto* report_cmd = app.add_subcommand("report", "re-emit a stored JSON report");
  std::string report_path;
  report_cmd->add_option("--input", report_path, "report JSON file")->required();

  // Global flags may appear after the subcommand name.
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    auto cfg = load_config(config_path, seed, exact_threshold, mc_samples, out_dir);

    if (gen->parsed()) {
      bmolab::write_corpus(cfg);
      std::cout << "corpus written to " << cfg.out_dir << "\n";
      return 0;
    }
    if (tha->parsed()) {
      emit_experiment(bmolab::run_theorem_a(cfg), cfg.out_dir);
      return 0;
    }
    if (thb->parsed()) {
      emit_experiment(bmolab::run_theorem_b(cfg), cfg.out_dir);
      return 0;
    }
    if (props->parsed()) {
      const auto rep = bmolab::run_property_suite(cfg);
      std::filesystem::create_directories(cfg.out_dir);
      write_text(cfg.out_dir + "/properties.json", rep.to_json() + "\n");
      write_text(cfg.out_dir + "/properties.csv", rep.to_csv());
      for (const auto& c : rep.cases)
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " (" << c.detail << ")\n";
      std::cout << (rep.all_pass ? "all properties passed" : "property failures present")
                << "\n";
      return rep.all_pass ? 0 : 1;
    }
    if (norms_cmd->parsed()) {
      const auto window = cfg.window.interval();
      const int L = cfg.window.resolution_log2;
      const auto w = cfg.weight.build(window, L);
      const auto rho = cfg.growth.build();
      bmolab::NormReport rep;
      if (norm_name == "bmo" || norm_name == "jn") {
        const auto f = input_path.ends_with(".csv") ? [&] {
          std::ifstream is(input_path);
          return bmolab::read_gridfunction_csv(is);
        }()
                                                    : bmolab::read_gridfunction_file(input_path);
        const auto family = cfg.bmo_family.build(window, L);
        rep = norm_name == "bmo" ? bmolab::bmo_norm(f, w, rho, family)
                                 : bmolab::jn_p_norm(f, w, rho, cfg.p, family);
      } else {
        const auto a = bmolab::read_coefficient_array_file(input_path);
        const auto family = cfg.carleson_family.build(window, L);
        if (norm_name == "carleson-p2") {
          rep = bmolab::carleson_scalar_p2(a, w, rho, family);
        } else if (norm_name == "carleson-squarefn") {
          rep = bmolab::carleson_scalar_squarefn(a, w, rho, cfg.p, family);
        } else if (norm_name == "carleson") {
          bmolab::CarlesonOptions copts;
          copts.p = cfg.p;
          copts.min_scale = cfg.min_scale;
          copts.moment =
              bmolab::MomentOptions{cfg.exact_threshold, cfg.mc_samples, cfg.seed};
          rep = bmolab::carleson_norm(a, w, rho, family, copts);
        } else {
          throw bmolab::DomainError("unknown norm: " + norm_name);
        }
      }
      std::cout << rep.to_json() << "\n";
      return 0;
    }
    if (report_cmd->parsed()) {
      std::ifstream is(report_path);
      if (!is) throw bmolab::DomainError("cannot open report: " + report_path);
      std::ostringstream ss;
      ss << is.rdbuf();
      const auto j = nlohmann::json::parse(ss.str());
      const std::string stem =
          std::filesystem::path(report_path).stem().string();
      const std::string dir = cfg.out_dir.empty() ? "." : cfg.out_dir;
      std::filesystem::create_directories(dir);
      std::string csv = "case,lhs,rhs,ratio,note\n";
      std::string dat = "# index ratio\n";
      std::size_t i = 0;
      for (const auto& c : j.at("cases")) {
        if (c.contains("ratio")) {
          char buf[40];
          std::snprintf(buf, sizeof buf, "%.17g", c.at("ratio").get<double>());
          csv += c.at("name").get<std::string>() + "," +
                 std::to_string(c.value("lhs", 0.0)) + "," +
                 std::to_string(c.value("rhs", 0.0)) + "," + buf + "," +
                 c.value("note", std::string()) + "\n";
          dat += std::to_string(i++) + " " + buf + "\n";
        }
      }
      write_text(dir + "/" + stem + ".csv", csv);
      write_text(dir + "/" + stem + ".dat", dat);
      std::cout << "report re-emitted to " << dir << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
