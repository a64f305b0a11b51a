// Command-line front end: run one scenario config or a directory of them.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hlink/catalogue.hpp"
#include "hlink/kernels.hpp"
#include "hlink/runner.hpp"

namespace {

bool write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "hlink: cannot write " << path << "\n";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact relative homological linking and PL Morse certification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hlink::kToolVersion));

  std::string backend;
  app.add_option("--backend", backend, "Kernel backend (scalar or avx2; default: best available)")
      ->check(CLI::IsMember({"scalar", "avx2"}));

  std::optional<std::uint32_t> prime;
  std::optional<std::size_t> budget;
  unsigned threads = 1;
  bool timing = false;

  auto* run = app.add_subcommand("run", "Run one scenario config and emit its report");
  std::string config_path, output_path;
  run->add_option("-c,--config", config_path, "Scenario config (JSON)")->required();
  run->add_option("-o,--output", output_path, "Report path (default: stdout)");
  run->add_option("-p,--prime", prime, "Field characteristic override");
  run->add_option("-b,--budget", budget, "Simplex budget override");
  run->add_option("-t,--threads", threads, "Worker threads (a single run uses one)");
  run->add_flag("--timing", timing, "Add wall-clock time to the report (breaks byte-identity)");

  auto* suite = app.add_subcommand("suite", "Run every *.json config in a directory");
  std::string suite_dir, report_dir, summary_path;
  suite->add_option("directory", suite_dir, "Directory of scenario configs")->required();
  suite->add_option("-r,--report-dir", report_dir, "Write <name>.report.json files here");
  suite->add_option("-s,--summary", summary_path, "Write the summary table as JSON here");
  suite->add_option("-p,--prime", prime, "Field characteristic override");
  suite->add_option("-b,--budget", budget, "Simplex budget override");
  suite->add_option("-t,--threads", threads, "Scenarios run in parallel");
  suite->add_flag("--timing", timing, "Add wall-clock time to each report");

  auto* cat = app.add_subcommand("catalogue", "Print a catalogue-mode config for a model scenario");
  std::string cat_name;
  int cat_k = 1, cat_m = 1;
  bool cat_list = false;
  cat->add_option("name", cat_name, "Scenario name");
  cat->add_option("-k", cat_k, "dim E_1");
  cat->add_option("-m", cat_m, "dim E_2");
  cat->add_flag("--list", cat_list, "List scenario names");

  app.add_subcommand("backends", "List the kernel backends usable on this machine");

  CLI11_PARSE(app, argc, argv);

  if (!backend.empty()) {
    auto b = backend == "avx2" ? hlink::kernels::Backend::avx2 : hlink::kernels::Backend::scalar;
    if (!hlink::kernels::force_backend(b)) {
      std::cerr << "hlink: backend " << backend << " is not available here\n";
      return 2;
    }
  }
  hlink::RunOptions options{prime, budget, timing};

  if (app.got_subcommand("backends")) {
    for (auto b : hlink::kernels::available_backends()) std::cout << hlink::kernels::to_string(b) << "\n";
    std::cout << "active: " << hlink::kernels::to_string(hlink::kernels::active().backend) << "\n";
    return 0;
  }
  if (app.got_subcommand("catalogue")) {
    if (cat_list || cat_name.empty()) {
      for (const auto& n : hlink::catalogue_names()) std::cout << n << "\n";
      return 0;
    }
    nlohmann::json config = {{"name", cat_name + "_k" + std::to_string(cat_k) + "_m" + std::to_string(cat_m)},
                             {"mode", "catalogue"},
                             {"catalogue", {{"name", cat_name}, {"k", cat_k}, {"m", cat_m}}}};
    std::cout << config.dump(2) << "\n";
    return 0;
  }
  if (app.got_subcommand("run")) {
    hlink::RunResult r = hlink::run_file(config_path, options);
    if (!write_text(output_path, hlink::report_text(r.report))) return 2;
    if (r.report.contains("error")) {
      std::cerr << "hlink: " << r.report["error"]["code"].get<std::string>() << ": "
                << r.report["error"]["message"].get<std::string>() << "\n";
    }
    return r.exit_code;
  }
  // suite
  hlink::SuiteResult s;
  try {
    s = hlink::run_suite(suite_dir, options, threads);
  } catch (const std::exception& e) {
    std::cerr << "hlink: " << e.what() << "\n";
    return 2;
  }
  if (!report_dir.empty()) {
    std::filesystem::create_directories(report_dir);
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
      auto stem = std::filesystem::path(s.rows[i].file).stem().string();
      if (!write_text((std::filesystem::path(report_dir) / (stem + ".report.json")).string(),
                      hlink::report_text(s.reports[i]))) {
        return 2;
      }
    }
  }
  std::cout << s.table();
  if (!summary_path.empty() && !write_text(summary_path, s.to_json().dump(2) + "\n")) return 2;
  return s.exit_code;
}
