// Scenario runner: reproduces the vacuum-energy, commutator, causality and
// VEV checks from a JSON config and writes a JSON report.
//
// Exit status: 0 all checks pass, 1 some check failed, 2 usage/config error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "zpe/config.hpp"
#include "zpe/exprdsl.hpp"
#include "zpe/scenarios.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw zpe::Error(zpe::ErrorKind::Config, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_section(const zpe::ReportSection& s) {
  for (const auto& r : s.records) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << s.name << "/" << r.name;
    if (r.values.contains("symbolic") && r.values["symbolic"].is_object()) {
      std::cout << "  " << r.values["symbolic"]["exact"].get<std::string>();
    } else if (r.values.contains("exact")) {
      std::cout << "  exact=" << r.values["exact"]["exact"].get<std::string>();
      if (r.values["numeric"].is_object()) std::cout << " numeric=" << r.values["numeric"]["re"].get<double>();
    }
    if (!r.note.empty()) std::cout << "  (" << r.note << ")";
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free-photon quantization workbench: vacuum energy, commutators, causality kernel"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string scheme_override;
  int nmax_override = 0;
  std::string timestamp;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "directory for report.json and CSV artifacts");
  app.add_option("--scheme", scheme_override, "override the configured scheme")->check(CLI::IsMember({"standard", "paper"}));
  app.add_option("--nmax", nmax_override, "override the Fock truncation")->check(CLI::PositiveNumber);
  app.add_option("--timestamp", timestamp, "fixed timestamp for the report (default: current UTC time)");

  auto* vacuum = app.add_subcommand("vacuum-energy", "standard vs. modified-scheme vacuum energy");
  auto* commutators = app.add_subcommand("verify-commutators", "ladder-operator brackets, symbolic and numeric");
  auto* causality = app.add_subcommand("causality", "regulated light-cone kernel scan");
  auto* vev_cmd = app.add_subcommand("vev", "vacuum expectation value of an operator expression");
  auto* all = app.add_subcommand("all", "every scenario except vev");

  std::string expression;
  std::string corpus_path;
  vev_cmd->add_option("expression", expression, "expression, e.g. \"ad[0,0]*a[0,0]\"");
  vev_cmd->add_option("--file", corpus_path, "corpus file, one expression per line, # comments")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    nlohmann::json raw = nlohmann::json::object();
    if (!config_path.empty()) {
      try {
        raw = nlohmann::json::parse(slurp(config_path));
      } catch (const nlohmann::json::parse_error& e) {
        throw zpe::Error(zpe::ErrorKind::Config, config_path + ": " + e.what());
      }
    }
    zpe::RunConfig cfg = zpe::parse_config(raw);
    if (!scheme_override.empty()) cfg.scheme = zpe::parse_scheme(nlohmann::json(scheme_override));
    if (nmax_override > 0) cfg.n_max = nmax_override;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    cfg.echo["effective"] = {{"scheme", zpe::scheme_label(cfg.scheme)}, {"n_max", cfg.n_max}};

    std::vector<zpe::ReportSection> sections;
    if (*vacuum || *all) sections.push_back(zpe::run_vacuum_energy(cfg));
    if (*commutators || *all) sections.push_back(zpe::run_verify_commutators(cfg));
    if (*causality || *all) sections.push_back(zpe::run_causality(cfg));
    if (*vev_cmd) {
      std::vector<zpe::CorpusEntry> entries;
      if (!corpus_path.empty()) entries = zpe::parse_corpus(slurp(corpus_path));
      if (!expression.empty()) entries.push_back({0, expression, zpe::parse(expression)});
      if (entries.empty()) throw zpe::Error(zpe::ErrorKind::Config, "vev: give an expression or --file");
      sections.push_back(zpe::run_vev(entries, cfg));
    }

    const auto report = zpe::build_report(cfg, sections, timestamp.empty() ? zpe::utc_timestamp() : timestamp);
    std::filesystem::create_directories(cfg.output_dir);
    const auto report_path = std::filesystem::path(cfg.output_dir) / "report.json";
    std::ofstream(report_path) << report.dump(2) << "\n";

    bool ok = true;
    for (const auto& s : sections) {
      print_section(s);
      ok = ok && s.all_pass();
    }
    std::cout << report["summary"]["passed"] << "/" << report["summary"]["total"] << " checks passed; report: "
              << report_path.string() << "\n";
    return ok ? 0 : 1;
  } catch (const zpe::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
