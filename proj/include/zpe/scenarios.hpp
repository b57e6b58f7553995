#pragma once

// End-to-end scenarios behind the CLI. Each run_* returns a report section of
// check records; a record passes iff its value is within its tolerance.

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "zpe/causality.hpp"
#include "zpe/config.hpp"
#include "zpe/exprdsl.hpp"
#include "zpe/field.hpp"
#include "zpe/fock.hpp"
#include "zpe/opalgebra.hpp"

namespace zpe {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

struct CheckRecord {
  std::string name;
  std::string scheme;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json values = nlohmann::json::object();
  nlohmann::json tolerance;
  bool pass = false;
  std::string note;
};

struct ReportSection {
  std::string name;
  std::vector<CheckRecord> records;
  std::vector<std::string> artifacts;

  bool all_pass() const {
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
  }
};

inline nlohmann::json exact_json(const Scalar& s) {
  const auto z = s.to_complex();
  nlohmann::json j{{"exact", to_string(s)}, {"decimal", z.real()}};
  if (z.imag() != 0.0) j["decimal_imag"] = z.imag();
  return j;
}

inline nlohmann::json complex_json(const Complex& z) { return nlohmann::json{{"re", z.real()}, {"im", z.imag()}}; }

inline std::string scheme_label(const CommutatorScheme& s) {
  std::string out = to_string(s.kind()) + "(c=";
  for (int r = 0; r < 4; ++r) out += (r ? "," : "") + to_string(s.c(r));
  out += ";roles=";
  for (int r = 0; r < 4; ++r) out += std::string(r ? "," : "") + (s.role(r) == VacuumRole::Operator ? "op" : "conj");
  return out + ")";
}

inline nlohmann::json to_json(const CheckRecord& r) {
  nlohmann::json j{{"name", r.name},     {"scheme", r.scheme},       {"inputs", r.inputs},
                   {"values", r.values}, {"tolerance", r.tolerance}, {"pass", r.pass}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline nlohmann::json to_json(const ReportSection& s) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : s.records) records.push_back(to_json(r));
  return {{"name", s.name}, {"records", records}, {"artifacts", s.artifacts}};
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

inline nlohmann::json build_report(const RunConfig& cfg, const std::vector<ReportSection>& sections,
                                   const std::string& timestamp) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["timestamp"] = timestamp;
  j["config"] = cfg.echo;
  j["sections"] = nlohmann::json::array();
  std::size_t total = 0;
  std::size_t passed = 0;
  for (const auto& s : sections) {
    j["sections"].push_back(to_json(s));
    total += s.records.size();
    passed += static_cast<std::size_t>(std::count_if(s.records.begin(), s.records.end(), [](const auto& r) { return r.pass; }));
  }
  j["summary"] = {{"total", total}, {"passed", passed}, {"all_pass", total == passed}};
  return j;
}

namespace detail {

inline CommutatorScheme paper_scheme_of(const RunConfig& cfg) {
  return cfg.scheme.kind() == SchemeKind::Paper ? cfg.scheme : CommutatorScheme::paper();
}

inline OperatorPoly mode_hamiltonian(const ModeSet& ms, std::size_t i, const PhysicalConstants& pc) {
  const std::vector<ModeFrequency> one{{i, ms.omega_exact(i, pc)}};
  return build_hamiltonian_sym(one, Scalar(pc.hbar));
}

/// Numeric vacuum energy summed mode by mode, each on its own 4-oscillator space.
inline Complex numeric_vacuum_energy(const ModeSet& ms, const CommutatorScheme& s, const PhysicalConstants& pc, int n_max) {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::vector<Oscillator> osc;
    for (int r = 0; r < 4; ++r) osc.push_back({i, r});
    FockRep rep(s, osc, std::max(n_max, 1));
    sum += rep.vev_numeric(mode_hamiltonian(ms, i, pc));
  }
  return sum;
}

}  // namespace detail

/// STANDARD raw, STANDARD with N[.], and the modified scheme raw.
inline ReportSection run_vacuum_energy(const RunConfig& cfg) {
  ReportSection section{"vacuum-energy", {}, {}};
  const ModeSet ms = cfg.mode_set();
  const auto& pc = cfg.constants;
  const CommutatorScheme standard = CommutatorScheme::standard();
  const CommutatorScheme paper = detail::paper_scheme_of(cfg);

  Scalar zero_point;
  for (std::size_t i = 0; i < ms.size(); ++i) zero_point += Scalar(2) * Scalar(pc.hbar) * ms.omega_exact(i, pc);

  const nlohmann::json inputs{{"modes", ms.size()}, {"L", to_string(ms.box_length())}, {"hbar", to_string(pc.hbar)},
                              {"c", to_string(pc.c)}};

  auto add = [&](const std::string& name, const CommutatorScheme& s, VacuumVariant variant, const Scalar& expected,
                 bool with_numeric) {
    CheckRecord rec;
    rec.name = name;
    rec.scheme = scheme_label(s);
    rec.inputs = inputs;
    const Scalar value = vacuum_energy(ms, s, pc, variant);
    rec.values["symbolic"] = exact_json(value);
    rec.values["expected"] = exact_json(expected);
    rec.tolerance = {{"symbolic", "exact"}};
    rec.pass = value == expected;
    if (with_numeric) {
      const Complex numeric = detail::numeric_vacuum_energy(ms, s, pc, cfg.n_max);
      rec.values["numeric"] = complex_json(numeric);
      const double scale = std::max(1.0, std::abs(expected.to_complex()));
      rec.tolerance["numeric"] = 1e-12;
      rec.pass = rec.pass && std::abs(numeric - expected.to_complex()) <= 1e-12 * scale;
    }
    section.records.push_back(std::move(rec));
  };
  add("standard_raw", standard, VacuumVariant::Raw, zero_point, true);
  add("standard_normal_ordered", standard, VacuumVariant::NormalOrderingPrescription, Scalar(), false);
  add("paper_raw", paper, VacuumVariant::Raw, Scalar(), true);
  return section;
}

/// Scalar-photon bracket, spatial sum, vanishing cross brackets and the
/// b-rescaling, each symbolically and on a truncated Fock space.
inline ReportSection run_verify_commutators(const RunConfig& cfg) {
  ReportSection section{"verify-commutators", {}, {}};
  const CommutatorScheme& s = cfg.scheme;
  const std::string label = scheme_label(s);
  const int n_max = cfg.n_max;

  auto sym = [](int r, std::size_t m, bool dag) { return OperatorPoly(LadderSymbol{m, r, dag}); };
  auto bracket = [&](int r, std::size_t m, int rp, std::size_t mp) { return commutator(sym(r, m, false), sym(rp, mp, true), s); };

  std::vector<Oscillator> one_mode;
  for (int r = 0; r < 4; ++r) one_mode.push_back({0, r});
  const FockRep rep(s, one_mode, n_max, cfg.dimension_cap);
  const auto sub = rep.sub_truncation_states(1);
  auto matrix_bracket = [&](const FockRep& fr, const LadderSymbol& x, const LadderSymbol& y) {
    return SparseMatrix(SparseMatrix(fr.ladder_matrix(x) * fr.ladder_matrix(y)) - SparseMatrix(fr.ladder_matrix(y) * fr.ladder_matrix(x)));
  };

  {
    CheckRecord rec{"scalar_bracket", label, {{"n_max", n_max}}, {}, {{"symbolic", "exact"}, {"numeric", 1e-12}}, false, ""};
    const OperatorPoly value = bracket(0, 0, 0, 0);
    const SparseMatrix m = matrix_bracket(rep, LadderSymbol::a(0, 0), LadderSymbol::ad(0, 0));
    const double dev = max_abs_on_columns(SparseMatrix(m + rep.identity()), sub);
    rec.values = {{"symbolic", format(value)}, {"expected", "-1"}, {"numeric_deviation", dev}};
    rec.pass = value == OperatorPoly(Scalar(-1)) && dev <= 1e-12;
    section.records.push_back(rec);
  }
  {
    CheckRecord rec{"spatial_bracket_sum", label, {{"n_max", n_max}}, {}, {{"symbolic", "exact"}, {"numeric", 1e-12}}, false, ""};
    const OperatorPoly value = bracket(1, 0, 1, 0) + bracket(2, 0, 2, 0) + bracket(3, 0, 3, 0);
    SparseMatrix m = -rep.identity();
    for (int r = 1; r <= 3; ++r) m += matrix_bracket(rep, LadderSymbol::a(r, 0), LadderSymbol::ad(r, 0));
    const double dev = max_abs_on_columns(m, sub);
    rec.values = {{"symbolic", format(value)}, {"expected", "1"}, {"numeric_deviation", dev}};
    rec.pass = value == OperatorPoly::identity() && dev <= 1e-12;
    section.records.push_back(rec);
  }
  {
    CheckRecord rec{"cross_brackets_vanish", label, {{"n_max", n_max}}, {}, {{"symbolic", "exact"}, {"numeric", 1e-12}}, true, ""};
    std::size_t checked = 0;
    double worst = 0.0;
    for (int r = 0; r < 4; ++r) {
      for (int rp = 0; rp < 4; ++rp) {
        for (bool da : {false, true}) {
          for (bool db : {false, true}) {
            if (r == rp && da != db) continue;  // conjugate pair: the scheme constant
            const LadderSymbol x{0, r, da};
            const LadderSymbol y{0, rp, db};
            rec.pass = rec.pass && commutator(OperatorPoly(x), OperatorPoly(y), s).is_zero();
            worst = std::max(worst, max_abs_on_columns(matrix_bracket(rep, x, y), sub));
            ++checked;
          }
        }
      }
    }
    // Distinct modes: every pair commutes.
    const FockRep two(s, {{0, 1}, {1, 1}, {0, 0}, {1, 0}}, n_max, cfg.dimension_cap);
    const auto two_sub = two.sub_truncation_states(1);
    for (const auto& [x, y] : std::vector<std::pair<LadderSymbol, LadderSymbol>>{
             {LadderSymbol::a(1, 0), LadderSymbol::ad(1, 1)}, {LadderSymbol::a(0, 0), LadderSymbol::ad(0, 1)},
             {LadderSymbol::a(1, 0), LadderSymbol::ad(0, 1)}, {LadderSymbol::ad(1, 0), LadderSymbol::ad(1, 1)}}) {
      rec.pass = rec.pass && commutator(OperatorPoly(x), OperatorPoly(y), s).is_zero();
      worst = std::max(worst, max_abs_on_columns(matrix_bracket(two, x, y), two_sub));
      ++checked;
    }
    rec.values = {{"pairs_checked", checked}, {"numeric_max", worst}};
    rec.pass = rec.pass && worst <= 1e-12;
    section.records.push_back(rec);
  }
  {
    CheckRecord rec{"b_operator_normalization", label, {{"n_max", n_max}}, {}, {{"symbolic", "exact"}, {"numeric", 1e-12}}, false, ""};
    try {
      const CanonicalB cb = canonicalize_b(s);
      bool exact = true;
      for (int r = 0; r < 4; ++r) {
        for (int q = 0; q < 4; ++q) {
          const OperatorPoly b = cb.b_in_a(LadderSymbol::a(r, 0));
          const OperatorPoly bd = cb.b_in_a(LadderSymbol::ad(q, 0));
          const OperatorPoly value = commutator(b, bd, s);
          exact = exact && value == (r == q ? OperatorPoly::identity() : OperatorPoly());
        }
      }
      double worst = 0.0;
      for (int r = 0; r < 4; ++r) {
        const SparseMatrix b = rep.realize(cb.b_in_a(LadderSymbol::a(r, 0)));
        const SparseMatrix bd = rep.realize(cb.b_in_a(LadderSymbol::ad(r, 0)));
        const SparseMatrix m = SparseMatrix(b * bd) - SparseMatrix(bd * b) - rep.identity();
        worst = std::max(worst, max_abs_on_columns(m, sub));
      }
      rec.values = {{"symbolic_exact", exact}, {"numeric_deviation", worst}};
      rec.pass = exact && worst <= 1e-12;
    } catch (const Error& e) {
      rec.values = {{"error", e.what()}};
      rec.note = "rescaling undefined for this scheme";
    }
    section.records.push_back(rec);
  }
  {
    const TruncationDefect d = rep.truncation_defect();
    CheckRecord rec{"fock_truncation_defect", label, {{"n_max", n_max}}, {}, {{"sub_truncation", 1e-12}}, d.sub_truncation <= 1e-12, ""};
    rec.values = {{"sub_truncation", d.sub_truncation}, {"full_space", d.full_space}};
    section.records.push_back(rec);
  }
  return section;
}

inline ReportSection run_causality(const RunConfig& cfg, bool write_artifacts = true) {
  ReportSection section{"causality", {}, {}};
  const auto& cc = cfg.causality;
  const ScanTable table = lightcone_scan(cc.r_grid, cc.ct_grid, cc.epsilons);

  {
    double worst_rel = 0.0;
    bool ok = true;
    for (const auto& row : table.rows) {
      ok = ok && quadrature_agrees(row.closed_form, row.quadrature);
      if (row.closed_form != 0.0) worst_rel = std::max(worst_rel, std::abs(row.quadrature - row.closed_form) / std::abs(row.closed_form));
    }
    section.records.push_back({"quadrature_vs_closed_form", "n/a", {{"rows", table.rows.size()}},
                               {{"max_relative_deviation", worst_rel}}, {{"relative", 1e-6}, {"absolute_near_zero", 1e-9}}, ok, ""});
  }
  for (const auto& p : table.points) {
    if (p.cone == ConeClass::Lightcone && !p.exactly_on_cone) continue;
    if (p.cone == ConeClass::Lightcone && p.ct == 0.0) continue;
    CheckRecord rec;
    rec.scheme = "n/a";
    rec.inputs = {{"r", p.r}, {"ct", p.ct}, {"epsilons", cc.epsilons}};
    rec.values = {{"fitted", p.fitted}, {"analytic", p.analytic}};
    if (p.cone == ConeClass::Lightcone) {
      rec.name = "lightcone_2eps_I";
      rec.tolerance = {{"relative", 0.05}};
    } else {
      rec.name = to_string(p.cone) + "_I_over_eps";
      rec.tolerance = {{"relative", 0.10}};
    }
    rec.pass = p.pass;
    section.records.push_back(rec);
  }
  {
    bool ok = true;
    for (const auto& row : table.rows) {
      if (row.ct == 0.0) ok = ok && row.closed_form == 0.0;
    }
    for (double r : cc.r_grid) ok = ok && regulated_kernel({r, 0.0, cc.epsilons.back()}) == 0.0;
    section.records.push_back({"equal_time_vanishes", "n/a", {{"r_grid", cc.r_grid}}, {{"exact_zero", ok}}, 0.0, ok, ""});
  }
  if (write_artifacts) {
    std::filesystem::create_directories(cfg.output_dir);
    const auto path = std::filesystem::path(cfg.output_dir) / "causality_scan.csv";
    std::ofstream os(path);
    write_scan_csv(os, table);
    section.artifacts.push_back(path.string());
  }
  return section;
}

/// Exact VEV next to the Fock-space value for each expression.
inline ReportSection run_vev(const std::vector<CorpusEntry>& expressions, const RunConfig& cfg) {
  ReportSection section{"vev", {}, {}};
  for (const auto& entry : expressions) {
    CheckRecord rec;
    rec.name = "vev";
    rec.scheme = scheme_label(cfg.scheme);
    rec.inputs = {{"expression", entry.text}, {"line", entry.line}};
    const Scalar exact = vev(entry.poly, cfg.scheme);
    rec.values["exact"] = exact_json(exact);
    rec.tolerance = {{"numeric", 1e-10}};
    const int needed = static_cast<int>((entry.poly.degree() + 1) / 2);
    const std::set<Oscillator> osc_set = entry.poly.oscillators();
    try {
      const FockRep rep(cfg.scheme, std::vector<Oscillator>(osc_set.begin(), osc_set.end()), std::max(cfg.n_max, std::max(needed, 1)),
                        cfg.dimension_cap);
      const Complex numeric = rep.vev_numeric(entry.poly);
      rec.values["numeric"] = complex_json(numeric);
      rec.pass = std::abs(numeric - exact.to_complex()) <= 1e-10 * std::max(1.0, std::abs(exact.to_complex()));
    } catch (const Error& e) {
      rec.values["numeric"] = nullptr;
      rec.note = e.what();
    }
    section.records.push_back(std::move(rec));
  }
  return section;
}

}  // namespace zpe
