// ambiskew: run simplicity checks on .ask documents.
//
//   ambiskew check FILE [--format json|text] [--m-max N] [--n-max N] [--period-max N]
//   ambiskew catalog [--run] [--list]
//   ambiskew eval FILE --expr EXPR [--ring NAME]
//
// AMBISKEW_BOUNDS="m_max=..,n_max=..,period_max=..,special_window=.." sets
// the default bounds; command-line flags win over it.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ambiskew/report.hpp"

namespace fs = std::filesystem;
using namespace ambiskew;

#ifndef AMBISKEW_CATALOG_DIR
#define AMBISKEW_CATALOG_DIR "catalog"
#endif

namespace {

struct BoundFlags {
  std::optional<long> m_max, n_max, period_max, special_window;

  void add(CLI::App* app) {
    app->add_option("--m-max", m_max, "largest m tried by bounded searches")->check(CLI::NonNegativeNumber);
    app->add_option("--n-max", n_max, "largest n in the positive characteristic witness search")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--period-max", period_max, "largest period tried when detecting orders")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--special-window", special_window, "exponent window of the special-element search")
        ->check(CLI::NonNegativeNumber);
  }

  Bounds resolve() const {
    Bounds b;
    if (const char* env = std::getenv("AMBISKEW_BOUNDS")) b = parse_bounds(env, b);
    if (m_max) b.m_max = *m_max;
    if (n_max) b.n_max = *n_max;
    if (period_max) b.period_max = *period_max;
    if (special_window) b.special_window = *special_window;
    return b;
  }
};

std::vector<fs::path> catalog_files(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".ask") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// First comment line of a fixture, used as its description.
std::string describe(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) {
      size_t a = line.find_first_not_of("# ");
      return a == std::string::npos ? "" : line.substr(a);
    }
    if (line.find_first_not_of(" \t\r") != std::string::npos) break;
  }
  return "";
}

int cmd_check(const std::string& file, const std::string& format, const Bounds& b, bool timing, int jobs,
              const std::string& output) {
  dsl::Document doc = dsl::parse_file(file);
  auto reports = run_checks(doc, b, jobs);
  std::string text = format == "json" ? reports_json(reports, b, file, timing).dump(2) + "\n"
                                      : render_text(reports, b, file, timing);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary);
    out << text;
  }
  return exit_status(reports);
}

int cmd_catalog(const fs::path& dir, bool run, const std::string& format, const Bounds& b, bool timing,
                int jobs) {
  auto files = catalog_files(dir);
  if (!run) {
    for (const auto& f : files) std::cout << f.stem().string() << "\t" << describe(f) << "\n";
    return 0;
  }
  int code = 0;
  json all = json::array();
  for (const auto& f : files) {
    std::string name = f.stem().string();
    try {
      dsl::Document doc = dsl::parse_file(f.string());
      auto reports = run_checks(doc, b, jobs);
      code = std::max(code, exit_status(reports));
      if (format == "json") {
        json j = reports_json(reports, b, f.filename().string(), timing);
        all.push_back({{"name", name}, {"reports", j["reports"]}});
      } else {
        std::cout << render_text(reports, b, name, timing);
      }
    } catch (const std::exception& ex) {
      code = 2;
      if (format == "json")
        all.push_back({{"name", name}, {"error", ex.what()}});
      else
        std::cout << name << ": ERROR " << ex.what() << "\n";
    }
  }
  if (format == "json") {
    json j;
    j["schema"] = kReportSchema;
    j["tool"] = {{"name", "ambiskew"}, {"version", tool_version()}};
    j["bounds"] = bounds_json(b);
    j["catalog"] = all;
    std::cout << j.dump(2) << "\n";
  }
  return code;
}

int cmd_eval(const std::string& file, const std::string& expr, std::string ring) {
  dsl::Document doc = dsl::parse_file(file);
  const auto& env = doc.env;
  if (ring.empty()) ring = env.last_ring;
  if (ring.empty()) throw std::runtime_error("the document declares no ring; pass --ring");
  auto g = env.gwas.find(ring);
  auto a = env.algebras.find(ring);
  if (g == env.gwas.end() && a == env.algebras.end()) throw std::runtime_error("unknown ring '" + ring + "'");
  try {
    dsl::ExprPtr e = dsl::parse_expr(expr);
    std::cout << (g != env.gwas.end() ? to_string(dsl::eval_gwa(*e, g->second, env.ctx))
                                      : to_string(dsl::eval_element(*e, a->second, env.ctx)))
              << "\n";
  } catch (const dsl::DslError& ex) {
    throw std::runtime_error("--expr:" + std::string(ex.what()) + " (ring " + ring + ")");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simplicity checks for ambiskew polynomial rings and generalized Weyl algebras"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  std::string file, format = "text", output, expr, ring;
  bool timing = false, run = false, list = false;
  int jobs = 1;
  std::string dir = AMBISKEW_CATALOG_DIR;
  BoundFlags cflags, kflags;

  auto* check = app.add_subcommand("check", "run the check directives of a .ask file");
  check->add_option("FILE", file, "spec file")->required()->check(CLI::ExistingFile);
  check->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  check->add_option("-o,--output", output, "write the report to a file");
  check->add_flag("--timing", timing, "include wall-clock seconds per check");
  check->add_option("-j,--jobs", jobs, "checks run concurrently")->check(CLI::PositiveNumber);
  cflags.add(check);

  auto* catalog = app.add_subcommand("catalog", "list or run the bundled example catalog");
  catalog->add_flag("--run", run, "run every catalog entry");
  catalog->add_flag("--list", list, "list the catalog entries (default)");
  catalog->add_option("--dir", dir, "catalog directory")->check(CLI::ExistingDirectory);
  catalog->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  catalog->add_flag("--timing", timing, "include wall-clock seconds per check");
  catalog->add_option("-j,--jobs", jobs, "checks run concurrently")->check(CLI::PositiveNumber);
  kflags.add(catalog);

  auto* eval = app.add_subcommand("eval", "print the normal form of an expression");
  eval->add_option("FILE", file, "spec file")->required()->check(CLI::ExistingFile);
  eval->add_option("--expr", expr, "expression over the ring")->required();
  eval->add_option("--ring", ring, "ring to evaluate in (default: last declared)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(file, format, cflags.resolve(), timing, jobs, output);
    if (catalog->parsed()) {
      if (run && list) throw std::runtime_error("--run and --list are exclusive");
      return cmd_catalog(dir, run, format, kflags.resolve(), timing, jobs);
    }
    if (eval->parsed()) return cmd_eval(file, expr, ring);
  } catch (const dsl::DslError& ex) {
    std::cerr << file << ":" << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "ambiskew: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
