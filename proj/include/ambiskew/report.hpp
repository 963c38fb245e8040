#pragma once

// Running the check directives of a document and re-checking the
// certificates that come back.

#include <optional>
#include <string>
#include <vector>

#include "ambiskew/dsl.hpp"
#include "ambiskew/gwa.hpp"
#include "ambiskew/localization.hpp"
#include "ambiskew/verdict.hpp"

namespace ambiskew {

inline constexpr const char* kReportSchema = "ambiskew-report/1";
const char* tool_version();

struct Report {
  std::string check;    // simple, conformal, localized_simple, torus
  std::string target;
  int line = 0;
  Verdict verdict;
  std::string error;    // set when the check could not be run
  double seconds = 0;

  // What the check was about, kept for verification.
  AlgebraPtr ring;
  GwaPtr gwa;
  std::optional<TorusMatrix> torus;
};

Report run_check(const dsl::Document& doc, const dsl::Statement& check, const Bounds& bounds);
// Reports come back in source order whatever `jobs` is.
std::vector<Report> run_checks(const dsl::Document& doc, const Bounds& bounds, int jobs = 1);

// Re-checks the certificate of a Holds or Fails report by direct
// arithmetic on the ring the report refers to. Inconclusive and error
// reports have nothing to verify and give false.
bool verify_certificate(const Report& r);

// "m_max=10,n_max=2" on top of `base`; unknown keys and bad values throw.
Bounds parse_bounds(const std::string& text, Bounds base = {});
json bounds_json(const Bounds& b);

json report_json(const Report& r, bool timing = false);
// The full document: schema tag, tool, bounds and one entry per report.
json reports_json(const std::vector<Report>& rs, const Bounds& b, const std::string& source,
                  bool timing = false);
std::string render_text(const std::vector<Report>& rs, const Bounds& b, const std::string& source,
                        bool timing = false);

// 0 when every report is decided, 1 when some are Inconclusive, 2 on errors.
int exit_status(const std::vector<Report>& rs);

}  // namespace ambiskew
