#include "ambiskew/report.hpp"

#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "ambiskew/simplicity.hpp"

namespace ambiskew {

#ifndef AMBISKEW_VERSION
#define AMBISKEW_VERSION "0.0.0"
#endif

const char* tool_version() { return AMBISKEW_VERSION; }

namespace {

Verdict conformal_verdict(const AlgebraPtr& r) {
  Conformality cf = conformality(r);
  Verdict v;
  v.theorem = "conformality";
  v.certificate = cf.certificate;
  v.reason = cf.reason;
  v.status = cf.status;
  if (cf.status == Status::Fails) v.failed_condition = "splitting";
  return v;
}

}  // namespace

Report run_check(const dsl::Document& doc, const dsl::Statement& s, const Bounds& bounds) {
  Report r;
  r.check = s.kind;
  r.target = s.target;
  r.line = s.span.line;
  auto t0 = std::chrono::steady_clock::now();
  try {
    const auto& env = doc.env;
    if (s.kind == "torus") {
      r.torus = dsl::read_torus(dsl::torus_path(doc, s.target), env.ctx);
      r.verdict = quantum_torus_simple(*r.torus);
    } else if (auto g = env.gwas.find(s.target); g != env.gwas.end()) {
      r.gwa = g->second;
      r.verdict = gwa_simple(r.gwa, bounds);
    } else {
      r.ring = env.algebras.at(s.target);
      if (s.kind == "simple")
        r.verdict = ring_simple(r.ring, bounds);
      else if (s.kind == "conformal")
        r.verdict = conformal_verdict(r.ring);
      else
        r.verdict = localized_simple(r.ring, bounds);
    }
  } catch (const std::exception& ex) {
    r.error = ex.what();
    r.verdict = Verdict::inconclusive(std::string("error: ") + ex.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<Report> run_checks(const dsl::Document& doc, const Bounds& bounds, int jobs) {
  auto checks = doc.checks();
  std::vector<Report> out(checks.size());
  if (jobs <= 1 || checks.size() <= 1) {
    for (size_t i = 0; i < checks.size(); ++i) out[i] = run_check(doc, *checks[i], bounds);
    return out;
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next++) < checks.size();) out[i] = run_check(doc, *checks[i], bounds);
  };
  std::vector<std::thread> pool;
  for (int k = 0; k < jobs && k < static_cast<int>(checks.size()); ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

Bounds parse_bounds(const std::string& text, Bounds b) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto trim = [](std::string x) {
      size_t a = x.find_first_not_of(" \t"), e = x.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : x.substr(a, e - a + 1);
    };
    item = trim(item);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bounds entry '" + item + "' needs key=value");
    std::string key = trim(item.substr(0, eq)), val = trim(item.substr(eq + 1));
    long n;
    try {
      size_t used;
      n = std::stol(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw std::invalid_argument("bounds value '" + val + "' is not an integer");
    }
    if (n < 0) throw std::invalid_argument("bounds value for " + key + " must be non-negative");
    if (key == "m_max")
      b.m_max = n;
    else if (key == "n_max")
      b.n_max = n;
    else if (key == "period_max")
      b.period_max = n;
    else if (key == "special_window")
      b.special_window = n;
    else
      throw std::invalid_argument("unknown bounds key '" + key + "'");
  }
  return b;
}

json bounds_json(const Bounds& b) {
  return {{"m_max", b.m_max}, {"n_max", b.n_max}, {"period_max", b.period_max},
          {"special_window", b.special_window}};
}

json report_json(const Report& r, bool timing) {
  json j;
  j["check"] = r.check;
  j["target"] = r.target;
  j["line"] = r.line;
  json verdict = r.verdict.to_json();
  for (auto& [k, v] : verdict.items()) j[k] = v;
  if (!r.error.empty()) j["error"] = r.error;
  j["certificate_verified"] = r.verdict.is_inconclusive() ? json(nullptr) : json(verify_certificate(r));
  if (timing) j["seconds"] = r.seconds;
  return j;
}

json reports_json(const std::vector<Report>& rs, const Bounds& b, const std::string& source, bool timing) {
  json j;
  j["schema"] = kReportSchema;
  j["tool"] = {{"name", "ambiskew"}, {"version", tool_version()}};
  j["source"] = source;
  j["bounds"] = bounds_json(b);
  json arr = json::array();
  for (const auto& r : rs) arr.push_back(report_json(r, timing));
  j["reports"] = arr;
  return j;
}

std::string render_text(const std::vector<Report>& rs, const Bounds& b, const std::string& source,
                        bool timing) {
  std::ostringstream o;
  o << source << "  (m_max=" << b.m_max << ", n_max=" << b.n_max << ", period_max=" << b.period_max
    << ", special_window=" << b.special_window << ")\n";
  for (const auto& r : rs) {
    o << "line " << r.line << ": " << r.check << "(" << r.target << ") -> ";
    if (!r.error.empty()) {
      o << "ERROR " << r.error << "\n";
      continue;
    }
    o << status_name(r.verdict.status);
    if (!r.verdict.theorem.empty()) o << " [" << r.verdict.theorem << "]";
    if (timing) o << " " << r.seconds << "s";
    o << "\n";
    if (!r.verdict.failed_condition.empty()) o << "  failed: " << r.verdict.failed_condition << "\n";
    if (!r.verdict.reason.empty()) o << "  reason: " << r.verdict.reason << "\n";
    for (const auto& c : r.verdict.conditions) o << "  " << c.name << ": " << status_name(c.status) << "\n";
    if (!r.verdict.certificate.empty()) o << "  certificate: " << r.verdict.certificate.dump() << "\n";
    if (!r.verdict.is_inconclusive()) o << "  verified: " << (verify_certificate(r) ? "yes" : "NO") << "\n";
  }
  return o.str();
}

int exit_status(const std::vector<Report>& rs) {
  int code = 0;
  for (const auto& r : rs) {
    if (!r.error.empty()) return 2;
    if (r.verdict.is_inconclusive()) code = 1;
  }
  return code;
}

}  // namespace ambiskew
