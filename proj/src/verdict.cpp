#include "ambiskew/verdict.hpp"

namespace ambiskew {

const char* status_name(Status s) {
  switch (s) {
    case Status::Holds: return "holds";
    case Status::Fails: return "fails";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

json Verdict::to_json() const {
  json j;
  j["verdict"] = status_name(status);
  j["theorem"] = theorem;
  j["failed_condition"] = failed_condition.empty() ? json(nullptr) : json(failed_condition);
  j["certificate"] = certificate;
  if (!reason.empty()) j["reason"] = reason;
  json conds = json::array();
  for (const auto& c : conditions) {
    json cj = {{"name", c.name}, {"status", status_name(c.status)}};
    if (!c.detail.empty()) cj["detail"] = c.detail;
    if (!c.certificate.empty()) cj["certificate"] = c.certificate;
    conds.push_back(cj);
  }
  j["conditions"] = conds;
  return j;
}

}  // namespace ambiskew
