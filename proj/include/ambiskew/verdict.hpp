#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace ambiskew {

using json = nlohmann::ordered_json;

enum class Status { Holds, Fails, Inconclusive };

const char* status_name(Status s);

struct ConditionResult {
  std::string name;
  Status status = Status::Inconclusive;
  std::string detail;
  json certificate = json::object();
};

// Three-valued answer. Holds and Fails always carry a certificate that
// can be re-checked by arithmetic alone; Inconclusive carries a reason.
struct Verdict {
  Status status = Status::Inconclusive;
  std::string theorem;
  std::string failed_condition;
  json certificate = json::object();
  std::string reason;
  std::vector<ConditionResult> conditions;

  static Verdict holds(json cert = json::object()) {
    Verdict v;
    v.status = Status::Holds;
    v.certificate = std::move(cert);
    return v;
  }
  static Verdict fails(std::string condition, json cert) {
    Verdict v;
    v.status = Status::Fails;
    v.failed_condition = std::move(condition);
    v.certificate = std::move(cert);
    return v;
  }
  static Verdict inconclusive(std::string why) {
    Verdict v;
    v.status = Status::Inconclusive;
    v.reason = std::move(why);
    return v;
  }

  bool is_holds() const { return status == Status::Holds; }
  bool is_fails() const { return status == Status::Fails; }
  bool is_inconclusive() const { return status == Status::Inconclusive; }

  json to_json() const;
};

// Bounds shared by every decision procedure.
struct Bounds {
  long m_max = 200;
  long n_max = 3;
  long period_max = 64;
  long special_window = 64;
};

}  // namespace ambiskew
