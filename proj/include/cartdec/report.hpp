#pragma once

#include <string>
#include <vector>

namespace cartdec {

// One named check inside a structured report. `skipped` marks a clause whose
// hypothesis does not apply to the instance (recorded with the reason), so a
// suite passes iff no check has pass == false.
struct Check {
  std::string id;
  bool pass = false;
  bool skipped = false;
  std::string detail;

  static Check ok(std::string id, std::string detail = "") {
    return Check{std::move(id), true, false, std::move(detail)};
  }
  static Check bad(std::string id, std::string detail = "") {
    return Check{std::move(id), false, false, std::move(detail)};
  }
  static Check skip(std::string id, std::string reason) {
    return Check{std::move(id), true, true, std::move(reason)};
  }
};

struct CheckList {
  std::vector<Check> checks;

  void add(Check c) { checks.push_back(std::move(c)); }
  void require(std::string id, bool pass, std::string detail = "") {
    checks.push_back(pass ? Check::ok(std::move(id), std::move(detail))
                          : Check::bad(std::move(id), std::move(detail)));
  }
  void skip(std::string id, std::string reason) { checks.push_back(Check::skip(std::move(id), std::move(reason))); }

  bool all_pass() const {
    for (const Check& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::vector<std::string> failed_ids() const {
    std::vector<std::string> out;
    for (const Check& c : checks)
      if (!c.pass) out.push_back(c.id);
    return out;
  }
  void merge(const CheckList& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
};

}  // namespace cartdec
