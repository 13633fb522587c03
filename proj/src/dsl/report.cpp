// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "chowkit/scene.hpp"

namespace chowkit::scene {

namespace {

int count(const Report& r, Status s) {
  return static_cast<int>(std::count_if(r.entries.begin(), r.entries.end(),
                                        [s](const Entry& e) { return e.status == s; }));
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Error:
      return "error";
  }
  return "error";
}

}  // namespace

int Report::passed() const { return count(*this, Status::Pass); }
int Report::failed() const { return count(*this, Status::Fail); }
int Report::errors() const { return count(*this, Status::Error); }

std::string format_report(const Report& r, Format f) {
  if (f == Format::Json) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& e : r.entries) {
      nlohmann::ordered_json j;
      j["label"] = e.label;
      j["status"] = status_name(e.status);
      j["witness"] = e.witness ? nlohmann::ordered_json(*e.witness) : nlohmann::ordered_json(nullptr);
      j["location"] = e.location.str();
      if (e.expected_fail) j["expected"] = "fail";
      list.push_back(std::move(j));
    }
    nlohmann::ordered_json out;
    out["assertions"] = std::move(list);
    out["summary"] = {{"pass", r.passed()}, {"fail", r.failed()}, {"error", r.errors()}};
    return out.dump(2) + "\n";
  }
  std::ostringstream os;
  for (const auto& e : r.entries) {
    switch (e.status) {
      case Status::Pass:
        os << "PASS " << e.label;
        if (e.expected_fail) os << " (expected failure)";
        break;
      case Status::Fail:
        os << "FAIL " << e.label << " [" << e.location.str() << "]";
        break;
      case Status::Error:
        os << "ERROR " << e.label << " [" << e.location.str() << "]";
        break;
    }
    if (e.status != Status::Pass && e.witness) os << ": " << *e.witness;
    os << "\n";
  }
  os << r.passed() << " passed, " << r.failed() << " failed, " << r.errors() << " errors\n";
  return os.str();
}

}  // namespace chowkit::scene
