#pragma once

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace cluskit {

// One checked instance of a verification harness.  Statuses order as
// verified < inconclusive < falsified; a report takes the worst of its
// instances.
struct Instance {
  std::string name;
  std::string status;  // "verified" | "inconclusive" | "falsified"
  std::string witness;
};

struct Report {
  std::string id;
  std::string subject;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<Instance> instances;

  void add(std::string name, bool ok, std::string witness = "") {
    instances.push_back(
        {std::move(name), ok ? "verified" : "falsified", std::move(witness)});
  }
  void add_inconclusive(std::string name, std::string witness) {
    instances.push_back({std::move(name), "inconclusive", std::move(witness)});
  }

  std::string status() const {
    std::string s = "verified";
    for (const auto& i : instances) {
      if (i.status == "falsified") return "falsified";
      if (i.status == "inconclusive") s = "inconclusive";
    }
    return s;
  }

  int exit_code() const {
    const std::string s = status();
    if (s == "verified") return 0;
    if (s == "inconclusive") return 2;
    return 1;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["id"] = id;
    j["subject"] = subject;
    j["parameters"] = parameters;
    j["status"] = status();
    j["instances"] = nlohmann::json::array();
    for (const auto& i : instances) {
      nlohmann::json ji;
      ji["name"] = i.name;
      ji["status"] = i.status;
      if (!i.witness.empty()) ji["witness"] = i.witness;
      j["instances"].push_back(ji);
    }
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << id << " on " << subject << ": " << status() << "\n";
    for (const auto& i : instances) {
      os << "  [" << i.status << "] " << i.name;
      if (!i.witness.empty()) os << " -- " << i.witness;
      os << "\n";
    }
    return os.str();
  }
};

}  // namespace cluskit
