#pragma once

#include <fstream>

#include <json.hpp>

#include "cluskit/seed.hpp"

namespace cluskit {

// Seed file schema (all vertex indices 1-based on disk):
// {"n": int, "unfrozen": [int], "B": [[rational string or number]],
//  "d": [int], "Lambda": [[int]] | null, "labels": [string] (optional)}
inline Seed seed_from_json(const nlohmann::json& j) {
  try {
    Seed s;
    s.n = j.at("n").get<int>();
    for (const auto& k : j.at("unfrozen")) s.uf.push_back(k.get<int>() - 1);
    for (const auto& row : j.at("B")) {
      RatVec r;
      for (const auto& x : row) {
        if (x.is_string())
          r.push_back(rat_from_string(x.get<std::string>()));
        else
          r.push_back(Rat(x.get<long long>()));
      }
      s.B.push_back(std::move(r));
    }
    for (const auto& x : j.at("d")) s.d.push_back(x.get<long long>());
    if (j.contains("Lambda") && !j.at("Lambda").is_null()) {
      IntMat lam;
      for (const auto& row : j.at("Lambda")) {
        std::vector<long long> r;
        for (const auto& x : row) r.push_back(x.get<long long>());
        lam.push_back(std::move(r));
      }
      s.lambda = SkewForm(std::move(lam));
    }
    if (j.contains("labels"))
      for (const auto& x : j.at("labels")) s.labels.push_back(x.get<std::string>());
    s.init();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad seed JSON: ") + e.what());
  }
}

inline nlohmann::json seed_to_json(const Seed& s) {
  nlohmann::json j;
  j["n"] = s.n;
  j["unfrozen"] = nlohmann::json::array();
  for (int k : s.uf) j["unfrozen"].push_back(k + 1);
  j["B"] = nlohmann::json::array();
  for (const auto& row : s.B) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& x : row) r.push_back(rat_to_string(x));
    j["B"].push_back(r);
  }
  j["d"] = s.d;
  if (s.lambda.is_zero())
    j["Lambda"] = nullptr;
  else
    j["Lambda"] = s.lambda.lambda;
  j["labels"] = s.labels;
  return j;
}

inline Seed load_seed(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open seed file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("cannot parse seed file " + path + ": " + e.what());
  }
  return seed_from_json(j);
}

inline void save_seed(const Seed& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write seed file: " + path);
  out << seed_to_json(s).dump(2) << '\n';
}

}  // namespace cluskit
