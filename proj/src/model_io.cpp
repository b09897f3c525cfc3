#include "bfoml/model_io.hpp"

#include <json.hpp>

#include "bfoml/error.hpp"

namespace bfoml {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

std::string model_to_json(const KripkeModel& m, int indent) {
  ordered_json out;
  out["worlds"] = m.worlds;
  out["domain"] = m.domain;
  out["edges"] = ordered_json::array();
  for (const auto& [w, v] : m.edges) out["edges"].push_back({w, v});
  out["local"] = ordered_json::object();
  for (const auto& w : m.worlds) {
    auto it = m.local.find(w);
    out["local"][w] = it == m.local.end() ? ordered_json::array() : ordered_json(it->second);
  }
  out["rho"] = ordered_json::object();
  for (const auto& w : m.worlds) {
    auto it = m.rho.find(w);
    if (it == m.rho.end()) continue;
    ordered_json preds = ordered_json::object();
    for (const auto& [p, tuples] : it->second) {
      if (!tuples.empty()) preds[p] = tuples;
    }
    if (!preds.empty()) out["rho"][w] = std::move(preds);
  }
  return out.dump(indent);
}

namespace {

std::vector<std::string> string_array(const json& j, const char* what) {
  if (!j.is_array()) throw ModelError(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ModelError(std::string(what) + " must contain strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

KripkeModel model_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("malformed model JSON: ") + e.what());
  }
  if (!j.is_object()) throw ModelError("model JSON must be an object");
  for (const char* key : {"worlds", "domain"}) {
    if (!j.contains(key)) throw ModelError(std::string("model JSON lacks \"") + key + "\"");
  }

  KripkeModel m;
  m.worlds = string_array(j["worlds"], "worlds");
  m.domain = string_array(j["domain"], "domain");
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw ModelError("edges must be an array");
    for (const auto& e : j["edges"]) {
      auto pair = string_array(e, "edge");
      if (pair.size() != 2) throw ModelError("edge must have two endpoints");
      m.edges.emplace_back(pair[0], pair[1]);
    }
  }
  if (j.contains("local")) {
    if (!j["local"].is_object()) throw ModelError("local must be an object");
    for (const auto& [w, elems] : j["local"].items()) {
      auto v = string_array(elems, "local domain");
      m.local[w] = std::set<std::string>(v.begin(), v.end());
    }
  }
  if (j.contains("rho")) {
    if (!j["rho"].is_object()) throw ModelError("rho must be an object");
    for (const auto& [w, preds] : j["rho"].items()) {
      if (!preds.is_object()) throw ModelError("rho." + w + " must be an object");
      for (const auto& [p, tuples] : preds.items()) {
        if (!tuples.is_array()) throw ModelError("rho." + w + "." + p + " must be an array");
        auto& ext = m.rho[w][p];
        for (const auto& t : tuples) ext.insert(string_array(t, "tuple"));
      }
    }
  }
  return m;
}

}  // namespace bfoml
