#pragma once

#include <json.hpp>

#include "qhgeo/checkers.hpp"
#include "qhgeo/version.hpp"

namespace qhgeo {

using Json = nlohmann::ordered_json;

inline Json point_json(Point p) { return Json::array({p.x, p.y}); }

inline Json constant_json(const ConstantReport& r) {
  Json j;
  j["value"] = r.value;
  j["direction"] = certificate_name(r.direction);
  Json w = Json::array();
  for (Point p : r.witness) w.push_back(point_json(p));
  j["witness"] = w;
  j["samples"] = r.samples;
  if (!r.resolution.empty()) j["resolution"] = r.resolution;
  return j;
}

// ---------------------------------------------------------------------------
// Minimal JSON-schema validation (type / required / properties / items /
// enum), enough to pin the published report layout.
// ---------------------------------------------------------------------------

inline void validate_schema(const nlohmann::json& schema, const nlohmann::json& value,
                            const std::string& where = "$") {
  if (schema.contains("type")) {
    const std::string t = schema["type"].get<std::string>();
    const bool ok = (t == "object" && value.is_object()) || (t == "array" && value.is_array()) ||
                    (t == "string" && value.is_string()) || (t == "number" && value.is_number()) ||
                    (t == "integer" && value.is_number_integer()) ||
                    (t == "boolean" && value.is_boolean()) || (t == "null" && value.is_null());
    require(ok, errc::invalid_params, "schema violation at " + where + ": expected " + t);
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& v : schema["enum"]) found = found || v == value;
    require(found, errc::invalid_params, "schema violation at " + where + ": value not in enum");
  }
  if (schema.contains("required")) {
    for (const auto& key : schema["required"])
      require(value.contains(key.get<std::string>()), errc::invalid_params,
              "schema violation at " + where + ": missing key '" + key.get<std::string>() + "'");
  }
  if (schema.contains("properties") && value.is_object()) {
    for (const auto& [key, sub] : schema["properties"].items())
      if (value.contains(key)) validate_schema(sub, value.at(key), where + "." + key);
  }
  if (schema.contains("items") && value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i)
      validate_schema(schema["items"], value[i], where + "[" + std::to_string(i) + "]");
  }
}

// The published report schema; shipped verbatim at schema/report.schema.json.
inline const char* report_schema_text() {
  return R"SCHEMA({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "qhgeo report",
  "type": "object",
  "required": ["qhgeo_version", "schema_version", "command", "seed", "domain", "verdicts"],
  "properties": {
    "qhgeo_version": {"type": "string"},
    "schema_version": {"type": "string"},
    "command": {"type": "string"},
    "seed": {"type": "integer"},
    "domain": {
      "type": "object",
      "required": ["name", "hash"],
      "properties": {
        "name": {"type": "string"},
        "hash": {"type": "string"},
        "tags": {"type": "object"}
      }
    },
    "sampling": {
      "type": "object",
      "properties": {
        "resolution": {"type": "number"},
        "base_spacing": {"type": "number"},
        "boundary_refinement_levels": {"type": "integer"},
        "edge_radius_factor": {"type": "number"}
      }
    },
    "graph": {"type": "object"},
    "constants": {"type": "object"},
    "delta_thin": {
      "type": "object",
      "properties": {"value": {"type": "number"}, "witness": {"type": "array"}}
    },
    "delta_4pt": {"type": "object"},
    "rough_starlike_K": {
      "type": "object",
      "properties": {
        "value": {"type": "number"},
        "witness": {"type": "array"},
        "base": {"type": "array"}
      }
    },
    "uniformization": {
      "type": "object",
      "properties": {
        "epsilon": {"type": "number"},
        "diam_eps": {"type": "number"},
        "band_upper_ok": {"type": "boolean"},
        "c0_empirical": {"type": "number"},
        "M_empirical": {"type": "number"},
        "uniform_const_eps": {"type": "number"}
      }
    },
    "bounds": {
      "type": "object",
      "properties": {
        "ln_a6": {"type": "number"},
        "ln_a5": {"type": "number"},
        "ln_a4": {"type": "number"},
        "ln_ln_b": {"type": "number"},
        "dyadic_gaps": {"type": "array"},
        "max_gap": {"type": "number"},
        "implied_cone_constant": {"type": "number"}
      }
    },
    "pairs": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["x1", "y1", "x2", "y2", "k"],
        "properties": {
          "x1": {"type": "number"}, "y1": {"type": "number"},
          "x2": {"type": "number"}, "y2": {"type": "number"},
          "k": {"type": "number"}, "ell": {"type": "number"},
          "cone": {"type": "number"}, "qc": {"type": "number"},
          "gh_ratio": {"type": "number"}
        }
      }
    },
    "verdicts": {
      "type": "object",
      "required": ["exit_code"],
      "properties": {
        "thm1": {"type": "string", "enum": ["PASS", "FAIL", "SKIPPED"]},
        "thm2": {"type": "string", "enum": ["CONSISTENT", "INCONSISTENT", "SKIPPED"]},
        "exit_code": {"type": "integer"}
      }
    }
  }
})SCHEMA";
}

inline void validate_report(const Json& report) {
  validate_schema(nlohmann::json::parse(report_schema_text()), report);
}

inline Json new_report(const std::string& command, std::uint64_t seed, const Domain& domain,
                       const std::map<std::string, std::string>& tags = {}) {
  Json j;
  j["qhgeo_version"] = kVersion;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = command;
  j["seed"] = seed;
  j["domain"] = Json{{"name", domain.name()}, {"hash", domain.hash()}};
  if (!tags.empty()) {
    Json t;
    for (const auto& [k, v] : tags) t[k] = v;
    j["domain"]["tags"] = t;
  }
  return j;
}

// Per-pair CSV with the published column order.
inline std::string pairs_csv(const Json& pairs) {
  std::string out = "x1,y1,x2,y2,k,ell,cone,qc,gh_ratio\n";
  char buf[400];
  for (const auto& p : pairs) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  p.value("x1", 0.0), p.value("y1", 0.0), p.value("x2", 0.0), p.value("y2", 0.0),
                  p.value("k", 0.0), p.value("ell", 0.0), p.value("cone", 0.0), p.value("qc", 0.0),
                  p.value("gh_ratio", 0.0));
    out += buf;
  }
  return out;
}

}  // namespace qhgeo
