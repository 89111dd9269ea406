#pragma once

// JSON form of a parameter schedule:
//   {"segments":[{"start_tick":0,"params":{"p_spawn":0.9,"p_like":0.05,
//     "p_repost":0.001,"p_link":0.0,"e0":10,"phi":{"kind":"constant"}}}]}
// p_link, e0 and phi are optional (defaults 0.0, 10, constant); a saturating
// phi is {"kind":"saturating","scale":S} with S > 0.

#include <string>

#include "json.hpp"
#include "newsflow/diffusion.hpp"
#include "newsflow/errors.hpp"

namespace newsflow {

namespace detail {

inline double json_number(const nlohmann::json& j, const char* key, const std::string& where,
                          bool required, double fallback) {
  if (!j.contains(key)) {
    if (required) throw ConfigError(where + key + " is required");
    return fallback;
  }
  const nlohmann::json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(where + key + " must be a number");
  return v.get<double>();
}

inline std::int64_t json_integer(const nlohmann::json& j, const char* key,
                                 const std::string& where, bool required,
                                 std::int64_t fallback) {
  if (!j.contains(key)) {
    if (required) throw ConfigError(where + key + " is required");
    return fallback;
  }
  const nlohmann::json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + key + " must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace detail

inline PhiSpec phi_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  if (!j.contains("kind")) throw ConfigError(where + ".kind is required");
  const nlohmann::json& kind = j.at("kind");
  if (!kind.is_string()) throw ConfigError(where + ".kind must be a string");
  const std::string k = kind.get<std::string>();
  PhiSpec phi;
  if (k == "constant") {
    phi.kind = PhiKind::constant_one;
  } else if (k == "saturating") {
    phi.kind = PhiKind::saturating;
    phi.scale = detail::json_number(j, "scale", where + ".", true, 0.0);
  } else {
    throw ConfigError(where + ".kind must be \"constant\" or \"saturating\", got \"" + k + "\"");
  }
  return phi;
}

inline ModelParams params_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  ModelParams p;
  p.p_spawn = detail::json_number(j, "p_spawn", where + ".", true, 0.0);
  p.p_like0 = detail::json_number(j, "p_like", where + ".", true, 0.0);
  p.p_repost0 = detail::json_number(j, "p_repost", where + ".", true, 0.0);
  p.p_link0 = detail::json_number(j, "p_link", where + ".", false, 0.0);
  p.e0 = detail::json_integer(j, "e0", where + ".", false, 10);
  if (j.contains("phi")) p.phi = phi_from_json(j.at("phi"), where + ".phi");
  try {
    validate(p);
  } catch (const ConfigError& e) {
    throw ConfigError(where + "." + e.what());
  }
  return p;
}

inline ParamSchedule schedule_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("segments"))
    throw ConfigError("config must be an object with a \"segments\" array");
  const nlohmann::json& segs = j.at("segments");
  if (!segs.is_array() || segs.empty())
    throw ConfigError("segments must be a non-empty array");
  ParamSchedule schedule;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const std::string where = "segments[" + std::to_string(i) + "]";
    const nlohmann::json& seg = segs.at(i);
    if (!seg.is_object()) throw ConfigError(where + " must be an object");
    ScheduleSegment out;
    out.start_tick = detail::json_integer(seg, "start_tick", where + ".", true, 0);
    if (out.start_tick < 0) throw ConfigError(where + ".start_tick must be >= 0");
    if (!seg.contains("params")) throw ConfigError(where + ".params is required");
    out.params = params_from_json(seg.at("params"), where + ".params");
    schedule.segments.push_back(std::move(out));
  }
  validate(schedule);
  return schedule;
}

inline nlohmann::json schedule_to_json(const ParamSchedule& schedule) {
  nlohmann::json segs = nlohmann::json::array();
  for (const ScheduleSegment& seg : schedule.segments) {
    nlohmann::json phi;
    if (seg.params.phi.kind == PhiKind::constant_one) {
      phi = {{"kind", "constant"}};
    } else {
      phi = {{"kind", "saturating"}, {"scale", seg.params.phi.scale}};
    }
    segs.push_back({{"start_tick", seg.start_tick},
                    {"params",
                     {{"p_spawn", seg.params.p_spawn},
                      {"p_like", seg.params.p_like0},
                      {"p_repost", seg.params.p_repost0},
                      {"p_link", seg.params.p_link0},
                      {"e0", seg.params.e0},
                      {"phi", phi}}}});
  }
  return {{"segments", segs}};
}

}  // namespace newsflow
