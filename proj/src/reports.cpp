#include "entanglekit/reports.hpp"

#include <cstdio>

#include "entanglekit/state_io.hpp"

namespace entanglekit {

using nlohmann::ordered_json;

ordered_json to_json(const CriterionVerdict& v) {
  ordered_json j;
  j["criterion"] = v.criterion;
  j["outcome"] = to_string(v.outcome);
  j["evidence"] = v.evidence;
  j["detail"] = v.detail;
  return j;
}

ordered_json to_json(const SeparabilityReport& r) {
  ordered_json j;
  j["verdicts"] = ordered_json::array();
  for (const auto& v : r.verdicts) j["verdicts"].push_back(to_json(v));
  j["aggregate"] = to_string(r.aggregate);
  if (r.inside_separable_ball) j["inside_separable_ball"] = *r.inside_separable_ball;
  return j;
}

ordered_json to_json(const MeasureReport& r) {
  ordered_json j;
  j["values"] = ordered_json::object();
  for (const auto& [k, v] : r.values) j["values"][k] = v;
  j["flags"] = ordered_json::object();
  for (const auto& [k, v] : r.flags) j["flags"][k] = v;
  return j;
}

ordered_json to_json(const ConversionReport& r) {
  ordered_json j;
  j["relation"] = to_string(r.relation);
  j["p_c"] = r.p_c;
  return j;
}

std::string to_text(const SeparabilityReport& r) {
  std::string out;
  char line[256];
  for (const auto& v : r.verdicts) {
    std::snprintf(line, sizeof line, "%-18s %-22s % .12e\n", v.criterion.c_str(), to_string(v.outcome), v.evidence);
    out += line;
  }
  if (r.inside_separable_ball) out += std::string("separable ball     ") + (*r.inside_separable_ball ? "inside" : "outside") + "\n";
  out += std::string("aggregate          ") + to_string(r.aggregate) + "\n";
  return out;
}

std::string to_text(const MeasureReport& r) {
  std::string out;
  char line[256];
  for (const auto& [k, v] : r.values) {
    std::snprintf(line, sizeof line, "%-32s % .15e\n", k.c_str(), v);
    out += line;
  }
  for (const auto& [k, v] : r.flags) out += k + ": " + v + "\n";
  return out;
}

std::string to_text(const ConversionReport& r) {
  return std::string("relation ") + to_string(r.relation) + "\np_c      " + format_real(r.p_c) + "\n";
}

}  // namespace entanglekit
