#pragma once

// JSON views of every result type, plus the report envelope the CLI wraps
// around payloads.
//
// Conventions: angles and rationals are "p/q" strings (exact, no float
// round-trip), complex numbers are [re, im] pairs, itineraries are their
// ASCII form. Keys keep insertion order so identical inputs give
// byte-identical payload text.

#include <chrono>
#include <complex>
#include <ostream>
#include <string>

#include <json.hpp>

#include "cremerlab/angle.hpp"
#include "cremerlab/circle.hpp"
#include "cremerlab/itinerary.hpp"
#include "cremerlab/orbit.hpp"
#include "cremerlab/periodic.hpp"
#include "cremerlab/pullback_tree.hpp"
#include "cremerlab/ray.hpp"
#include "cremerlab/strings.hpp"

namespace cremerlab {

using ordered_json = nlohmann::ordered_json;

inline ordered_json complex_json(std::complex<double> z) {
  return ordered_json::array({z.real(), z.imag()});
}

inline ordered_json points_json(const std::vector<std::complex<double>>& pts) {
  ordered_json arr = ordered_json::array();
  for (auto z : pts) arr.push_back(complex_json(z));
  return arr;
}

inline ordered_json rational_json(const rational& r) { return r.to_string(); }
inline ordered_json angle_json(const angle& a) { return a.to_string(); }

inline ordered_json leaf_json(const critical_leaf& leaf) {
  return ordered_json{{"alpha", angle_json(leaf.alpha)},
                      {"beta", angle_json(leaf.beta)},
                      {"chord_diameter", rational_json(leaf.chord_diameter())}};
}

inline ordered_json rotation_set_json(const rotation_set& rs) {
  ordered_json orbit = ordered_json::array();
  for (const auto& a : rs.orbit) orbit.push_back(angle_json(a));
  return ordered_json{{"p", rs.p},
                      {"q", rs.q},
                      {"orbit", orbit},
                      {"major_gap",
                       ordered_json{{"start", angle_json(rs.major_gap.start)},
                                    {"end", angle_json(rs.major_gap.end)},
                                    {"length", rational_json(rs.major_gap.length())}}},
                      {"leaf", leaf_json(rs.leaf_estimate)}};
}

inline ordered_json cantor_leaf_json(const cantor_leaf_result& r) {
  return ordered_json{{"leaf", leaf_json(r.leaf)},
                      {"error_bound", rational_json(r.error_bound)},
                      {"p", r.p},
                      {"q", r.q}};
}

inline ordered_json tree_json(const pullback_tree& t) {
  ordered_json nodes = ordered_json::array();
  for (const auto& node : t.nodes) nodes.push_back(node.to_string());
  ordered_json edges = ordered_json::array();
  for (auto [i, j] : t.edges) edges.push_back(ordered_json::array({i, j}));
  return ordered_json{{"n", t.n}, {"nodes", nodes}, {"edges", edges}};
}

// Graph description for external viewers: DOT syntax, one edge per line,
// labels quoted.
inline void write_tree_graph(const pullback_tree& t, std::ostream& os) {
  os << "graph pullbacks_n" << t.n << " {\n";
  for (auto [i, j] : t.edges)
    os << "  \"" << t.nodes[i].to_string() << "\" -- \"" << t.nodes[j].to_string() << "\";\n";
  os << "}\n";
}

inline ordered_json string_json(const pullback_string& s) {
  ordered_json elems = ordered_json::array();
  for (const auto& e : s.elements) elems.push_back(e.to_string());
  return ordered_json{{"source", s.source.to_string()}, {"elements", elems}};
}

inline ordered_json ids_json(const std::vector<pullback_id>& ids) {
  ordered_json arr = ordered_json::array();
  for (const auto& e : ids) arr.push_back(e.to_string());
  return arr;
}

inline ordered_json plan_json(const construction_plan& plan) {
  return ordered_json{{"u_word", plan.u_word},
                      {"v_word", plan.v_word},
                      {"k", plan.k},
                      {"l", plan.l},
                      {"w", plan.w},
                      {"q", plan.q},
                      {"m", plan.m},
                      {"F", ids_json(plan.f)},
                      {"L", plan.last.to_string()},
                      {"hat_F_u", ids_json(plan.hat_f_u)},
                      {"F_u", ids_json(plan.f_u)},
                      {"hat_F_v", ids_json(plan.hat_f_v)},
                      {"F_v", ids_json(plan.f_v)},
                      {"n", plan.n},
                      {"assumption_flag", plan.assumption_flag}};
}

inline ordered_json ray_json(const ray_trace& r) {
  ordered_json j{{"angle", angle_json(r.external_angle)},
                 {"status", ray_status_name(r.status)},
                 {"depth_reached", r.depth_reached},
                 {"final_gap", r.final_gap}};
  if (r.status == ray_status::diverged) j["failed_level"] = r.failed_level;
  j["landing"] = r.landing_estimate ? complex_json(*r.landing_estimate) : ordered_json(nullptr);
  j["points"] = points_json(r.points);
  return j;
}

inline ordered_json orbit_json(const orbit_cloud& cloud) {
  return ordered_json{{"origin", cloud.origin},
                      {"count", cloud.points.size()},
                      {"points", points_json(cloud.points)}};
}

inline ordered_json periodic_points_json(const periodic_point_set& set) {
  ordered_json pts = ordered_json::array();
  for (const auto& p : set.points)
    pts.push_back(ordered_json{{"z", complex_json(p.z)},
                               {"multiplier", complex_json(p.multiplier)},
                               {"residual", p.residual}});
  ordered_json j{{"period", set.period},
                 {"expected", set.expected},
                 {"found", set.points.size()},
                 {"complete", set.complete}};
  if (!set.complete)
    j["warning"] = "IncompleteRootSet: found " + std::to_string(set.points.size()) + " of " +
                   std::to_string(set.expected) + " roots";
  j["points"] = pts;
  return j;
}

inline ordered_json make_report(const std::string& command, ordered_json payload,
                                double elapsed_ms) {
  return ordered_json{{"schema_version", "1.0.0"},
                      {"command", command},
                      {"payload", std::move(payload)},
                      {"timing", ordered_json{{"elapsed_ms", elapsed_ms}}}};
}

inline ordered_json error_json(const error& e) {
  std::string what = e.what();
  std::string prefix = std::string(e.name()) + ": ";
  std::string detail =
      what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
  return ordered_json{{"error", e.name()}, {"detail", detail}};
}

}  // namespace cremerlab
