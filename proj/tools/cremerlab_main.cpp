// Command-line front end. Every subcommand prints a report envelope
// {schema_version, command, threads, payload, timing} on stdout; file
// outputs (--out) contain only the payload or the binary artifact, so they
// are byte-identical across runs. Operation failures print a JSON error
// object on stderr and exit 2; usage errors exit 1.

#include <chrono>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cremerlab/circle.hpp"
#include "cremerlab/continued_fraction.hpp"
#include "cremerlab/itinerary.hpp"
#include "cremerlab/json_io.hpp"
#include "cremerlab/orbit.hpp"
#include "cremerlab/periodic.hpp"
#include "cremerlab/pullback_tree.hpp"
#include "cremerlab/quadratic.hpp"
#include "cremerlab/ray.hpp"
#include "cremerlab/render.hpp"
#include "cremerlab/strings.hpp"

namespace {

using cremerlab::angle;
using cremerlab::continued_fraction;
using cremerlab::ordered_json;
using cremerlab::quadratic_map;

continued_fraction parse_cf_list(const std::string& csv) {
  std::vector<std::uint64_t> a;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      cremerlab::fail(cremerlab::errc::invalid_argument, "bad partial quotient \"" + item + "\"");
    }
    if (pos != item.size())
      cremerlab::fail(cremerlab::errc::invalid_argument, "bad partial quotient \"" + item + "\"");
    a.push_back(v);
  }
  if (a.empty())
    cremerlab::fail(cremerlab::errc::invalid_argument, "empty continued-fraction list");
  return continued_fraction(a);
}

// Rotation parameter sources, one per map-accepting subcommand. --alpha-cf
// holds the repeating block of an infinite continued fraction; --alpha holds
// an exact rational "p/q" or a decimal.
struct map_options {
  std::string alpha_cf;
  std::string alpha;

  void attach(CLI::App* cmd) {
    auto* cf = cmd->add_option("--alpha-cf", alpha_cf,
                               "repeating continued-fraction block, e.g. 1,1 (golden mean)");
    auto* al = cmd->add_option("--alpha", alpha, "rotation parameter as p/q or decimal");
    cf->excludes(al);
  }

  quadratic_map make_map() const {
    if (!alpha.empty()) {
      if (alpha.find('/') != std::string::npos)
        return quadratic_map::from_angle(angle::parse(alpha));
      try {
        std::size_t pos = 0;
        double v = std::stod(alpha, &pos);
        if (pos != alpha.size()) throw std::invalid_argument(alpha);
        return quadratic_map::from_alpha(v);
      } catch (const std::exception&) {
        cremerlab::fail(cremerlab::errc::invalid_argument,
                        "--alpha expects p/q or a decimal, got \"" + alpha + "\"");
      }
    }
    std::string block = alpha_cf.empty() ? "1" : alpha_cf;
    return quadratic_map::from_cf(continued_fraction::repeating(parse_cf_list(block).quotients));
  }

  ordered_json describe() const {
    ordered_json j;
    if (!alpha.empty()) {
      j["alpha"] = alpha;
    } else {
      j["alpha_cf_block"] = alpha_cf.empty() ? "1" : alpha_cf;
    }
    return j;
  }
};

std::uint64_t brute_force_budget(std::uint64_t flag_value) {
  if (flag_value != 0) return flag_value;
  if (const char* env = std::getenv("CREMER_LAB_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      cremerlab::fail(cremerlab::errc::invalid_argument,
                      std::string("CREMER_LAB_BUDGET is not a number: ") + env);
    }
  }
  return cremerlab::default_cycle_budget;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) cremerlab::fail(cremerlab::errc::invalid_argument, "cannot open " + path);
  os << text;
}

void write_payload_file(const std::string& path, const ordered_json& payload) {
  write_text_file(path, payload.dump(2) + "\n");
}

ordered_json map_json(const quadratic_map& map) {
  return ordered_json{{"alpha", map.alpha},
                      {"lambda", cremerlab::complex_json(map.lambda)},
                      {"critical_point", cremerlab::complex_json(map.critical_point())}};
}

ordered_json ray_summary_json(const cremerlab::ray_trace& ray) {
  ordered_json j = cremerlab::ray_json(ray);
  j.erase("points");
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pullback combinatorics and planar dynamics of quadratic Siegel maps"};
  app.require_subcommand(1);

  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--threads", threads, "worker threads for rendering")->capture_default_str();

  // render-julia
  auto* cmd_render = app.add_subcommand("render-julia", "escape-time image of the Julia set");
  map_options render_map;
  render_map.attach(cmd_render);
  unsigned rj_width = 512, rj_height = 512, rj_max_iter = 1000;
  double rj_center_re = 0.0, rj_center_im = 0.0, rj_plane_width = 4.0, rj_escape = 3.0;
  std::string rj_out = "julia.pgm";
  cmd_render->add_option("--width", rj_width)->capture_default_str();
  cmd_render->add_option("--height", rj_height)->capture_default_str();
  cmd_render->add_option("--max-iter", rj_max_iter)->capture_default_str();
  cmd_render->add_option("--center-re", rj_center_re)->capture_default_str();
  cmd_render->add_option("--center-im", rj_center_im)->capture_default_str();
  cmd_render->add_option("--plane-width", rj_plane_width, "plane units spanned by the image width")
      ->capture_default_str();
  cmd_render->add_option("--escape-radius", rj_escape)->capture_default_str();
  cmd_render->add_option("--out", rj_out, "output PGM path")->capture_default_str();

  // trace-ray
  auto* cmd_ray = app.add_subcommand("trace-ray", "external ray by dyadic Newton continuation");
  map_options ray_map;
  ray_map.attach(cmd_ray);
  std::string tr_angle;
  unsigned tr_depth = 40, tr_steps = 4;
  double tr_radius = 1e6, tr_tol = 1e-9;
  std::string tr_out;
  cmd_ray->add_option("--angle", tr_angle, "external angle p/q")->required();
  cmd_ray->add_option("--depth", tr_depth)->capture_default_str();
  cmd_ray->add_option("--steps-per-level", tr_steps)->capture_default_str();
  cmd_ray->add_option("--start-radius", tr_radius)->capture_default_str();
  cmd_ray->add_option("--landing-tol", tr_tol)->capture_default_str();
  cmd_ray->add_option("--out", tr_out, "write the full trace payload to this JSON file");

  // rotation-set
  auto* cmd_rot = app.add_subcommand("rotation-set", "rotational cycle of the doubling map");
  unsigned rot_p = 1, rot_q = 2;
  std::uint64_t rot_budget = 0;
  cmd_rot->add_option("--p", rot_p)->required();
  cmd_rot->add_option("--q", rot_q)->required();
  cmd_rot->add_option("--budget", rot_budget, "candidate budget (default from CREMER_LAB_BUDGET)");

  // cantor-leaf
  auto* cmd_leaf = app.add_subcommand("cantor-leaf", "critical-leaf estimate from a convergent");
  std::string cl_cf = "1";
  unsigned cl_depth = 7;
  std::uint64_t cl_budget = 0;
  cmd_leaf->add_option("--alpha-cf", cl_cf, "repeating continued-fraction block")
      ->capture_default_str();
  cmd_leaf->add_option("--depth", cl_depth, "convergent index")->capture_default_str();
  cmd_leaf->add_option("--budget", cl_budget);

  // pullback-tree
  auto* cmd_tree = app.add_subcommand("pullback-tree", "order-n tree of pullback itineraries");
  unsigned pt_n = 3, pt_order_budget = cremerlab::default_tree_order_budget;
  std::string pt_format = "json", pt_out;
  cmd_tree->add_option("--n", pt_n)->required();
  cmd_tree->add_option("--order-budget", pt_order_budget)->capture_default_str();
  cmd_tree->add_option("--format", pt_format, "json or graph")
      ->check(CLI::IsMember({"json", "graph"}))
      ->capture_default_str();
  cmd_tree->add_option("--out", pt_out, "write the tree to this file");

  // string
  auto* cmd_string = app.add_subcommand("string", "pullback string of a periodic itinerary");
  std::string st_word;
  unsigned st_count = 3;
  cmd_string->add_option("--word", st_word, "minimal periodic word")->required();
  cmd_string->add_option("--count", st_count)->capture_default_str();

  // plan
  auto* cmd_plan = app.add_subcommand("plan", "two-string construction plan");
  std::string pl_u, pl_v;
  cmd_plan->add_option("--u", pl_u, "first periodic word")->required();
  cmd_plan->add_option("--v", pl_v, "second periodic word")->required();

  // separation
  auto* cmd_sep = app.add_subcommand("separation", "separation time of two angles by a leaf");
  std::string sp_theta, sp_theta_prime, sp_cf = "1";
  unsigned sp_depth = 7, sp_cap = 256;
  std::uint64_t sp_budget = 0;
  cmd_sep->add_option("--theta", sp_theta, "first angle p/q")->required();
  cmd_sep->add_option("--theta-prime", sp_theta_prime, "second angle p/q")->required();
  cmd_sep->add_option("--alpha-cf", sp_cf, "leaf rotation number block")->capture_default_str();
  cmd_sep->add_option("--leaf-depth", sp_depth, "convergent index for the leaf")
      ->capture_default_str();
  cmd_sep->add_option("--cap", sp_cap)->capture_default_str();
  cmd_sep->add_option("--budget", sp_budget);

  // orbit
  auto* cmd_orbit = app.add_subcommand("orbit", "forward orbit of the critical point");
  map_options orbit_map;
  orbit_map.attach(cmd_orbit);
  unsigned ob_count = 1000;
  double ob_escape = 3.0;
  std::string ob_out;
  cmd_orbit->add_option("--count", ob_count)->capture_default_str();
  cmd_orbit->add_option("--escape-radius", ob_escape)->capture_default_str();
  cmd_orbit->add_option("--out", ob_out, "write the orbit payload to this JSON file");

  // semidistance
  auto* cmd_semi = app.add_subcommand("semidistance",
                                      "one-sided Hausdorff gap between two orbit samples");
  map_options semi_map;
  semi_map.attach(cmd_semi);
  unsigned sd_count_a = 1000, sd_count_b = 10000;
  cmd_semi->add_option("--count-a", sd_count_a)->capture_default_str();
  cmd_semi->add_option("--count-b", sd_count_b)->capture_default_str();

  // figure1
  auto* cmd_fig1 = app.add_subcommand(
      "figure1", "Julia render with the two leaf-angle rays overlaid");
  std::string f1_cf = "1", f1_prefix = "figure1";
  unsigned f1_depth = 7, f1_width = 512, f1_height = 512, f1_max_iter = 2000, f1_ray_depth = 40;
  double f1_plane_width = 3.2;
  std::uint64_t f1_budget = 0;
  cmd_fig1->add_option("--alpha-cf", f1_cf)->capture_default_str();
  cmd_fig1->add_option("--leaf-depth", f1_depth)->capture_default_str();
  cmd_fig1->add_option("--width", f1_width)->capture_default_str();
  cmd_fig1->add_option("--height", f1_height)->capture_default_str();
  cmd_fig1->add_option("--max-iter", f1_max_iter)->capture_default_str();
  cmd_fig1->add_option("--ray-depth", f1_ray_depth)->capture_default_str();
  cmd_fig1->add_option("--plane-width", f1_plane_width)->capture_default_str();
  cmd_fig1->add_option("--budget", f1_budget);
  cmd_fig1->add_option("--out", f1_prefix, "output prefix for .pgm and .json")
      ->capture_default_str();

  // figure2-layout
  auto* cmd_fig2 = app.add_subcommand("figure2-layout", "labeled pullback tree in graph form");
  unsigned f2_n = 5;
  std::string f2_out = "figure2.dot";
  cmd_fig2->add_option("--n", f2_n)->capture_default_str();
  cmd_fig2->add_option("--out", f2_out)->capture_default_str();

  // figure3-report
  auto* cmd_fig3 = app.add_subcommand(
      "figure3-report", "construction plan with rays toward the two periodic points");
  std::string f3_out = "figure3.json";
  unsigned f3_depth = 7, f3_ray_depth = 64;
  std::uint64_t f3_budget = 0;
  cmd_fig3->add_option("--leaf-depth", f3_depth)->capture_default_str();
  cmd_fig3->add_option("--ray-depth", f3_ray_depth)->capture_default_str();
  cmd_fig3->add_option("--budget", f3_budget);
  cmd_fig3->add_option("--out", f3_out)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 1;
  }

  std::string command;
  for (int i = 0; i < argc; ++i) {
    if (i) command += ' ';
    command += argv[i];
  }

  try {
    auto t0 = std::chrono::steady_clock::now();
    ordered_json payload;

    if (cmd_render->parsed()) {
      quadratic_map map = render_map.make_map();
      cremerlab::viewport view{{rj_center_re, rj_center_im}, rj_plane_width};
      cremerlab::image img =
          cremerlab::render_julia(map, rj_width, rj_height, view, rj_max_iter, rj_escape, threads);
      payload = ordered_json{{"map", map_json(map)},
                             {"parameters", render_map.describe()},
                             {"width", rj_width},
                             {"height", rj_height},
                             {"max_iter", rj_max_iter},
                             {"escape_radius", rj_escape},
                             {"out", rj_out}};
      if (img.empty()) {
        payload["warning"] = "degenerate viewport: empty image, nothing written";
        std::cerr << ordered_json{{"warning", payload["warning"]}}.dump() << "\n";
      } else {
        std::ostringstream pgm;
        cremerlab::write_pgm(img, pgm);
        write_text_file(rj_out, pgm.str());
        std::size_t interior = 0;
        for (auto v : img.pixels)
          if (v == 0) ++interior;
        payload["interior_pixels"] = interior;
      }
    } else if (cmd_ray->parsed()) {
      quadratic_map map = ray_map.make_map();
      cremerlab::ray_trace ray =
          cremerlab::trace_ray(map, angle::parse(tr_angle), tr_depth, tr_steps, tr_radius, tr_tol);
      payload = cremerlab::ray_json(ray);
      if (!tr_out.empty()) write_payload_file(tr_out, payload);
    } else if (cmd_rot->parsed()) {
      payload = cremerlab::rotation_set_json(
          cremerlab::rotational_cycle(rot_p, rot_q, brute_force_budget(rot_budget)));
    } else if (cmd_leaf->parsed()) {
      auto r = cremerlab::cantor_leaf(continued_fraction::repeating(parse_cf_list(cl_cf).quotients),
                                      cl_depth, brute_force_budget(cl_budget));
      payload = cremerlab::cantor_leaf_json(r);
    } else if (cmd_tree->parsed()) {
      cremerlab::pullback_tree tree = cremerlab::build_tree(pt_n, pt_order_budget);
      if (pt_format == "graph") {
        std::ostringstream gos;
        cremerlab::write_tree_graph(tree, gos);
        payload = ordered_json{{"n", tree.n},
                               {"format", "graph"},
                               {"edges", tree.edges.size()},
                               {"graph", gos.str()}};
        if (!pt_out.empty()) write_text_file(pt_out, gos.str());
      } else {
        payload = cremerlab::tree_json(tree);
        if (!pt_out.empty()) write_payload_file(pt_out, payload);
      }
    } else if (cmd_string->parsed()) {
      payload = cremerlab::string_json(
          cremerlab::string_of(cremerlab::itinerary::periodic({}, st_word), st_count));
    } else if (cmd_plan->parsed()) {
      payload = cremerlab::plan_json(cremerlab::plan_construction(pl_u, pl_v));
    } else if (cmd_sep->parsed()) {
      auto leaf_result =
          cremerlab::cantor_leaf(continued_fraction::repeating(parse_cf_list(sp_cf).quotients),
                                 sp_depth, brute_force_budget(sp_budget));
      auto m = cremerlab::separation_time(angle::parse(sp_theta), angle::parse(sp_theta_prime),
                                          leaf_result.leaf, sp_cap);
      payload = ordered_json{{"theta", sp_theta},
                             {"theta_prime", sp_theta_prime},
                             {"leaf", cremerlab::leaf_json(leaf_result.leaf)},
                             {"cap", sp_cap},
                             {"separated", m.has_value()}};
      payload["separation_time"] = m ? ordered_json(*m) : ordered_json(nullptr);
    } else if (cmd_orbit->parsed()) {
      quadratic_map map = orbit_map.make_map();
      cremerlab::orbit_cloud cloud = cremerlab::critical_orbit(map, ob_count, ob_escape);
      payload = cremerlab::orbit_json(cloud);
      payload["map"] = map_json(map);
      if (!ob_out.empty()) write_payload_file(ob_out, payload);
    } else if (cmd_semi->parsed()) {
      quadratic_map map = semi_map.make_map();
      auto a = cremerlab::critical_orbit(map, sd_count_a);
      auto b = cremerlab::critical_orbit(map, sd_count_b);
      payload = ordered_json{{"map", map_json(map)},
                             {"count_a", sd_count_a},
                             {"count_b", sd_count_b},
                             {"semidistance", cremerlab::semidistance(a, b)}};
    } else if (cmd_fig1->parsed()) {
      auto cf = continued_fraction::repeating(parse_cf_list(f1_cf).quotients);
      auto leaf_result = cremerlab::cantor_leaf(cf, f1_depth, brute_force_budget(f1_budget));
      quadratic_map map = quadratic_map::from_cf(cf);
      angle a1 = leaf_result.leaf.alpha;
      angle a2 = a1.antipode();
      auto ray1 = cremerlab::trace_ray(map, a1, f1_ray_depth);
      auto ray2 = cremerlab::trace_ray(map, a2, f1_ray_depth);

      cremerlab::viewport view{{0.0, 0.0}, f1_plane_width};
      cremerlab::image img =
          cremerlab::render_julia(map, f1_width, f1_height, view, f1_max_iter, 3.0, threads);
      cremerlab::draw_polyline(img, view, ray1.points, 255);
      cremerlab::draw_polyline(img, view, ray2.points, 255);
      std::ostringstream pgm;
      cremerlab::write_pgm(img, pgm);
      write_text_file(f1_prefix + ".pgm", pgm.str());

      auto dist_to_crit = [&](const cremerlab::ray_trace& r) -> ordered_json {
        if (!r.landing_estimate) return nullptr;
        return std::abs(*r.landing_estimate - map.critical_point());
      };
      payload = ordered_json{{"map", map_json(map)},
                             {"leaf", cremerlab::cantor_leaf_json(leaf_result)},
                             {"angles", ordered_json::array({a1.to_string(), a2.to_string()})},
                             {"rays", ordered_json::array({cremerlab::ray_json(ray1),
                                                           cremerlab::ray_json(ray2)})},
                             {"landing_distance_to_critical",
                              ordered_json::array({dist_to_crit(ray1), dist_to_crit(ray2)})},
                             {"render", ordered_json{{"width", f1_width},
                                                     {"height", f1_height},
                                                     {"max_iter", f1_max_iter},
                                                     {"plane_width", f1_plane_width}}}};
      write_payload_file(f1_prefix + ".json", payload);
    } else if (cmd_fig2->parsed()) {
      cremerlab::pullback_tree tree = cremerlab::build_tree(f2_n);
      std::ostringstream gos;
      cremerlab::write_tree_graph(tree, gos);
      write_text_file(f2_out, gos.str());
      payload = ordered_json{{"n", tree.n},
                             {"nodes", tree.nodes.size()},
                             {"edges", tree.edges.size()},
                             {"out", f2_out}};
    } else if (cmd_fig3->parsed()) {
      auto cf = continued_fraction::repeating({1});
      auto leaf_result = cremerlab::cantor_leaf(cf, f3_depth, brute_force_budget(f3_budget));
      quadratic_map map = quadratic_map::from_cf(cf);
      angle gamma_x = cremerlab::find_periodic_angle("011", leaf_result.leaf);
      angle gamma_z = cremerlab::find_periodic_angle("0110111", leaf_result.leaf);
      auto ray_x = cremerlab::trace_ray(map, gamma_x, f3_ray_depth);
      auto ray_z = cremerlab::trace_ray(map, gamma_z, f3_ray_depth);
      auto landing_residual = [&](const cremerlab::ray_trace& r, unsigned n) -> ordered_json {
        if (!r.landing_estimate) return nullptr;
        auto [v, d] = map.iterate_with_derivative(*r.landing_estimate, n);
        return ordered_json{{"period", n},
                            {"residual", std::abs(v - *r.landing_estimate)},
                            {"multiplier_modulus", std::abs(d)}};
      };
      payload = ordered_json{
          {"label", "Siegel-side analogue"},
          {"map", map_json(map)},
          {"plan", cremerlab::plan_json(cremerlab::plan_construction("011", "0110111"))},
          {"ray_angles",
           ordered_json{{"x", gamma_x.to_string()}, {"z", gamma_z.to_string()}}},
          {"rays", ordered_json{{"x", ray_summary_json(ray_x)}, {"z", ray_summary_json(ray_z)}}},
          {"landing_checks", ordered_json{{"x", landing_residual(ray_x, 3)},
                                          {"z", landing_residual(ray_z, 7)}}}};
      write_payload_file(f3_out, payload);
    }

    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    ordered_json report{{"schema_version", "1.0.0"},
                        {"command", command},
                        {"threads", threads},
                        {"payload", std::move(payload)},
                        {"timing", ordered_json{{"elapsed_ms", ms}}}};
    std::cout << report.dump(2) << "\n";
    return 0;
  } catch (const cremerlab::error& e) {
    std::cerr << cremerlab::error_json(e).dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << ordered_json{{"error", "InternalError"}, {"detail", e.what()}}.dump() << "\n";
    return 2;
  }
}
