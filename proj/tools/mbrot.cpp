// mbrot: rational-ray combinatorics of Multibrot sets from the command line.
//
// Exit codes: 0 success, 1 usage or input error, 2 undecided at the built
// period bound, 3 numerical validation failure.

#include "CLI11.hpp"
#include "multibrot/lamination.hpp"
#include "multibrot/numerics.hpp"
#include "multibrot/queries.hpp"
#include "multibrot/render.hpp"
#include "multibrot/symbolic.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace mb = multibrot;

namespace {

struct Config {
  int degree = 2;
  int max_period = 8;
  int max_preperiod = 3;
  std::string cache;  // explicit cache file; empty consults MBROT_CACHE
  double tol = 1e-2;
  std::string format = "text";

  bool machine() const { return format == "machine"; }

  std::string cache_path() const {
    if (!cache.empty()) return cache;
    const char* dir = std::getenv("MBROT_CACHE");
    if (!dir || !*dir) return {};
    return std::string(dir) + "/mblam-d" + std::to_string(degree) + "-p" +
           std::to_string(max_period) + "-q" + std::to_string(max_preperiod) +
           ".lam";
  }
};

int exit_undecided(const Config& cfg) {
  std::cout << (cfg.machine() ? "result=undecided bound=" +
                                    std::to_string(cfg.max_period)
                              : "undecided (period bound " +
                                    std::to_string(cfg.max_period) + ")")
            << "\n";
  return 2;
}

mb::Lamination load_or_build(const Config& cfg) {
  std::string path = cfg.cache_path();
  if (!path.empty() && std::filesystem::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      mb::Lamination lam = mb::Lamination::deserialize(ss.str());
      if (lam.degree() == cfg.degree && lam.max_period() == cfg.max_period &&
          lam.max_preperiod() == cfg.max_preperiod)
        return lam;
      std::cerr << "cache " << path << " was built with other parameters; "
                << "rebuilding in memory\n";
    } catch (const std::exception& e) {
      std::cerr << "cache " << path << " unreadable (" << e.what()
                << "); rebuilding\n";
    }
  }
  mb::Lamination lam = mb::Lamination::build_periodic(cfg.degree, cfg.max_period);
  if (cfg.max_preperiod > 0)
    lam.add_preperiodic(cfg.max_preperiod, cfg.max_period);
  for (const auto& w : lam.warnings()) std::cerr << "warning: " << w << "\n";
  return lam;
}

std::string join_angles(const std::vector<mb::Angle>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].str();
  }
  return out;
}

std::string describe_node(const mb::Lamination& lam, mb::NodeRef ref,
                          bool machine) {
  if (ref.kind == mb::NodeRef::kComponent) {
    const auto& c = lam.component(ref);
    if (machine) {
      std::string out = "kind=leaf id=" + c.id + " lower=" + c.root.lower.str() +
                        " upper=" + c.root.upper.str() +
                        " n=" + std::to_string(c.period);
      if (!c.coroots.empty()) out += " coroots=" + join_angles(c.coroots);
      return out;
    }
    std::string out = "leaf " + c.root.lower.str() + " " + c.root.upper.str() +
                      " n=" + std::to_string(c.period);
    if (!c.coroots.empty()) out += " coroots=" + join_angles(c.coroots);
    return out;
  }
  const auto& m = lam.misiurewicz(ref);
  if (machine)
    return "kind=misiu id=" + m.id + " l=" + std::to_string(m.preperiod) +
           " n=" + std::to_string(m.period) + " angles=" + join_angles(m.angles) +
           " zerogap=" + std::to_string(m.zero_gap);
  return "misiu " + m.id + " l=" + std::to_string(m.preperiod) +
         " n=" + std::to_string(m.period) + " angles=" + join_angles(m.angles) +
         " zerogap=" + std::to_string(m.zero_gap);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int run_angle_info(const Config& cfg, const std::string& text) {
  mb::Angle a = mb::Angle::parse(text);
  mb::AngleClass cls = mb::classify(a, cfg.degree);
  std::string kneading = "-";
  if (!a.is_endpoint())
    kneading = mb::kneading_sequence(a, cfg.degree).str();
  mb::Lamination lam = load_or_build(cfg);
  auto addr = mb::internal_address(a, lam);
  auto angled = mb::angled_internal_address(a, lam);
  if (cfg.machine()) {
    std::cout << "angle=" << a.str() << " l=" << cls.preperiod
              << " n=" << cls.period << " kneading=" << kneading
              << " address=" << addr.str() << " angled=" << angled.str()
              << " complete=" << (addr.complete ? 1 : 0) << "\n";
    return 0;
  }
  std::cout << "angle " << a.str() << "\n";
  std::cout << "class l=" << cls.preperiod << " n=" << cls.period << "\n";
  std::cout << "kneading " << kneading << "\n";
  std::cout << "address " << addr.str() << "\n";
  std::cout << "angled " << angled.str() << "\n";
  return 0;
}

int run_pair(const Config& cfg, const std::string& text) {
  mb::Angle a = mb::Angle::parse(text);
  mb::Lamination lam = load_or_build(cfg);
  auto ref = lam.node_of(a);
  if (!ref) return exit_undecided(cfg);
  std::cout << describe_node(lam, *ref, cfg.machine()) << "\n";
  return 0;
}

int run_wake(const Config& cfg, const std::string& ta, const std::string& tb) {
  mb::Angle a = mb::Angle::parse(ta);
  mb::Angle b = mb::Angle::parse(tb);
  mb::Lamination lam = load_or_build(cfg);
  auto ref = lam.node_of(a);
  if (!ref) return exit_undecided(cfg);
  bool inside = mb::in_wake(lam, *ref, b);
  if (cfg.machine())
    std::cout << "node=" << lam.id_of(*ref) << " inwake=" << (inside ? 1 : 0)
              << "\n";
  else
    std::cout << (inside ? "true" : "false") << "\n";
  return 0;
}

int run_branch(const Config& cfg, const std::string& ta, const std::string& tb) {
  mb::Lamination lam = load_or_build(cfg);
  auto res = mb::branch_point(lam, mb::Angle::parse(ta), mb::Angle::parse(tb));
  if (res.kind == mb::BranchResult::kUndecided) return exit_undecided(cfg);
  if (cfg.machine())
    std::cout << "result=" << res.str(lam) << "\n";
  else
    std::cout << res.str(lam) << "\n";
  return 0;
}

int run_separate(const Config& cfg, const std::string& ta,
                 const std::string& tb) {
  mb::Lamination lam = load_or_build(cfg);
  auto res = mb::separate(lam, mb::Angle::parse(ta), mb::Angle::parse(tb));
  if (res.kind == mb::SeparationResult::kUndecided) return exit_undecided(cfg);
  if (cfg.machine())
    std::cout << "result=" << res.str(lam) << "\n";
  else
    std::cout << res.str(lam) << "\n";
  return 0;
}

int run_class(const Config& cfg, const std::string& ta, const std::string& tb) {
  mb::Lamination lam = load_or_build(cfg);
  auto res = mb::same_comb_class(lam, mb::Angle::parse(ta), mb::Angle::parse(tb));
  if (res == mb::Ternary::kUndecided) return exit_undecided(cfg);
  bool same = res == mb::Ternary::kTrue;
  if (cfg.machine())
    std::cout << "same_class=" << (same ? 1 : 0) << "\n";
  else
    std::cout << (same ? "true" : "false") << "\n";
  return 0;
}

int run_misiu(const Config& cfg, const std::string& text) {
  mb::Angle a = mb::Angle::parse(text);
  mb::Lamination lam = load_or_build(cfg);
  auto ref = lam.node_of(a);
  if (!ref) return exit_undecided(cfg);
  if (ref->kind != mb::NodeRef::kMisiurewicz)
    throw std::invalid_argument(a.str() + " is a periodic ray, not a Misiurewicz ray");
  std::cout << describe_node(lam, *ref, cfg.machine()) << "\n";
  bool missing = false;
  auto gaps = mb::misiurewicz_subwakes(lam, *ref);
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const auto& g = gaps[i];
    std::cout << "gap " << i << " " << g.lower.str() << " " << g.upper.str();
    if (g.zero_wake) std::cout << " zero";
    if (g.witness)
      std::cout << " witness " << g.witness->lower.str() << " "
                << g.witness->upper.str();
    else {
      std::cout << " witness none";
      missing = true;
    }
    std::cout << "\n";
  }
  if (missing) return exit_undecided(cfg);
  return 0;
}

int run_approx(const Config& cfg, const std::string& ta, const std::string& tb,
               int count) {
  mb::Lamination lam = load_or_build(cfg);
  mb::Leaf root{mb::Angle::parse(ta), mb::Angle::parse(tb), 1};
  auto pairs = mb::approximating_pairs(lam, root, count);
  for (const auto& p : pairs)
    std::cout << "pair " << p.lower.str() << " " << p.upper.str()
              << " n=" << p.period << "\n";
  return 0;
}

int run_trace(const Config& cfg, const std::string& text, double tmin,
              int depth) {
  mb::TraceOptions opts;
  if (tmin > 0) opts.t_min = tmin;
  if (depth > 0) opts.depth = depth;
  auto ray = mb::trace_parameter_ray(cfg.degree, mb::Angle::parse(text), opts);
  for (std::size_t i = 0; i < ray.points.size(); ++i)
    std::cout << "t=" << fmt_double(ray.potentials[i]) << " c="
              << fmt_double(ray.points[i].real()) << " "
              << fmt_double(ray.points[i].imag()) << "\n";
  if (ray.stalled) std::cout << "stalled\n";
  std::cout << "land=" << fmt_double(ray.landing.real()) << " "
            << fmt_double(ray.landing.imag())
            << " resid=" << fmt_double(ray.residual) << "\n";
  return 0;
}

int run_validate(const Config& cfg, int period) {
  mb::Lamination lam = load_or_build(cfg);
  if (period <= 0) period = std::min(6, cfg.max_period);
  bool all_ok = true;
  double worst_pair = 0, worst_resid = 0;
  int checked = 0;
  for (const auto& c : lam.components()) {
    if (c.period > period || c.root.lower.is_zero()) continue;
    auto v = mb::validate_leaf({c.root.lower, c.root.upper}, cfg.degree, cfg.tol);
    ++checked;
    worst_pair = std::max(worst_pair, v.max_pairwise);
    worst_resid = std::max(worst_resid, v.max_residual);
    std::cout << "leaf " << c.root.lower.str() << " " << c.root.upper.str()
              << " n=" << c.period << " "
              << (v.ok ? "ok" : (v.inconclusive ? "inconclusive" : "fail"))
              << " dist=" << fmt_double(v.max_pairwise)
              << " resid=" << fmt_double(v.max_residual) << "\n";
    if (!v.ok) all_ok = false;
  }
  std::cout << "validated " << checked << " leaves max_dist="
            << fmt_double(worst_pair) << " max_resid=" << fmt_double(worst_resid)
            << (all_ok ? " ok" : " FAIL") << "\n";
  return all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"rational-ray combinatorics of Multibrot sets"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--degree", cfg.degree, "polynomial degree d >= 2")
      ->check(CLI::Range(2, 64));
  app.add_option("--max-period", cfg.max_period, "component period bound")
      ->check(CLI::Range(1, 30));
  app.add_option("--max-preperiod", cfg.max_preperiod,
                 "Misiurewicz preperiod bound (0 disables)")
      ->check(CLI::Range(0, 20));
  app.add_option("--cache", cfg.cache, "lamination cache file");
  app.add_option("--tol", cfg.tol, "numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "text|machine")
      ->check(CLI::IsMember({"text", "machine"}));

  std::string arg_a, arg_b;
  int arg_count = 3, arg_period = 0, arg_depth = 0, arg_size = 0;
  double arg_tmin = 0;
  std::vector<double> arg_viewport;
  std::string arg_out, arg_rays;
  bool arg_ppm = false, arg_straight = false;

  auto* angle_cmd = app.add_subcommand("angle", "angle diagnostics");
  auto* info = angle_cmd->add_subcommand("info", "classification, kneading, address");
  info->add_option("angle", arg_a)->required();

  auto* lam_cmd = app.add_subcommand("lam", "lamination cache");
  auto* lam_build = lam_cmd->add_subcommand("build", "build and cache");
  auto* lam_show = lam_cmd->add_subcommand("show", "print the lamination file");

  auto* pair_cmd = app.add_subcommand("pair", "landing-group lookup");
  pair_cmd->add_option("angle", arg_a)->required();

  auto* wake_cmd = app.add_subcommand("wake", "is the second angle inside the first angle's wake");
  wake_cmd->add_option("angle", arg_a)->required();
  wake_cmd->add_option("theta", arg_b)->required();

  auto* branch_cmd = app.add_subcommand("branch", "branch structure of two angles");
  branch_cmd->add_option("a", arg_a)->required();
  branch_cmd->add_option("b", arg_b)->required();

  auto* sep_cmd = app.add_subcommand("separate", "separation witness");
  sep_cmd->add_option("a", arg_a)->required();
  sep_cmd->add_option("b", arg_b)->required();

  auto* class_cmd = app.add_subcommand("class", "same combinatorial class");
  class_cmd->add_option("a", arg_a)->required();
  class_cmd->add_option("b", arg_b)->required();

  auto* misiu_cmd = app.add_subcommand("misiu", "Misiurewicz group, subwakes, witnesses");
  misiu_cmd->add_option("angle", arg_a)->required();

  auto* approx_cmd = app.add_subcommand("approx", "approximating ray pairs of a primitive root");
  approx_cmd->add_option("lower", arg_a)->required();
  approx_cmd->add_option("upper", arg_b)->required();
  approx_cmd->add_option("--count", arg_count, "pairs to report");

  auto* trace_cmd = app.add_subcommand("trace", "Newton continuation of a parameter ray");
  trace_cmd->add_option("angle", arg_a)->required();
  trace_cmd->add_option("--tmin", arg_tmin, "final potential");
  trace_cmd->add_option("--depth", arg_depth, "potential level cap");

  auto* validate_cmd = app.add_subcommand("validate", "numerically validate root leaves");
  validate_cmd->add_option("--period", arg_period, "validate leaves up to this period");

  auto* render_cmd = app.add_subcommand("render", "figure output");
  auto* render_lam = render_cmd->add_subcommand("lam", "pinched-disk SVG");
  auto* render_set = render_cmd->add_subcommand("set", "escape-time raster");
  for (auto* r : {render_lam, render_set}) {
    r->add_option("--out", arg_out, "output path");
    r->add_option("--size", arg_size, "pixel width");
  }
  render_set->add_option("--viewport", arg_viewport, "xmin xmax ymin ymax")
      ->expected(4);
  render_set->add_option("--rays", arg_rays, "overlay ray angles, comma separated");
  render_set->add_flag("--ppm", arg_ppm, "write PPM instead of PNG");
  render_lam->add_flag("--straight", arg_straight, "straight chords instead of geodesics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (info->parsed()) return run_angle_info(cfg, arg_a);
    if (lam_build->parsed()) {
      mb::Lamination lam = mb::Lamination::build_periodic(cfg.degree, cfg.max_period);
      if (cfg.max_preperiod > 0) lam.add_preperiodic(cfg.max_preperiod, cfg.max_period);
      for (const auto& w : lam.warnings()) std::cerr << "warning: " << w << "\n";
      std::string path = cfg.cache_path();
      if (path.empty())
        throw std::invalid_argument("lam build needs --cache or MBROT_CACHE");
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + path);
      out << lam.serialize();
      std::cout << "built d=" << cfg.degree << " maxper=" << cfg.max_period
                << " maxpre=" << cfg.max_preperiod << " comps="
                << lam.components().size() << " misius="
                << lam.misiurewicz_nodes().size() << " -> " << path << "\n";
      return 0;
    }
    if (lam_show->parsed()) {
      std::cout << load_or_build(cfg).serialize();
      return 0;
    }
    if (pair_cmd->parsed()) return run_pair(cfg, arg_a);
    if (wake_cmd->parsed()) return run_wake(cfg, arg_a, arg_b);
    if (branch_cmd->parsed()) return run_branch(cfg, arg_a, arg_b);
    if (sep_cmd->parsed()) return run_separate(cfg, arg_a, arg_b);
    if (class_cmd->parsed()) return run_class(cfg, arg_a, arg_b);
    if (misiu_cmd->parsed()) return run_misiu(cfg, arg_a);
    if (approx_cmd->parsed()) return run_approx(cfg, arg_a, arg_b, arg_count);
    if (trace_cmd->parsed()) return run_trace(cfg, arg_a, arg_tmin, arg_depth);
    if (validate_cmd->parsed()) return run_validate(cfg, arg_period);
    if (render_lam->parsed()) {
      mb::RenderOptions opts;
      if (arg_size > 0) opts.size = arg_size;
      opts.straight_chords = arg_straight;
      std::string svg = mb::lamination_svg(load_or_build(cfg), opts);
      std::string path = arg_out.empty() ? "lam.svg" : arg_out;
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + path);
      out << svg;
      std::cout << "wrote " << path << " (" << svg.size() << " bytes)\n";
      return 0;
    }
    if (render_set->parsed()) {
      mb::RenderOptions opts;
      if (arg_size > 0) opts.size = arg_size;
      if (cfg.degree > 2) opts.viewport = mb::Viewport{-1.6, 1.6, -1.6, 1.6};
      if (!arg_viewport.empty())
        opts.viewport = mb::Viewport{arg_viewport[0], arg_viewport[1],
                                     arg_viewport[2], arg_viewport[3]};
      if (!arg_rays.empty()) {
        std::stringstream ss(arg_rays);
        std::string part;
        while (std::getline(ss, part, ','))
          opts.overlay_rays.push_back(mb::Angle::parse(part));
      }
      auto img = mb::set_image(cfg.degree, opts);
      std::string path = arg_out.empty() ? (arg_ppm ? "set.ppm" : "set.png") : arg_out;
      std::string bytes = arg_ppm ? mb::encode_ppm(img) : mb::encode_png(img);
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + path);
      out << bytes;
      bool partial = img.metadata.at("rays").find("stalled") != std::string::npos;
      std::cout << "wrote " << path << " (" << bytes.size() << " bytes)"
                << (partial ? " [partial rays]" : "") << "\n";
      return 0;
    }
  } catch (const mb::BoundExceeded& e) {
    std::cout << "undecided: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
