#include "depthfill/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "depthfill/edges.hpp"
#include "depthfill/evaluation.hpp"
#include "depthfill/netpbm.hpp"
#include "depthfill/pipeline.hpp"

namespace depthfill::cli {
namespace {

/// Thrown for bad flag values; maps to kValidationFailure.
class UsageError : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
  auto fail = [&]() -> UsageError {
    return UsageError("config: bad value '" + text + "' for key '" + key + "'");
  };
  if constexpr (std::is_same_v<T, std::string>) {
    return text;
  } else if constexpr (std::is_same_v<T, bool>) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw fail();
  } else if constexpr (std::is_floating_point_v<T>) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      throw fail();
    }
    if (used != text.size() || !std::isfinite(v)) throw fail();
    return static_cast<T>(v);
  } else {
    T v{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size()) throw fail();
    return v;
  }
}

/// Options of one subcommand that may also be set from a config file. Values
/// given on the command line win over the file; the file wins over defaults.
class Settings {
 public:
  template <typename T>
  CLI::Option* option(CLI::App& app, const std::string& flag, T& target, const std::string& help) {
    CLI::Option* opt = app.add_option(flag, target, help)->capture_default_str();
    register_key(flag, opt, [&target, key = flag.substr(2)](const std::string& v) {
      target = parse_value<T>(key, v);
    });
    return opt;
  }

  CLI::Option* flag(CLI::App& app, const std::string& name, bool& target, const std::string& help) {
    CLI::Option* opt = app.add_flag(name, target, help);
    register_key(name, opt, [&target, key = name.substr(2)](const std::string& v) {
      target = parse_value<bool>(key, v);
    });
    return opt;
  }

  void apply(const std::vector<ConfigEntry>& entries) const {
    for (const auto& [key, value] : entries) {
      const auto it = keys_.find(key);
      if (it == keys_.end()) throw UsageError("config: unknown key '" + key + "'");
      if (it->second.option->count() == 0) it->second.assign(value);
    }
  }

 private:
  struct Key {
    CLI::Option* option;
    std::function<void(const std::string&)> assign;
  };

  void register_key(const std::string& flag, CLI::Option* opt,
                    std::function<void(const std::string&)> assign) {
    keys_.emplace(flag.substr(2), Key{opt, std::move(assign)});
  }

  std::map<std::string, Key> keys_;
};

void load_config(const std::string& path, const Settings& settings) {
  if (path.empty()) return;
  settings.apply(parse_config(read_file(path)));
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

template <typename T>
std::string str(T v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

void validate_flags(const PipelineConfig& cfg) {
  const KernelParams& k = cfg.kernel;
  require(k.sigma_s > 0, "--sigma-s must be > 0 (got " + str(k.sigma_s) + ")");
  require(k.sigma_r_color > 0, "--sigma-r-color must be > 0 (got " + str(k.sigma_r_color) + ")");
  require(k.sigma_r_depth > 0, "--sigma-r-depth must be > 0 (got " + str(k.sigma_r_depth) + ")");
  require(k.sigma_x > 0, "--sigma-x must be > 0 (got " + str(k.sigma_x) + ")");
  require(k.sigma_y > 0, "--sigma-y must be > 0 (got " + str(k.sigma_y) + ")");
  require(k.sigma_x >= k.sigma_y, "--sigma-x (" + str(k.sigma_x) + ") must be >= --sigma-y (" +
                                      str(k.sigma_y) + ")");
  require(k.window_radius >= 1,
          "--window-radius must be >= 1 (got " + str(k.window_radius) + ")");
  require(cfg.edge_threshold > 0,
          "--edge-threshold must be > 0 (got " + str(cfg.edge_threshold) + ")");
  require(cfg.r_edge >= 0, "--r-edge must be >= 0 (got " + str(cfg.r_edge) + ")");
  require(cfg.hole_expand_radius >= 0,
          "--hole-expand-radius must be >= 0 (got " + str(cfg.hole_expand_radius) + ")");
  require(cfg.max_fill_passes >= 1,
          "--max-fill-passes must be >= 1 (got " + str(cfg.max_fill_passes) + ")");
  require(cfg.se.radius >= 1, "--closing-radius must be >= 1 (got " + str(cfg.se.radius) + ")");
  require(cfg.threads >= 0, "--threads must be >= 0 (got " + str(cfg.threads) + ")");
}

struct RestoreArgs {
  std::string depth_path, color_path, out_path, config_path;
  PipelineConfig cfg;
  bool isotropic = false;
};

void add_pipeline_options(CLI::App& app, Settings& s, RestoreArgs& a) {
  KernelParams& k = a.cfg.kernel;
  s.option(app, "--sigma-s", k.sigma_s, "Isotropic spatial sigma (pixels)");
  s.option(app, "--sigma-r-color", k.sigma_r_color, "Guidance range sigma (intensity)");
  s.option(app, "--sigma-r-depth", k.sigma_r_depth, "Depth range sigma (mm)");
  s.option(app, "--sigma-x", k.sigma_x, "Directional sigma along the edge (pixels)");
  s.option(app, "--sigma-y", k.sigma_y, "Directional sigma across the edge (pixels)");
  s.option(app, "--window-radius", k.window_radius, "Filter window radius (pixels)");
  s.option(app, "--edge-threshold", a.cfg.edge_threshold, "Sobel magnitude edge threshold");
  s.option(app, "--r-edge", a.cfg.r_edge, "Edge-region radius (pixels)");
  s.option(app, "--hole-expand-radius", a.cfg.hole_expand_radius,
           "Grow holes into edge pixels within this radius");
  s.option(app, "--max-fill-passes", a.cfg.max_fill_passes, "Fill pass budget per phase");
  s.option(app, "--closing-radius", a.cfg.se.radius, "Closing structuring element radius");
  s.option(app, "--threads", a.cfg.threads, "Worker threads (0 = all cores)");
  s.flag(app, "--isotropic", a.isotropic, "Use isotropic kernels in edge regions (ablation)");
}

int cmd_restore(RestoreArgs& a, const Settings& settings, std::ostream& out) {
  load_config(a.config_path, settings);
  a.cfg.directional = !a.isotropic;
  validate_flags(a.cfg);
  const DepthMap depth = load_depth_pgm(a.depth_path);
  const ColorImage color = load_color_ppm(a.color_path);
  const Restoration r = restore(depth, color, a.cfg);
  save_depth_pgm(r.depth, a.out_path);
  out << r.report.to_text();
  return kSuccess;
}

struct DegradeArgs {
  std::vector<std::string> files;
  std::string scene, config_path;
  DegradeSpec spec;
  int width = 160;
  int height = 120;
};

int cmd_degrade(DegradeArgs& a, const Settings& settings, std::ostream& out) {
  load_config(a.config_path, settings);
  require(a.spec.noise_sigma >= 0, "--noise-sigma must be >= 0 (got " + str(a.spec.noise_sigma) + ")");
  require(a.spec.speckle_hole_fraction >= 0 && a.spec.speckle_hole_fraction < 1,
          "--speckle must be in [0, 1) (got " + str(a.spec.speckle_hole_fraction) + ")");
  require(a.spec.edge_hole_radius >= 0,
          "--edge-hole-radius must be >= 0 (got " + str(a.spec.edge_hole_radius) + ")");

  DepthMap clean;
  std::string out_path;
  std::vector<std::pair<std::string, std::string>> extra_outputs;
  std::optional<Scene> scene;
  if (!a.scene.empty()) {
    const auto kind = parse_scene(a.scene);
    require(kind.has_value(), "--scene must be one of step, ramp, occluder (got '" + a.scene + "')");
    require(a.width >= 16 && a.height >= 16, "--width and --height must be >= 16");
    require(a.files.size() >= 1 && a.files.size() <= 3,
            "with --scene expected: OUT.pgm [CLEAN.pgm [COLOR.ppm]]");
    scene = make_scene(*kind, a.width, a.height);
    clean = scene->depth;
    out_path = a.files[0];
  } else {
    require(a.files.size() == 2, "expected: CLEAN.pgm OUT.pgm (or --scene KIND OUT.pgm)");
    clean = load_depth_pgm(a.files[0]);
    out_path = a.files[1];
  }
  const DepthMap degraded = degrade(clean, a.spec);
  save_depth_pgm(degraded, out_path);
  if (scene) {
    if (a.files.size() >= 2) save_depth_pgm(scene->depth, a.files[1]);
    if (a.files.size() >= 3) save_color_ppm(scene->color, a.files[2]);
  }
  out << "holes: " << count_set(hole_mask(degraded)) << "\n";
  return kSuccess;
}

struct EvalArgs {
  std::string ref_path, test_path, config_path;
  double tau = 10.0;
  bool csv = false;
  std::string scene = "-";
  std::uint64_t seed = 0;
};

int cmd_eval(EvalArgs& a, const Settings& settings, std::ostream& out) {
  load_config(a.config_path, settings);
  require(a.tau >= 0, "--tau must be >= 0 (got " + str(a.tau) + ")");
  const DepthMap ref = load_depth_pgm(a.ref_path);
  const DepthMap test = load_depth_pgm(a.test_path);
  const QualityReport q = evaluate(ref, test, a.tau);
  out << q.to_text();
  if (a.csv) out << QualityReport::csv_header() << "\n" << q.csv_row(a.scene, a.seed) << "\n";
  return kSuccess;
}

struct EdgesArgs {
  std::string color_path, prefix, config_path;
  double edge_threshold = PipelineConfig{}.edge_threshold;
};

int cmd_edges(EdgesArgs& a, const Settings& settings, std::ostream& out) {
  load_config(a.config_path, settings);
  require(a.edge_threshold > 0, "--edge-threshold must be > 0 (got " + str(a.edge_threshold) + ")");
  const ColorImage color = load_color_ppm(a.color_path);
  const EdgeMap edges = detect_edges(sobel_gradients(to_grayscale(color)), a.edge_threshold);
  Grid<std::uint16_t> theta(color.width(), color.height());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double scaled = (edges.theta[i] + std::numbers::pi / 2.0) / std::numbers::pi * 65535.0;
    theta[i] = static_cast<std::uint16_t>(std::clamp(std::round(scaled), 0.0, 65535.0));
  }
  const std::string edge_bytes = encode_mask_pgm(edges.edge);
  const std::string theta_bytes = encode_gray16_pgm(theta);
  write_file_atomic(a.prefix + "_edges.pgm", edge_bytes);
  write_file_atomic(a.prefix + "_theta.pgm", theta_bytes);
  out << "edge_pixels: " << count_set(edges.edge) << "\n";
  return kSuccess;
}

}  // namespace

std::vector<ConfigEntry> parse_config(std::string_view text) {
  std::vector<ConfigEntry> entries;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key = trim(std::string_view(stripped).substr(0, eq));
    std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw UsageError("config line " + std::to_string(line_no) + ": empty key or value");
    }
    if (!seen.insert(key).second) {
      throw UsageError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    entries.emplace_back(std::move(key), std::move(value));
  }
  return entries;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Depth map restoration guided by a co-registered color image", "depthfill"};
  app.require_subcommand(1);

  RestoreArgs restore_args;
  Settings restore_settings;
  CLI::App* restore_cmd = app.add_subcommand("restore", "Denoise and hole-fill a depth map");
  restore_cmd->add_option("depth", restore_args.depth_path, "Input depth (P5, 16-bit)")->required();
  restore_cmd->add_option("color", restore_args.color_path, "Guidance color (P6)")->required();
  restore_cmd->add_option("output", restore_args.out_path, "Restored depth (P5, 16-bit)")->required();
  restore_cmd->add_option("--config", restore_args.config_path, "File of key = value defaults");
  add_pipeline_options(*restore_cmd, restore_settings, restore_args);

  DegradeArgs degrade_args;
  Settings degrade_settings;
  CLI::App* degrade_cmd = app.add_subcommand(
      "degrade", "Add sensor-style noise and holes to a clean depth map or a synthetic scene");
  degrade_cmd->add_option("files", degrade_args.files,
                          "CLEAN.pgm OUT.pgm, or with --scene: OUT.pgm [CLEAN.pgm [COLOR.ppm]]")
      ->required();
  degrade_cmd->add_option("--config", degrade_args.config_path, "File of key = value defaults");
  degrade_settings.option(*degrade_cmd, "--scene", degrade_args.scene,
                          "Synthesize the clean input: step, ramp or occluder");
  degrade_settings.option(*degrade_cmd, "--seed", degrade_args.spec.seed, "RNG seed");
  degrade_settings.option(*degrade_cmd, "--noise-sigma", degrade_args.spec.noise_sigma,
                          "Gaussian noise sigma (mm)");
  degrade_settings.option(*degrade_cmd, "--speckle", degrade_args.spec.speckle_hole_fraction,
                          "Fraction of pixels turned into holes, in [0, 1)");
  degrade_settings.option(*degrade_cmd, "--edge-hole-radius", degrade_args.spec.edge_hole_radius,
                          "Hole band radius around depth discontinuities (0 = none)");
  degrade_settings.option(*degrade_cmd, "--width", degrade_args.width, "Scene width");
  degrade_settings.option(*degrade_cmd, "--height", degrade_args.height, "Scene height");

  EvalArgs eval_args;
  Settings eval_settings;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Compare a depth map against a reference");
  eval_cmd->add_option("reference", eval_args.ref_path, "Reference depth (P5)")->required();
  eval_cmd->add_option("test", eval_args.test_path, "Depth under test (P5)")->required();
  eval_cmd->add_option("--config", eval_args.config_path, "File of key = value defaults");
  eval_settings.option(*eval_cmd, "--tau", eval_args.tau, "Bad-pixel threshold (mm)");
  eval_settings.flag(*eval_cmd, "--csv", eval_args.csv, "Also print a CSV header and row");
  eval_settings.option(*eval_cmd, "--scene", eval_args.scene, "Scene label for the CSV row");
  eval_settings.option(*eval_cmd, "--seed", eval_args.seed, "Seed label for the CSV row");

  EdgesArgs edges_args;
  Settings edges_settings;
  CLI::App* edges_cmd =
      app.add_subcommand("edges", "Write the edge mask and orientation map of a color image");
  edges_cmd->add_option("color", edges_args.color_path, "Color image (P6)")->required();
  edges_cmd->add_option("prefix", edges_args.prefix,
                        "Output prefix; writes PREFIX_edges.pgm and PREFIX_theta.pgm")
      ->required();
  edges_cmd->add_option("--config", edges_args.config_path, "File of key = value defaults");
  edges_settings.option(*edges_cmd, "--edge-threshold", edges_args.edge_threshold,
                        "Sobel magnitude edge threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }

  try {
    if (restore_cmd->parsed()) return cmd_restore(restore_args, restore_settings, out);
    if (degrade_cmd->parsed()) return cmd_degrade(degrade_args, degrade_settings, out);
    if (eval_cmd->parsed()) return cmd_eval(eval_args, eval_settings, out);
    if (edges_cmd->parsed()) return cmd_edges(edges_args, edges_settings, out);
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kIoFailure;
  }
  return kValidationFailure;
}

}  // namespace depthfill::cli
