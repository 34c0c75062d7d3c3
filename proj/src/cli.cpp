#include "vanatta/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>

#include "vanatta/config.hpp"
#include "vanatta/csv.hpp"
#include "vanatta/emfield.hpp"
#include "vanatta/errors.hpp"
#include "vanatta/fmcw.hpp"
#include "vanatta/geometry.hpp"
#include "vanatta/link.hpp"
#include "vanatta/modulation.hpp"

namespace vanatta::cli {

namespace {

namespace fs = std::filesystem;
using csv::number;
using config::ScenarioConfig;

struct Flags {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  double grid_step = 0.0;
  CLI::Option* out_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* step_opt = nullptr;

  // subcommand-specific
  double gain_db = 0.0;
  CLI::Option* gain_opt = nullptr;
  std::vector<int> n_elements;
  CLI::Option* n_opt = nullptr;
  std::string kind;
  CLI::Option* kind_opt = nullptr;
  double snr_db = 0.0;
  CLI::Option* snr_opt = nullptr;
};

struct Context {
  ScenarioConfig config;
  fs::path out_dir;
  std::ostream& out;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config_path, "scenario config file (defaults apply when omitted)");
  f.out_opt = sub->add_option("--out", f.out_dir, "output directory");
  f.seed_opt = sub->add_option("--seed", f.seed, "noise / payload seed");
  f.step_opt = sub->add_option("--grid-step-deg", f.grid_step, "pattern grid step, degrees");
}

ScenarioConfig load_config(const Flags& f) {
  ScenarioConfig c = f.config_path.empty() ? ScenarioConfig{} : config::load(f.config_path);
  if (f.out_opt->count()) c.output_dir = f.out_dir;
  if (f.seed_opt->count()) c.seed = f.seed;
  if (f.step_opt->count()) c.grid_step_deg = f.grid_step;
  if (f.gain_opt && f.gain_opt->count()) c.range_gain_db = f.gain_db;
  if (f.n_opt && f.n_opt->count()) c.scale_n_elements = f.n_elements;
  if (f.kind_opt && f.kind_opt->count()) c.sweep_kind = f.kind;
  if (f.snr_opt && f.snr_opt->count()) c.snr_db = f.snr_db;
  return c;
}

void write(const Context& ctx, const std::string& name, const std::string& content) {
  csv::write_file(ctx.out_dir / name, content);
  ctx.out << "wrote " << (ctx.out_dir / name).string() << "\n";
}

std::string render_report(const geometry::SurfaceLayout& layout,
                          const geometry::ValidationReport& report) {
  std::string s;
  s += std::string("status: ") + (report.passed() ? "passed" : "failed") + "\n";
  s += "elements: " + std::to_string(layout.elements.size()) + "\n";
  s += "pairs: " + std::to_string(layout.pair_count()) + "\n";
  s += "wavelength_m: " + number(layout.wavelength) + "\n";
  if (layout.elements.size() >= 2) {
    s += "min_spacing_m: " + number(geometry::min_element_spacing(layout)) + "\n";
  }
  for (const auto& v : report.violations) {
    s += "violation: rule=" + std::string(geometry::rule_name(v.rule)) + " ids=";
    for (std::size_t i = 0; i < v.ids.size(); ++i) s += (i ? "," : "") + std::to_string(v.ids[i]);
    s += " deviation_m=" + number(v.deviation) + "\n";
  }
  return s;
}

/// Builds and validates the layout; nullopt (after printing the report) when it fails.
std::optional<geometry::SurfaceLayout> checked_layout(const Context& ctx, std::ostream& err) {
  auto layout = config::make_layout(ctx.config);
  const auto report = geometry::validate_layout(layout);
  if (!report.passed()) {
    err << render_report(layout, report);
    return std::nullopt;
  }
  return layout;
}

double retro_abs(const emfield::Surface& s, const emfield::SwitchConfig& c,
                 const emfield::PlaneWave& w) {
  return std::abs(s.response(c, w, w.incidence_angle_deg));
}

double gain_db(double numerator, double denominator) {
  if (denominator == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(numerator / denominator);
}

int cmd_validate(const Context& ctx, std::ostream&) {
  const auto layout = config::make_layout(ctx.config);
  const auto report = geometry::validate_layout(layout);
  const std::string text = render_report(layout, report);
  ctx.out << text;
  write(ctx, "validation.txt", text);
  return report.passed() ? kExitOk : kExitConstraint;
}

int cmd_pattern(const Context& ctx, std::ostream& err) {
  const auto layout = checked_layout(ctx, err);
  if (!layout) return kExitConstraint;
  const auto& c = ctx.config;
  const emfield::Surface surface(*layout, config::response_options(c));
  const auto wave = config::plane_wave(c);
  const auto grid = emfield::default_grid(c.grid_step_deg);
  const auto on = modulation::constructive_config(*layout);
  const auto off = modulation::destructive_config(*layout);
  const emfield::PlateOptions plate_opts{c.plate_normalization};

  const auto p_on = surface.pattern(on, wave, grid);
  const auto p_off = surface.pattern(off, wave, grid);
  const auto p_plate = emfield::plate_baseline_pattern(c.plate_width_m, wave, grid, plate_opts);
  write(ctx, "pattern_constructive.csv", csv::pattern(p_on));
  write(ctx, "pattern_destructive.csv", csv::pattern(p_off));
  write(ctx, "pattern_plate.csv", csv::pattern(p_plate));

  const double a_on = retro_abs(surface, on, wave);
  const double a_off = retro_abs(surface, off, wave);
  const double a_plate = std::abs(emfield::plate_monostatic(c.plate_width_m, wave, plate_opts));
  std::string s;
  s += "incidence_deg: " + number(c.incidence_angle_deg) + "\n";
  s += "retro_peak_deg: " + number(p_on.peak_angle_deg()) + "\n";
  s += "plate_peak_deg: " + number(p_plate.peak_angle_deg()) + "\n";
  s += "constructive_retro_v_per_m: " + number(a_on) + "\n";
  s += "destructive_retro_v_per_m: " + number(a_off) + "\n";
  s += "null_depth_db: " + number(gain_db(a_on, a_off)) + "\n";
  s += "plate_monostatic_v_per_m: " + number(a_plate) + "\n";
  s += "monostatic_gain_db: " + number(gain_db(a_on, a_plate)) + "\n";
  ctx.out << s;
  write(ctx, "pattern_summary.txt", s);
  return kExitOk;
}

int cmd_range(const Context& ctx, std::ostream& err) {
  const auto layout = checked_layout(ctx, err);
  if (!layout) return kExitConstraint;
  const auto& c = ctx.config;
  if (c.range_points < 1) throw DomainError("range.points must be >= 1");
  if (!(c.range_min_m > 0.0) || !(c.range_max_m >= c.range_min_m)) {
    throw DomainError("range distances must satisfy 0 < min <= max");
  }
  auto surface = std::make_shared<const emfield::Surface>(*layout, config::response_options(c));
  const auto wave = config::plane_wave(c);
  const auto on = modulation::constructive_config(*layout);
  const auto off = modulation::destructive_config(*layout);
  const emfield::PlateOptions plate_opts{c.plate_normalization};
  const double ref = surface->options().reference_distance;

  const double a_on = retro_abs(*surface, on, wave);
  const double a_off = retro_abs(*surface, off, wave);
  const double a_plate_model = std::abs(emfield::plate_monostatic(c.plate_width_m, wave, plate_opts));
  const double g = c.range_gain_db ? *c.range_gain_db : gain_db(a_on, a_plate_model);
  const double factor = emfield::range_extension(g);
  // With a gain override the plate column is the surface curve scaled down by that gain.
  const double a_plate = c.range_gain_db ? a_on / factor : a_plate_model;

  std::string table = "distance_m,constructive_v_per_m,destructive_v_per_m,plate_v_per_m\n";
  for (int i = 0; i < c.range_points; ++i) {
    const double d = c.range_points == 1
                         ? c.range_min_m
                         : c.range_min_m + (c.range_max_m - c.range_min_m) * i / (c.range_points - 1);
    table += number(d) + "," + number(emfield::far_field_amplitude(a_on, ref, d)) + "," +
             number(emfield::far_field_amplitude(a_off, ref, d)) + "," +
             number(emfield::far_field_amplitude(a_plate, ref, d)) + "\n";
  }
  write(ctx, "range_amplitude.csv", table);

  const auto radar = config::chirp_params(c);
  radar.validate();
  const auto scaling = config::distance_scaling(c);
  fmcw::Target surf_target;
  surf_target.range = c.target_range_m;
  surf_target.incidence_angle_deg = c.incidence_angle_deg;
  surf_target.incident_amplitude = c.incident_amplitude;
  surf_target.source = fmcw::SurfaceSource{surface, std::nullopt, on};
  fmcw::Target plate_target = surf_target;
  if (c.range_gain_db) {
    const double ref_field = std::abs(fmcw::reference_field(surf_target, radar, 0.0));
    plate_target.source = fmcw::PointSource{fmcw::Complex(ref_field / factor, 0.0)};
  } else {
    plate_target.source = fmcw::PlateSource{c.plate_width_m, plate_opts};
  }
  double noise = 0.0;
  if (c.noise_power) {
    noise = *c.noise_power;
  } else {
    const double a = std::abs(fmcw::echo_field(surf_target, radar, 0.0, scaling));
    noise = 0.5 * a * a / std::pow(10.0, c.snr_db / 10.0);
  }
  const auto r_surf = fmcw::max_detection_range(radar, surf_target, c.threshold_db, noise, scaling,
                                                c.range_min_m);
  const auto r_plate = fmcw::max_detection_range(radar, plate_target, c.threshold_db, noise,
                                                 scaling, c.range_min_m);
  auto show = [](const std::optional<double>& r) { return r ? number(*r) : std::string("undetectable"); };

  std::string s;
  s += "gain_db: " + number(g) + "\n";
  s += "range_extension_factor: " + number(factor) + "\n";
  s += "noise_power_v2: " + number(noise) + "\n";
  s += "threshold_db: " + number(c.threshold_db) + "\n";
  s += "max_range_surface_m: " + show(r_surf) + "\n";
  s += "max_range_plate_m: " + show(r_plate) + "\n";
  if (r_surf && r_plate) s += "max_range_ratio: " + number(*r_surf / *r_plate) + "\n";
  ctx.out << s;
  write(ctx, "range_summary.txt", s);
  return kExitOk;
}

int cmd_scale(const Context& ctx, std::ostream& err) {
  const auto layout = checked_layout(ctx, err);
  if (!layout) return kExitConstraint;
  const auto& c = ctx.config;
  const auto wave = config::plane_wave(c);
  const double spacing = c.layout_spacing_wavelengths * layout->wavelength;
  const auto points =
      emfield::scaling_sweep(c.scale_n_elements, spacing, wave, config::response_options(c));
  const double plate =
      std::abs(emfield::plate_monostatic(c.plate_width_m, wave, {c.plate_normalization}));
  std::string table = "n_elements,retro_v_per_m,gain_over_element,plate_v_per_m,gain_over_plate_db\n";
  for (const auto& p : points) {
    table += std::to_string(p.n_elements) + "," + number(p.retro_amplitude) + "," +
             number(p.gain_over_element) + "," + number(plate) + "," +
             number(gain_db(p.retro_amplitude, plate)) + "\n";
  }
  ctx.out << table;
  write(ctx, "scale.csv", table);
  return kExitOk;
}

link::LinkScenario make_scenario(const ScenarioConfig& c, const geometry::SurfaceLayout& layout) {
  link::LinkScenario s;
  s.surface = std::make_shared<const emfield::Surface>(layout, config::response_options(c));
  s.radar = config::chirp_params(c);
  s.radar_angle_deg = c.incidence_angle_deg;
  s.incident_amplitude = c.incident_amplitude;
  s.range = c.target_range_m;
  s.velocity = c.target_velocity_mps;
  s.seed = c.seed;
  s.scaling = config::distance_scaling(c);
  modulation::BitFrame frame;
  if (c.link_bits.empty()) {
    if (c.link_n_bits < 1) throw DomainError("link.n_bits must be >= 1");
    frame.bits = modulation::random_bits(static_cast<std::size_t>(c.link_n_bits), c.seed);
  } else {
    frame.bits = modulation::parse_bits(c.link_bits);
  }
  s.schedule = modulation::encode_bits(frame, layout, c.switch_interval_s, c.chirp_s);
  s.noise_power = c.noise_power ? *c.noise_power : link::noise_power_for_snr(s, c.snr_db);
  return s;
}

int cmd_link(const Context& ctx, std::ostream& err) {
  const auto layout = checked_layout(ctx, err);
  if (!layout) return kExitConstraint;
  const auto scenario = make_scenario(ctx.config, *layout);
  const auto result = link::run_link(scenario);

  nlohmann::ordered_json report;
  report["n_bits"] = result.transmitted.size();
  report["chirps_per_bit"] = result.chirps_per_bit;
  report["seed"] = scenario.seed;
  report["snr_db"] = result.snr_db;
  report["noise_power_v2"] = scenario.noise_power;
  report["range_bin"] = result.range_bin;
  report["threshold"] = result.threshold;
  report["degenerate"] = result.degenerate;
  report["bit_errors"] = result.bit_errors;
  report["ber"] = result.ber;
  report["transmitted"] = modulation::format_bits(result.transmitted);
  report["decoded"] = modulation::format_bits(result.decoded);
  write(ctx, "link_report.json", report.dump(2) + "\n");

  std::string chirps = "chirp_index,time_s,amplitude,bit_index\n";
  for (std::size_t i = 0; i < result.per_chirp_amplitudes.size(); ++i) {
    chirps += std::to_string(i) + "," + number(result.chirp_times[i]) + "," +
              number(result.per_chirp_amplitudes[i]) + "," +
              std::to_string(i / result.chirps_per_bit) + "\n";
  }
  write(ctx, "link_chirps.csv", chirps);

  // First radar frame of the transmission, for inspection.
  const std::size_t total = result.per_chirp_amplitudes.size();
  const std::size_t frame_chirps =
      std::min(total, static_cast<std::size_t>(std::max(scenario.radar.chirps_per_frame, 2)));
  const auto target = scenario.target();
  const auto beat = fmcw::synthesize_beat(scenario.radar, std::span(&target, 1),
                                          scenario.noise_power, scenario.seed, frame_chirps,
                                          scenario.scaling);
  write(ctx, "link_range_profile.csv", csv::range_profile(fmcw::range_profile(beat, 0)));
  if (frame_chirps >= 2) write(ctx, "link_range_doppler.csv", csv::range_doppler(fmcw::range_doppler(beat)));
  write(ctx, "link_schedule.json", modulation::export_schedule(scenario.schedule));

  ctx.out << "bits: " << result.transmitted.size() << "\nsnr_db: " << number(result.snr_db)
          << "\nbit_errors: " << result.bit_errors << "\nber: " << number(result.ber) << "\n";
  return kExitOk;
}

int cmd_sweep(const Context& ctx, std::ostream& err) {
  const auto layout = checked_layout(ctx, err);
  if (!layout) return kExitConstraint;
  const auto& c = ctx.config;
  if (c.sweep_kind == "ber") {
    if (c.sweep_seeds < 1) throw DomainError("sweep.seeds must be >= 1");
    const auto base = make_scenario(c, *layout);
    const auto points =
        link::ber_sweep(base, c.sweep_snr_db, static_cast<std::size_t>(c.sweep_seeds));
    std::string table = "snr_db,mean_ber,std_error,seeds,min_ber,max_ber\n";
    for (const auto& p : points) {
      const auto [lo, hi] = std::minmax_element(p.ber_per_seed.begin(), p.ber_per_seed.end());
      table += number(p.snr_db) + "," + number(p.mean) + "," + number(p.std_error) + "," +
               std::to_string(p.ber_per_seed.size()) + "," + number(*lo) + "," + number(*hi) + "\n";
    }
    ctx.out << table;
    write(ctx, "sweep_ber.csv", table);
    return kExitOk;
  }
  if (c.sweep_kind == "angle") {
    const emfield::Surface surface(*layout, config::response_options(c));
    const auto on = modulation::constructive_config(*layout);
    const auto off = modulation::destructive_config(*layout);
    const auto grid = emfield::default_grid(c.grid_step_deg);
    std::string table =
        "incidence_deg,retro_peak_deg,constructive_retro_v_per_m,destructive_retro_v_per_m,"
        "modulation_depth_db,plate_v_per_m,gain_db\n";
    for (const double theta : emfield::angle_grid(-60.0, 60.0, 5.0)) {
      auto wave = config::plane_wave(c);
      wave.incidence_angle_deg = theta;
      const double a_on = retro_abs(surface, on, wave);
      const double a_off = retro_abs(surface, off, wave);
      const double plate =
          std::abs(emfield::plate_monostatic(c.plate_width_m, wave, {c.plate_normalization}));
      table += number(theta) + "," + number(surface.pattern(on, wave, grid).peak_angle_deg()) + "," +
               number(a_on) + "," + number(a_off) + "," + number(gain_db(a_on, a_off)) + "," +
               number(plate) + "," + number(gain_db(a_on, plate)) + "\n";
    }
    ctx.out << table;
    write(ctx, "sweep_angle.csv", table);
    return kExitOk;
  }
  throw IoError("unknown sweep.kind '" + c.sweep_kind + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Van Atta retrodirective surface and FMCW link simulator", "vanatta"};
  app.require_subcommand(1);

  using Command = std::function<int(const Context&, std::ostream&)>;
  std::map<std::string, Flags> flags;
  std::map<std::string, Command> commands = {
      {"validate", cmd_validate}, {"pattern", cmd_pattern}, {"range", cmd_range},
      {"scale", cmd_scale},       {"link", cmd_link},       {"sweep", cmd_sweep},
  };
  const std::map<std::string, std::string> descriptions = {
      {"validate", "check the layout design rules"},
      {"pattern", "reflection patterns: constructive, destructive, plate"},
      {"range", "field amplitude vs distance and detection ranges"},
      {"scale", "retro gain vs number of elements"},
      {"link", "simulate the OOK identification link"},
      {"sweep", "BER vs SNR or gain vs incidence angle"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, desc] : descriptions) {
    auto* sub = app.add_subcommand(name, desc);
    add_common(sub, flags[name]);
    subs[name] = sub;
  }
  flags["range"].gain_opt =
      subs["range"]->add_option("--gain-db", flags["range"].gain_db, "use this gain instead of the modelled one");
  flags["scale"].n_opt =
      subs["scale"]->add_option("--n", flags["scale"].n_elements, "element counts")->delimiter(',');
  flags["sweep"].kind_opt = subs["sweep"]
                                ->add_option("--kind", flags["sweep"].kind, "ber | angle")
                                ->check(CLI::IsMember({"ber", "angle"}));
  flags["link"].snr_opt =
      subs["link"]->add_option("--snr-db", flags["link"].snr_db, "per-chirp SNR of the constructive state");

  std::vector<const char*> argv{"vanatta"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitIo;
  }

  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    try {
      const auto& f = flags[name];
      Context ctx{load_config(f), {}, out};
      ctx.out_dir = ctx.config.output_dir;
      std::error_code ec;
      fs::create_directories(ctx.out_dir, ec);
      if (ec) throw IoError("cannot create output directory " + ctx.out_dir.string() + ": " + ec.message());
      return commands.at(name)(ctx, err);
    } catch (const IoError& e) {
      err << "error: " << e.what() << "\n";
      return kExitIo;
    } catch (const fs::filesystem_error& e) {
      err << "error: " << e.what() << "\n";
      return kExitIo;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitConstraint;
    }
  }
  return kExitIo;
}

}  // namespace vanatta::cli
