#pragma once

// Command-line front end: every subcommand writes CSV (and optional SVG)
// into --out-dir and a short report to `out`.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "wsnlink/wsnlink.hpp"

namespace wsnlink::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Flag or config problem detected before any computation.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline unsigned worker_count() {
  return std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
}

inline std::string file_tag(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  return s;
}

inline RadioProfile resolve_radio(const std::string& spec) {
  if (is_builtin_radio(spec)) return builtin_radio(spec);
  if (std::filesystem::is_regular_file(spec)) return load_radio(spec);
  throw UsageError("--radio: '" + spec + "' is neither a built-in (mica2, tinynode) nor a file");
}

inline ChannelProfile resolve_channel(const std::string& path) {
  return path.empty() ? default_channel() : load_channel(path);
}

inline std::vector<Modulation> parse_mods(const std::vector<std::string>& names,
                                          const char* flag) {
  std::vector<Modulation> mods;
  for (const auto& n : names)
    if (!n.empty()) mods.push_back(parse_modulation(n));
  if (mods.empty()) throw UsageError(std::string(flag) + ": at least one modulation required");
  return mods;
}

inline FrameSpec frame_of(int bytes, int preamble) {
  FrameSpec f{bytes, std::min(preamble, bytes)};
  f.validate();
  return f;
}

/// Applies --mod / --frame overrides to a radio.
inline void override_radio(RadioProfile& r, const std::vector<std::string>& mod,
                           const std::vector<int>& frame) {
  if (!mod.empty()) {
    if (mod.size() != 1) throw UsageError("--mod: give a single modulation here");
    r.modulation = parse_modulation(mod.front());
  }
  if (!frame.empty()) {
    if (frame.size() != 1) throw UsageError("--frame: give a single frame size here");
    r.frame = frame_of(frame.front(), r.frame.preamble_bytes);
  }
  r.validate();
}

inline void check_range(double lo, double hi, double step, const char* what) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step) || !(lo < hi) ||
      !(step > 0.0))
    throw UsageError(std::string(what) + ": need min < max and step > 0");
}

inline std::ofstream open_out(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream f(dir / name, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
  return f;
}

inline std::string label(const RadioProfile& r) {
  return r.name + "_" + std::string(to_string(r.modulation)) + "_f" +
         std::to_string(r.frame.frame_bytes);
}

inline constexpr const char* kRegionsHeader =
    "radio,modulation,frame_bytes,view,d_connected_end_m,d_transitional_end_m";

inline void region_row(std::ostream& o, const RadioProfile& r, const char* view,
                       const LinkRegions& g) {
  o << r.name << ',' << to_string(r.modulation) << ',' << r.frame.frame_bytes << ',' << view
    << ',' << csv::number(g.d_connected_end) << ',' << csv::number(g.d_transitional_end) << '\n';
}

}  // namespace detail

struct Options {
  std::vector<std::string> mod, mods, radios;
  std::vector<int> frame;
  double snr_min = 0.0, snr_max = 30.0, step = 0.1;
  std::string radio = "mica2", channel;
  double d_min = 0.5, d_max = 60.0, d_step = 0.1;
  double snr_db = 0.0;
  std::int64_t trials = 100000, draws = 10000;
  std::vector<double> distance;
  std::optional<std::uint64_t> seed;
  double confidence = 0.95;
  std::string out_dir = "out";
  bool svg = false;
};

inline int cmd_response(const Options& o, std::ostream& out) {
  const auto mods = detail::parse_mods(o.mod, "--mod");
  std::vector<int> frames = o.frame.empty() ? std::vector<int>{50} : o.frame;
  std::vector<FrameSpec> specs;
  for (int f : frames) specs.push_back(detail::frame_of(f, 2));
  detail::check_range(o.snr_min, o.snr_max, o.step, "--snr-min/--snr-max/--step");

  std::vector<svg::Series> plot;
  for (Modulation m : mods)
    for (const FrameSpec& fs : specs) {
      const auto pts = receiver_response_curve(m, fs, o.snr_min, o.snr_max, o.step);
      const std::string tag =
          std::string(to_string(m)) + "_f" + std::to_string(fs.frame_bytes);
      auto f = detail::open_out(o.out_dir, "response_" + tag + ".csv");
      csv::write_response(f, pts);
      const double g90 = snr_linear_to_db(snr_for_prr(m, fs, {0.9})).value;
      out << "response " << tag << ": PRR 0.9 at " << csv::number(g90) << " dB\n";
      plot.push_back({tag, pts});
    }
  if (o.svg) {
    auto f = detail::open_out(o.out_dir, "response.svg");
    f << svg::render("Receiver response (NRZ)", "SNR (dB)", plot);
  }
  return kExitOk;
}

inline int cmd_curve(const Options& o, std::ostream& out) {
  RadioProfile r = detail::resolve_radio(o.radio);
  detail::override_radio(r, o.mod, o.frame);
  const ChannelProfile ch = detail::resolve_channel(o.channel);
  if (!(o.d_min > 0.0)) throw UsageError("--d-min must be > 0");
  detail::check_range(o.d_min, o.d_max, o.d_step, "--d-min/--d-max/--d-step");

  const auto pts = prr_distance_curve(r, ch, o.d_min, o.d_max, o.d_step);
  const std::string tag = detail::file_tag(detail::label(r));
  auto f = detail::open_out(o.out_dir, "curve_" + tag + ".csv");
  csv::write_distance(f, pts);
  out << "curve " << tag << ": " << pts.size() << " points\n";
  if (o.svg) {
    auto s = detail::open_out(o.out_dir, "curve_" + tag + ".svg");
    s << svg::render("Analytical PRR vs distance: " + r.name, "distance (m)", {{tag, pts}});
  }
  return kExitOk;
}

inline void check_stochastic(const Options& o) {
  if (!(o.confidence > 0.0 && o.confidence < 1.0))
    throw UsageError("--confidence must lie in (0, 1)");
  if (o.draws < 1) throw UsageError("--draws must be >= 1");
}

inline int cmd_regions(const Options& o, std::ostream& out) {
  RadioProfile r = detail::resolve_radio(o.radio);
  detail::override_radio(r, o.mod, o.frame);
  const ChannelProfile ch = detail::resolve_channel(o.channel);
  check_stochastic(o);
  const std::uint64_t seed = o.seed.value_or(1);

  const LinkRegions det = region_bounds(r, ch);
  const LinkRegions prob = probabilistic_region_bounds(
      r, ch, {}, o.confidence, static_cast<std::uint64_t>(o.draws), seed, detail::worker_count());

  out << "radio " << r.name << " (" << to_string(r.modulation) << ", f=" << r.frame.frame_bytes
      << " B, Pt=" << csv::number(r.pt_dbm) << " dBm, Pn=" << csv::number(r.pn_dbm) << " dBm)\n"
      << "  deterministic: connected 0-" << csv::number(det.d_connected_end)
      << " m, transitional to " << csv::number(det.d_transitional_end) << " m\n"
      << "  probabilistic (sigma=" << csv::number(ch.sigma_db)
      << " dB, confidence=" << csv::number(o.confidence) << ", draws=" << o.draws
      << ", seed=" << seed << "): connected 0-" << csv::number(prob.d_connected_end)
      << " m, transitional to " << csv::number(prob.d_transitional_end) << " m\n";

  auto f = detail::open_out(o.out_dir, "regions_" + detail::file_tag(detail::label(r)) + ".csv");
  f << detail::kRegionsHeader << '\n';
  detail::region_row(f, r, "deterministic", det);
  detail::region_row(f, r, "probabilistic", prob);
  return kExitOk;
}

inline int cmd_compare(const Options& o, std::ostream& out) {
  if (!o.radios.empty() && !o.mods.empty())
    throw UsageError("compare: use either --radios or --mods, not both");
  std::vector<RadioProfile> radios;
  if (!o.radios.empty()) {
    for (const auto& name : o.radios) {
      RadioProfile r = detail::resolve_radio(name);
      detail::override_radio(r, o.mod, o.frame);
      radios.push_back(r);
    }
  } else {
    const auto mods = detail::parse_mods(o.mods, "--mods");
    RadioProfile base = detail::resolve_radio(o.radio);
    detail::override_radio(base, {}, o.frame);
    for (Modulation m : mods) {
      RadioProfile r = base;
      r.modulation = m;
      radios.push_back(r);
    }
  }
  if (radios.size() < 2) throw UsageError("compare: need at least two radios or modulations");
  const ChannelProfile ch = detail::resolve_channel(o.channel);
  if (!(o.d_min > 0.0)) throw UsageError("--d-min must be > 0");
  detail::check_range(o.d_min, o.d_max, o.d_step, "--d-min/--d-max/--d-step");

  std::vector<svg::Series> curves;
  for (const auto& r : radios)
    curves.push_back({detail::label(r), prr_distance_curve(r, ch, o.d_min, o.d_max, o.d_step)});

  auto f = detail::open_out(o.out_dir, "compare.csv");
  f << "distance_m";
  for (const auto& c : curves) f << ',' << c.label;
  f << '\n';
  for (std::size_t i = 0; i < curves.front().points.size(); ++i) {
    f << csv::number(curves.front().points[i].x);
    for (const auto& c : curves) f << ',' << csv::number(c.points[i].prr);
    f << '\n';
  }

  auto t = detail::open_out(o.out_dir, "compare_regions.csv");
  t << detail::kRegionsHeader << '\n';
  out << "label,d_connected_end_m,d_transitional_end_m\n";
  for (const auto& r : radios) {
    const LinkRegions g = region_bounds(r, ch);
    detail::region_row(t, r, "deterministic", g);
    out << detail::label(r) << ',' << csv::number(g.d_connected_end) << ','
        << csv::number(g.d_transitional_end) << '\n';
  }
  if (o.svg) {
    auto s = detail::open_out(o.out_dir, "compare.svg");
    s << svg::render("Analytical PRR vs distance", "distance (m)", curves);
  }
  return kExitOk;
}

inline std::uint64_t require_seed(const Options& o) {
  if (!o.seed) throw UsageError("--seed is required");
  return *o.seed;
}

inline int cmd_simulate(const Options& o, std::ostream& out) {
  const std::uint64_t seed = require_seed(o);
  const auto mods = detail::parse_mods(o.mod, "--mod");
  if (mods.size() != 1) throw UsageError("--mod: give a single modulation");
  if (o.frame.size() > 1) throw UsageError("--frame: give a single frame size");
  const FrameSpec fs = detail::frame_of(o.frame.empty() ? 50 : o.frame.front(), 2);
  if (!std::isfinite(o.snr_db)) throw UsageError("--snr-db must be finite");
  if (o.trials < 1) throw UsageError("--trials must be >= 1");

  const SnrLinear g = snr_db_to_linear({o.snr_db});
  const SimulationResult res = simulate_packets(
      mods.front(), g, fs, static_cast<std::uint64_t>(o.trials), seed, detail::worker_count());
  auto f = detail::open_out(o.out_dir, "simulate_" + std::string(to_string(mods.front())) + "_f" +
                                           std::to_string(fs.frame_bytes) + ".csv");
  csv::write_simulation(f, res);
  out << "simulate: " << res.successes << "/" << res.trials << " received, empirical PRR "
      << csv::number(res.empirical_prr) << ", analytic " << csv::number(prr(mods.front(), g, fs).value)
      << '\n';
  return kExitOk;
}

inline int cmd_ensemble(const Options& o, std::ostream& out) {
  const std::uint64_t seed = require_seed(o);
  RadioProfile r = detail::resolve_radio(o.radio);
  detail::override_radio(r, o.mod, o.frame);
  const ChannelProfile ch = detail::resolve_channel(o.channel);
  if (o.distance.empty()) throw UsageError("--distance is required");
  for (double d : o.distance)
    if (!(d > 0.0) || !std::isfinite(d)) throw UsageError("--distance values must be > 0");
  if (o.draws < 1) throw UsageError("--draws must be >= 1");

  std::vector<PrrEnsemble> rows;
  for (double d : o.distance)
    rows.push_back(shadowed_prr_ensemble(d, r, ch, static_cast<std::uint64_t>(o.draws), seed,
                                         detail::worker_count()));
  auto f = detail::open_out(o.out_dir, "ensemble_" + detail::file_tag(detail::label(r)) + ".csv");
  csv::write_ensembles(f, rows);
  csv::write_ensembles(out, rows);
  return kExitOk;
}

/// Parses argv and runs one subcommand. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{
      "Analytic low-power wireless link model: PRR vs SNR and distance.\n"
      "All SNR flags are decibel power ratios (figure axes labelled 'dBm' elsewhere are "
      "read as dB)."};
  app.name("wsnlink");
  app.require_subcommand(1, 1);
  Options o;

  auto add_mod = [&](CLI::App* c) {
    c->add_option("--mod", o.mod, "modulation(s): ncfsk,cfsk,bpsk,dpsk")->delimiter(',');
  };
  auto add_frame = [&](CLI::App* c) {
    c->add_option("--frame", o.frame, "frame size(s) in bytes")->delimiter(',');
  };
  auto add_radio = [&](CLI::App* c) {
    c->add_option("--radio", o.radio, "built-in radio (mica2, tinynode) or radio JSON file");
    c->add_option("--channel", o.channel, "channel JSON file (default: d0=1, PL0=55, n=4, sigma=4)");
  };
  auto add_dist = [&](CLI::App* c) {
    c->add_option("--d-min", o.d_min, "first distance (m)");
    c->add_option("--d-max", o.d_max, "last distance (m)");
    c->add_option("--d-step", o.d_step, "distance step (m)");
  };
  auto add_out = [&](CLI::App* c) {
    c->add_option("--out-dir", o.out_dir, "output directory")->capture_default_str();
  };
  auto add_svg = [&](CLI::App* c) { c->add_flag("--svg", o.svg, "also write an SVG plot"); };

  auto* response = app.add_subcommand("response", "PRR vs SNR per modulation and frame size");
  add_mod(response);
  add_frame(response);
  response->add_option("--snr-min", o.snr_min, "lowest SNR (dB)");
  response->add_option("--snr-max", o.snr_max, "highest SNR (dB)");
  response->add_option("--step", o.step, "SNR step (dB)");
  add_out(response);
  add_svg(response);

  auto* curve = app.add_subcommand("curve", "mean-channel PRR vs distance for one radio");
  add_radio(curve);
  add_mod(curve);
  add_frame(curve);
  add_dist(curve);
  add_out(curve);
  add_svg(curve);

  auto* regions = app.add_subcommand("regions", "connected/transitional radii for one radio");
  add_radio(regions);
  add_mod(regions);
  add_frame(regions);
  regions->add_option("--confidence", o.confidence, "probability level of the shadowed radii");
  regions->add_option("--draws", o.draws, "shadowing draws");
  regions->add_option("--seed", o.seed, "root seed (default 1)");
  add_out(regions);

  auto* compare = app.add_subcommand("compare", "PRR curves and radii side by side");
  compare->add_option("--radios", o.radios, "radios to compare")->delimiter(',');
  compare->add_option("--mods", o.mods, "modulations to compare on --radio")->delimiter(',');
  add_radio(compare);
  add_mod(compare);
  add_frame(compare);
  add_dist(compare);
  add_out(compare);
  add_svg(compare);

  auto* simulate = app.add_subcommand("simulate", "Bernoulli packet trials at a fixed SNR");
  add_mod(simulate);
  add_frame(simulate);
  simulate->add_option("--snr-db", o.snr_db, "SNR (dB)")->required();
  simulate->add_option("--trials", o.trials, "packets sent");
  simulate->add_option("--seed", o.seed, "root seed")->required();
  add_out(simulate);

  auto* ensemble = app.add_subcommand("ensemble", "PRR distribution under shadowing");
  add_radio(ensemble);
  add_mod(ensemble);
  add_frame(ensemble);
  ensemble->add_option("--distance", o.distance, "distance(s) in m")->delimiter(',')->required();
  ensemble->add_option("--draws", o.draws, "shadowing draws");
  ensemble->add_option("--seed", o.seed, "root seed")->required();
  add_out(ensemble);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  auto* sub = app.get_subcommands().front();
  try {
    if (sub == response) return cmd_response(o, out);
    if (sub == curve) return cmd_curve(o, out);
    if (sub == regions) return cmd_regions(o, out);
    if (sub == compare) return cmd_compare(o, out);
    if (sub == simulate) return cmd_simulate(o, out);
    return cmd_ensemble(o, out);
  } catch (const UnboundedRegion& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << sub->help();
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LookupError& e) {
    err << "error: " << e.what() << "\n\n" << sub->help();
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace wsnlink::cli
