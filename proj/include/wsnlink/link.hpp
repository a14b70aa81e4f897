#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "wsnlink/channel.hpp"
#include "wsnlink/errors.hpp"
#include "wsnlink/modem.hpp"
#include "wsnlink/solve.hpp"

namespace wsnlink {

/// Frame geometry in bytes. frame_bytes counts the whole frame, preamble
/// included. Under NRZ the preamble does not change PRR.
struct FrameSpec {
  int frame_bytes = 50;
  int preamble_bytes = 2;

  void validate() const {
    if (frame_bytes < 1)
      throw ConfigError("frame: frame_bytes must be >= 1, got " + std::to_string(frame_bytes));
    if (preamble_bytes < 0 || preamble_bytes > frame_bytes)
      throw ConfigError("frame: preamble_bytes must be in [0, frame_bytes], got " +
                        std::to_string(preamble_bytes));
  }

  int bits() const noexcept { return 8 * frame_bytes; }

  friend bool operator==(const FrameSpec&, const FrameSpec&) = default;
};

/// Packet reception rate in [0, 1].
struct Prr {
  double value = 0.0;
};

/// PRR levels bounding the connected (above `connected`) and
/// disconnected (below `disconnected`) regions.
struct RegionThresholds {
  double connected = 0.9;
  double disconnected = 0.1;

  void validate() const {
    if (!(0.0 < disconnected && disconnected < connected && connected < 1.0))
      throw DomainError("thresholds: need 0 < disconnected < connected < 1");
  }
};

struct LinkRegions {
  double d_connected_end = 0.0;     ///< m; 0 means no connected region
  double d_transitional_end = 0.0;  ///< m
  RegionThresholds thresholds;
};

/// A radio as seen by the link budget.
struct RadioProfile {
  std::string name;
  double pt_dbm = 0.0;  ///< transmit power
  double pn_dbm = 0.0;  ///< noise floor
  Modulation modulation = Modulation::ncfsk;
  FrameSpec frame;

  void validate() const {
    if (!std::isfinite(pt_dbm) || !std::isfinite(pn_dbm))
      throw ConfigError("radio: pt_dbm and pn_dbm must be finite");
    if (!(pt_dbm > pn_dbm))
      throw ConfigError("radio: pt_dbm (" + std::to_string(pt_dbm) +
                        ") must exceed pn_dbm (" + std::to_string(pn_dbm) + ")");
    frame.validate();
  }

  /// Pt - Pn in dB.
  double margin_db() const noexcept { return pt_dbm - pn_dbm; }

  friend bool operator==(const RadioProfile&, const RadioProfile&) = default;
};

/// Results below this are reported as exactly 0.
inline constexpr double kPrrFloor = 1e-300;
/// Region searches give up past this distance (m).
inline constexpr double kRegionCapM = 1e6;
/// Distance resolution of region searches (m).
inline constexpr double kRegionTolM = 1e-6;

/// (1 - Pe)^(8f). The preamble factor (1 - Pe)^(8l) times the payload
/// factor (1 - Pe)^(8(f - l)) collapses to the whole-frame power.
inline Prr prr(Modulation m, SnrLinear g, const FrameSpec& frame) {
  const double pe = ber(m, g).value;
  const double p = std::exp(frame.bits() * std::log1p(-pe));
  return {p < kPrrFloor ? 0.0 : p};
}

/// Linear SNR at which the PRR reaches `target`, by bisection.
inline SnrLinear snr_for_prr(Modulation m, const FrameSpec& frame, Prr target) {
  if (!(target.value > 0.0 && target.value < 1.0))
    throw DomainError("snr_for_prr: target must lie strictly between 0 and 1");
  auto below = [&](double g) { return prr(m, {g}, frame).value < target.value; };
  if (!below(0.0))
    throw DomainError("snr_for_prr: target is already met at zero SNR");
  double hi = 1.0;
  while (below(hi)) hi *= 2.0;
  const double lo = hi == 1.0 ? 0.0 : 0.5 * hi;
  // Converge to double resolution; PRR accuracy is far inside 1e-9.
  double g = bisect_boundary(below, lo, hi, 0.0);
  return {g};
}

/// Mean-channel PRR at distance d.
inline Prr prr_at_distance(double d_m, const RadioProfile& radio, const ChannelProfile& ch) {
  const SnrDb s = snr_db(radio.pt_dbm, radio.pn_dbm, mean_path_loss(d_m, ch));
  return prr(radio.modulation, snr_db_to_linear(s), radio.frame);
}

/**
 * Connected and transitional radii on the mean channel. Each is the
 * distance where PRR falls through its threshold, searched outward from
 * d0. A threshold already missed at d0 yields radius 0.
 */
inline LinkRegions region_bounds(const RadioProfile& radio, const ChannelProfile& ch,
                                 const RegionThresholds& th = {}) {
  th.validate();
  auto radius = [&](double level) {
    return last_holding_distance(
        [&](double d) { return prr_at_distance(d, radio, ch).value >= level; }, ch.d0_m,
        kRegionCapM, kRegionTolM);
  };
  return {radius(th.connected), radius(th.disconnected), th};
}

/// d0 * 10^((Pt - Pn - PL(d0) - gamma*) / (10 n)). May fall below d0.
inline double region_radius_closed_form(const RadioProfile& radio, const ChannelProfile& ch,
                                        SnrDb gamma_star) {
  return distance_for_path_loss({radio.margin_db() - gamma_star.value}, ch);
}

struct CurvePoint {
  double x = 0.0;  ///< SNR (dB) or distance (m)
  double prr = 0.0;
};

namespace detail {
inline std::vector<double> grid(double lo, double hi, double step, const char* what) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step) || !(lo < hi) ||
      !(step > 0.0))
    throw DomainError(std::string(what) + ": need min < max and step > 0");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> xs;
  xs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) xs.push_back(lo + static_cast<double>(i) * step);
  return xs;
}
}  // namespace detail

/// PRR against SNR in dB, on min, min + step, ... up to max.
inline std::vector<CurvePoint> receiver_response_curve(Modulation m, const FrameSpec& frame,
                                                       double snr_min_db, double snr_max_db,
                                                       double step_db) {
  std::vector<CurvePoint> out;
  for (double s : detail::grid(snr_min_db, snr_max_db, step_db, "receiver_response_curve"))
    out.push_back({s, prr(m, snr_db_to_linear({s}), frame).value});
  return out;
}

/// Mean-channel PRR against distance.
inline std::vector<CurvePoint> prr_distance_curve(const RadioProfile& radio,
                                                  const ChannelProfile& ch, double d_min,
                                                  double d_max, double step) {
  if (!(d_min > 0.0)) throw DomainError("prr_distance_curve: d_min must be > 0");
  std::vector<CurvePoint> out;
  for (double d : detail::grid(d_min, d_max, step, "prr_distance_curve"))
    out.push_back({d, prr_at_distance(d, radio, ch).value});
  return out;
}

}  // namespace wsnlink
