#pragma once

#include <cmath>
#include <string>

#include "wsnlink/errors.hpp"
#include "wsnlink/rng.hpp"

namespace wsnlink {

/// Path loss in dB.
struct PathLossDb {
  double value = 0.0;
};

/// Signal-to-noise ratio in decibels (link budget output).
struct SnrDb {
  double value = 0.0;
};

/// Signal-to-noise ratio as a power ratio (BER kernel input).
struct SnrLinear {
  double value = 0.0;
};

/**
 * Log-normal shadowing environment.
 *
 *   PL(d) = pl_d0 + 10 n log10(d / d0) + X,   X ~ Normal(0, sigma^2)
 *
 * sigma == 0 gives the deterministic mean model.
 */
struct ChannelProfile {
  double d0_m = 1.0;       ///< reference distance (m)
  double pl_d0_db = 55.0;  ///< path loss at d0 (dB)
  double n = 4.0;          ///< path loss exponent
  double sigma_db = 4.0;   ///< shadowing standard deviation (dB)

  /// Throws ConfigError naming the first violated field.
  void validate() const {
    if (!std::isfinite(d0_m) || d0_m <= 0.0)
      throw ConfigError("channel: d0_m must be > 0, got " + std::to_string(d0_m));
    if (!std::isfinite(pl_d0_db) || pl_d0_db < 0.0)
      throw ConfigError("channel: pl_d0_db must be >= 0, got " + std::to_string(pl_d0_db));
    if (!std::isfinite(n) || n <= 0.0)
      throw ConfigError("channel: n must be > 0, got " + std::to_string(n));
    if (!std::isfinite(sigma_db) || sigma_db < 0.0)
      throw ConfigError("channel: sigma_db must be >= 0, got " + std::to_string(sigma_db));
  }

  /// Same environment with shadowing removed.
  ChannelProfile mean_only() const {
    ChannelProfile c = *this;
    c.sigma_db = 0.0;
    return c;
  }

  friend bool operator==(const ChannelProfile&, const ChannelProfile&) = default;
};

/// Default indoor environment: d0 = 1 m, PL(d0) = 55 dB, n = 4, sigma = 4 dB.
inline ChannelProfile default_channel() { return ChannelProfile{}; }

inline PathLossDb mean_path_loss(double d_m, const ChannelProfile& ch) {
  if (!std::isfinite(d_m) || d_m <= 0.0)
    throw DomainError("mean_path_loss: distance must be finite and > 0");
  return {ch.pl_d0_db + 10.0 * ch.n * std::log10(d_m / ch.d0_m)};
}

/// One draw of the shadowing term X in dB. Exactly 0 when sigma is 0
/// (no randomness is consumed in that case).
inline double sample_shadowing(const ChannelProfile& ch, Rng& rng) {
  if (ch.sigma_db == 0.0) return 0.0;
  return ch.sigma_db * rng.standard_normal();
}

inline PathLossDb sampled_path_loss(double d_m, const ChannelProfile& ch, Rng& rng) {
  const PathLossDb mean = mean_path_loss(d_m, ch);
  return {mean.value + sample_shadowing(ch, rng)};
}

/// Link budget: SNR = Pt - PL - Pn, all in dB(m). The distance is implied
/// by `pl`; the caller picks the mean or a sampled path loss.
inline SnrDb snr_db(double pt_dbm, double pn_dbm, PathLossDb pl) {
  const double s = pt_dbm - pl.value - pn_dbm;
  if (!std::isfinite(s)) throw DomainError("snr_db: non-finite link budget");
  return {s};
}

/// Inverse of the mean path loss: the distance at which PL(d) == pl.
inline double distance_for_path_loss(PathLossDb pl, const ChannelProfile& ch) {
  return ch.d0_m * std::pow(10.0, (pl.value - ch.pl_d0_db) / (10.0 * ch.n));
}

}  // namespace wsnlink
