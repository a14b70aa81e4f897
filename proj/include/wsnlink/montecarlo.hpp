#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <thread>
#include <vector>

#include "wsnlink/channel.hpp"
#include "wsnlink/errors.hpp"
#include "wsnlink/link.hpp"
#include "wsnlink/rng.hpp"

namespace wsnlink {

/// Work unit of every seeded batch. Block b draws from
/// Rng(substream_seed(seed, b)), whichever worker runs it.
inline constexpr std::size_t kBlockSize = 4096;

namespace detail {

/// Runs fn(block) for every block in [0, n_blocks), striped over `workers`
/// threads. fn must only touch state owned by its block.
template <class Fn>
void for_each_block(std::size_t n_blocks, unsigned workers, Fn&& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n_blocks)));
  if (workers <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) fn(b);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t b = w; b < n_blocks; b += workers) fn(b);
    });
}

inline std::size_t block_count(std::uint64_t n) {
  return static_cast<std::size_t>((n + kBlockSize - 1) / kBlockSize);
}

}  // namespace detail

/// Outcome of r packet transmissions.
struct SimulationResult {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double empirical_prr = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const SimulationResult&, const SimulationResult&) = default;
};

/**
 * Sends `trials` packets, each received with probability
 * p = prr(m, g, frame). One Bernoulli(p) draw per packet is distributed
 * exactly like 8f independent bit draws that must all succeed, since
 * P[all bits ok] = (1 - Pe)^(8f) = p.
 */
inline SimulationResult simulate_packets(Modulation m, SnrLinear g, const FrameSpec& frame,
                                         std::uint64_t trials, std::uint64_t seed,
                                         unsigned workers = 1) {
  if (trials < 1) throw DomainError("simulate_packets: trials must be >= 1");
  frame.validate();
  const double p = prr(m, g, frame).value;
  const std::size_t n_blocks = detail::block_count(trials);
  std::vector<std::uint64_t> hits(n_blocks, 0);
  detail::for_each_block(n_blocks, workers, [&](std::size_t b) {
    Rng rng(substream_seed(seed, b));
    const std::uint64_t begin = b * kBlockSize;
    const std::uint64_t end = std::min<std::uint64_t>(trials, begin + kBlockSize);
    std::uint64_t count = 0;
    for (std::uint64_t i = begin; i < end; ++i) count += rng.bernoulli(p) ? 1 : 0;
    hits[b] = count;
  });
  const std::uint64_t successes = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  return {trials, successes, static_cast<double>(successes) / static_cast<double>(trials), seed};
}

/// `k` shadowing offsets X ~ Normal(0, sigma^2) in dB, in block order.
inline std::vector<double> shadowing_draws(const ChannelProfile& ch, std::uint64_t k,
                                           std::uint64_t seed, unsigned workers = 1) {
  if (k < 1) throw DomainError("shadowing_draws: draws must be >= 1");
  std::vector<double> xs(static_cast<std::size_t>(k));
  detail::for_each_block(detail::block_count(k), workers, [&](std::size_t b) {
    Rng rng(substream_seed(seed, b));
    const std::size_t begin = b * kBlockSize;
    const std::size_t end = std::min<std::size_t>(xs.size(), begin + kBlockSize);
    for (std::size_t i = begin; i < end; ++i) xs[i] = sample_shadowing(ch, rng);
  });
  return xs;
}

/// PRR at distance d with the path loss shifted by `shadow_db`.
inline Prr shadowed_prr(double d_m, double shadow_db, const RadioProfile& radio,
                        const ChannelProfile& ch) {
  const PathLossDb pl{mean_path_loss(d_m, ch).value + shadow_db};
  return prr(radio.modulation, snr_db_to_linear(snr_db(radio.pt_dbm, radio.pn_dbm, pl)),
             radio.frame);
}

/// Distribution of PRR at one distance across shadowing draws.
struct PrrEnsemble {
  double distance_m = 0.0;
  std::uint64_t draws = 0;
  std::vector<double> prr_values;  ///< draw order
  double mean = 0.0;
  double std_dev = 0.0;  ///< population (divide by k)
  std::array<double, 5> quantiles{};  ///< 5, 25, 50, 75, 95 %

  static constexpr std::array<double, 5> kQuantileLevels = {0.05, 0.25, 0.50, 0.75, 0.95};
};

namespace detail {
/// Linear interpolation between order statistics (the "type 7" rule).
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(i);
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}
}  // namespace detail

inline PrrEnsemble shadowed_prr_ensemble(double d_m, const RadioProfile& radio,
                                         const ChannelProfile& ch, std::uint64_t k,
                                         std::uint64_t seed, unsigned workers = 1) {
  const std::vector<double> xs = shadowing_draws(ch, k, seed, workers);
  PrrEnsemble e;
  e.distance_m = d_m;
  e.draws = k;
  e.prr_values.reserve(xs.size());
  for (double x : xs) e.prr_values.push_back(shadowed_prr(d_m, x, radio, ch).value);

  // Moments of the values shifted by the first one: exact for a constant
  // ensemble and free of cancellation when PRRs cluster near 1.
  const double n = static_cast<double>(k);
  const double shift = e.prr_values.front();
  double s1 = 0.0, s2 = 0.0;
  for (double v : e.prr_values) {
    s1 += v - shift;
    s2 += (v - shift) * (v - shift);
  }
  e.mean = shift + s1 / n;
  e.std_dev = std::sqrt(std::max(0.0, s2 / n - (s1 / n) * (s1 / n)));

  std::vector<double> sorted = e.prr_values;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < e.quantiles.size(); ++i)
    e.quantiles[i] = detail::quantile_sorted(sorted, PrrEnsemble::kQuantileLevels[i]);
  return e;
}

/**
 * Region radii under shadowing.
 *
 * The connected radius is the largest d with P[PRR >= th.connected] >=
 * confidence; the transitional radius is the largest d with
 * P[PRR >= th.disconnected] >= 1 - confidence. Probabilities are the
 * fraction of `k` shadowing draws taken once from `seed` and reused at
 * every distance, which makes each estimate nonincreasing in d. With
 * sigma = 0 this is exactly region_bounds.
 */
inline LinkRegions probabilistic_region_bounds(const RadioProfile& radio,
                                               const ChannelProfile& ch,
                                               const RegionThresholds& th, double confidence,
                                               std::uint64_t k, std::uint64_t seed,
                                               unsigned workers = 1) {
  th.validate();
  if (!(confidence > 0.0 && confidence < 1.0))
    throw DomainError("probabilistic_region_bounds: confidence must lie in (0, 1)");
  const std::vector<double> xs = shadowing_draws(ch, k, seed, workers);
  auto radius = [&](double level, double required) {
    auto holds = [&](double d) {
      std::uint64_t ok = 0;
      for (double x : xs) ok += shadowed_prr(d, x, radio, ch).value >= level ? 1 : 0;
      return static_cast<double>(ok) / static_cast<double>(xs.size()) >= required;
    };
    return last_holding_distance(holds, ch.d0_m, kRegionCapM, kRegionTolM);
  };
  return {radius(th.connected, confidence), radius(th.disconnected, 1.0 - confidence), th};
}

}  // namespace wsnlink
