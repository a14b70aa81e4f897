#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "wsnlink/channel.hpp"
#include "wsnlink/errors.hpp"

namespace wsnlink {

enum class Modulation { ncfsk, cfsk, bpsk, dpsk };

inline constexpr std::array<Modulation, 4> kAllModulations = {
    Modulation::ncfsk, Modulation::cfsk, Modulation::bpsk, Modulation::dpsk};

constexpr std::string_view to_string(Modulation m) noexcept {
  switch (m) {
    case Modulation::ncfsk: return "ncfsk";
    case Modulation::cfsk: return "cfsk";
    case Modulation::bpsk: return "bpsk";
    case Modulation::dpsk: return "dpsk";
  }
  return "?";
}

/// Exact, case-sensitive match against the lowercase scheme names.
inline Modulation parse_modulation(std::string_view name) {
  for (Modulation m : kAllModulations)
    if (to_string(m) == name) return m;
  throw LookupError("unknown modulation '" + std::string(name) +
                    "' (valid: ncfsk, cfsk, bpsk, dpsk)");
}

/// Bit error probability.
struct BitErrorProb {
  double value = 0.0;
};

/// Upper tail of the standard normal, Q(x) = erfc(x / sqrt 2) / 2.
inline double q_function(double x) {
  return 0.5 * std::erfc(x * std::numbers::sqrt2 * 0.5);
}

/// log Q(x), finite for every finite x. Past x = 30, where Q heads for
/// underflow, uses the asymptotic expansion of the Mills ratio.
inline double log_q_function(double x) {
  if (x < 0.0) return std::log1p(-q_function(-x));
  if (x < 30.0) return std::log(q_function(x));
  const double inv_x2 = 1.0 / (x * x);
  // 1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8 - 945/x^10 + 10395/x^12
  double series = 1.0, term = 1.0;
  for (int k = 1; k <= 6; ++k) {
    term *= -(2.0 * k - 1.0) * inv_x2;
    series += term;
  }
  return -0.5 * x * x - std::log(x) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(series);
}

inline SnrLinear snr_db_to_linear(SnrDb s) { return {std::pow(10.0, s.value / 10.0)}; }

inline SnrDb snr_linear_to_db(SnrLinear g) {
  if (!(g.value > 0.0) || !std::isfinite(g.value))
    throw DomainError("snr_linear_to_db: ratio must be finite and > 0");
  return {10.0 * std::log10(g.value)};
}

namespace detail {
inline void check_snr(SnrLinear g) {
  if (std::isnan(g.value) || g.value < 0.0)
    throw DomainError("ber: SNR ratio must be >= 0");
}
}  // namespace detail

/**
 * Bit error probability of a binary scheme at linear SNR g:
 *
 *   ncfsk  exp(-g/2) / 2
 *   cfsk   Q(sqrt g)
 *   bpsk   Q(sqrt 2g)
 *   dpsk   exp(-g) / 2
 *
 * Every kernel is 0.5 at g = 0. Large g underflows to 0 (PRR then
 * saturates at 1); log_ber keeps the tail.
 */
inline BitErrorProb ber(Modulation m, SnrLinear g) {
  detail::check_snr(g);
  switch (m) {
    case Modulation::ncfsk: return {0.5 * std::exp(-0.5 * g.value)};
    case Modulation::cfsk: return {q_function(std::sqrt(g.value))};
    case Modulation::bpsk: return {q_function(std::sqrt(2.0 * g.value))};
    case Modulation::dpsk: return {0.5 * std::exp(-g.value)};
  }
  throw DomainError("ber: invalid modulation");
}

/// Natural log of ber(m, g), without underflow.
inline double log_ber(Modulation m, SnrLinear g) {
  detail::check_snr(g);
  switch (m) {
    case Modulation::ncfsk: return -std::numbers::ln2 - 0.5 * g.value;
    case Modulation::cfsk: return log_q_function(std::sqrt(g.value));
    case Modulation::bpsk: return log_q_function(std::sqrt(2.0 * g.value));
    case Modulation::dpsk: return -std::numbers::ln2 - g.value;
  }
  throw DomainError("log_ber: invalid modulation");
}

}  // namespace wsnlink
