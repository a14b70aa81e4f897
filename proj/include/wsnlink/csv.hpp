#pragma once

#include <cstdio>
#include <ostream>
#include <span>
#include <string>

#include "wsnlink/link.hpp"
#include "wsnlink/montecarlo.hpp"

namespace wsnlink::csv {

inline constexpr const char* kResponseHeader = "snr_db,prr";
inline constexpr const char* kDistanceHeader = "distance_m,prr";
inline constexpr const char* kEnsembleHeader =
    "distance_m,mean_prr,std_prr,p05,p25,p50,p75,p95";
inline constexpr const char* kSimulationHeader = "trials,successes,empirical_prr,seed";

/// Shortest-looking form with 10 significant digits ("%.10g").
inline std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline void write_curve(std::ostream& out, const char* header, std::span<const CurvePoint> pts) {
  out << header << '\n';
  for (const auto& p : pts) out << number(p.x) << ',' << number(p.prr) << '\n';
}

inline void write_response(std::ostream& out, std::span<const CurvePoint> pts) {
  write_curve(out, kResponseHeader, pts);
}

inline void write_distance(std::ostream& out, std::span<const CurvePoint> pts) {
  write_curve(out, kDistanceHeader, pts);
}

inline void write_ensemble_row(std::ostream& out, const PrrEnsemble& e) {
  out << number(e.distance_m) << ',' << number(e.mean) << ',' << number(e.std_dev);
  for (double q : e.quantiles) out << ',' << number(q);
  out << '\n';
}

inline void write_ensembles(std::ostream& out, std::span<const PrrEnsemble> rows) {
  out << kEnsembleHeader << '\n';
  for (const auto& e : rows) write_ensemble_row(out, e);
}

inline void write_simulation(std::ostream& out, const SimulationResult& r) {
  out << kSimulationHeader << '\n'
      << r.trials << ',' << r.successes << ',' << number(r.empirical_prr) << ',' << r.seed
      << '\n';
}

}  // namespace wsnlink::csv
