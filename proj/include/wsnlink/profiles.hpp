#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "wsnlink/channel.hpp"
#include "wsnlink/errors.hpp"
#include "wsnlink/link.hpp"
#include "wsnlink/modem.hpp"

namespace wsnlink {

/// Built-in radios. Both default to NCFSK with a 50-byte frame and a
/// 2-byte preamble; the modulation is an assumption (both parts carry FSK
/// transceivers) and can be overridden.
inline RadioProfile builtin_radio(std::string_view name) {
  if (name == "mica2") return {"mica2", 5.0, -104.0, Modulation::ncfsk, {50, 2}};
  if (name == "tinynode") return {"tinynode", 12.0, -116.0, Modulation::ncfsk, {50, 2}};
  throw LookupError("unknown radio '" + std::string(name) + "' (valid: mica2, tinynode)");
}

inline bool is_builtin_radio(std::string_view name) {
  return name == "mica2" || name == "tinynode";
}

using Json = nlohmann::ordered_json;

namespace detail {

inline void reject_unknown_keys(const Json& j, std::initializer_list<std::string_view> known,
                                std::string_view what) {
  if (!j.is_object())
    throw ConfigError(std::string(what) + ": expected a JSON object", ConfigErrorKind::wrong_type);
  for (const auto& item : j.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || item.key() == k;
    if (!ok)
      throw ConfigError(std::string(what) + ": unknown key '" + item.key() + "'",
                        ConfigErrorKind::unknown_key);
  }
}

inline const Json& require(const Json& j, const char* key, std::string_view what) {
  auto it = j.find(key);
  if (it == j.end())
    throw ConfigError(std::string(what) + ": missing key '" + key + "'",
                      ConfigErrorKind::missing_key);
  return *it;
}

inline double get_number(const Json& j, const char* key, std::string_view what) {
  const Json& v = require(j, key, what);
  if (!v.is_number())
    throw ConfigError(std::string(what) + ": '" + key + "' must be a number",
                      ConfigErrorKind::wrong_type);
  return v.get<double>();
}

inline int get_integer(const Json& j, const char* key, std::string_view what) {
  const Json& v = require(j, key, what);
  if (!v.is_number_integer())
    throw ConfigError(std::string(what) + ": '" + key + "' must be an integer",
                      ConfigErrorKind::wrong_type);
  return v.get<int>();
}

inline std::string get_string(const Json& j, const char* key, std::string_view what) {
  const Json& v = require(j, key, what);
  if (!v.is_string())
    throw ConfigError(std::string(what) + ": '" + key + "' must be a string",
                      ConfigErrorKind::wrong_type);
  return v.get<std::string>();
}

inline Json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string(), ConfigErrorKind::parse);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what(), ConfigErrorKind::parse);
  }
}

inline void write_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string(), ConfigErrorKind::parse);
  out << j.dump(2) << '\n';
}

}  // namespace detail

inline Json to_json(const ChannelProfile& ch) {
  return Json{{"d0_m", ch.d0_m}, {"pl_d0_db", ch.pl_d0_db}, {"n", ch.n}, {"sigma_db", ch.sigma_db}};
}

inline Json to_json(const RadioProfile& r) {
  return Json{{"name", r.name},
              {"pt_dbm", r.pt_dbm},
              {"pn_dbm", r.pn_dbm},
              {"modulation", std::string(to_string(r.modulation))},
              {"frame_bytes", r.frame.frame_bytes},
              {"preamble_bytes", r.frame.preamble_bytes}};
}

/// Strict: every key required, unknown keys rejected, invariants checked.
inline ChannelProfile channel_from_json(const Json& j) {
  constexpr std::string_view what = "channel";
  detail::reject_unknown_keys(j, {"d0_m", "pl_d0_db", "n", "sigma_db"}, what);
  ChannelProfile ch{detail::get_number(j, "d0_m", what), detail::get_number(j, "pl_d0_db", what),
                    detail::get_number(j, "n", what), detail::get_number(j, "sigma_db", what)};
  ch.validate();
  return ch;
}

inline RadioProfile radio_from_json(const Json& j) {
  constexpr std::string_view what = "radio";
  detail::reject_unknown_keys(
      j, {"name", "pt_dbm", "pn_dbm", "modulation", "frame_bytes", "preamble_bytes"}, what);
  RadioProfile r;
  r.name = detail::get_string(j, "name", what);
  r.pt_dbm = detail::get_number(j, "pt_dbm", what);
  r.pn_dbm = detail::get_number(j, "pn_dbm", what);
  const std::string mod = detail::get_string(j, "modulation", what);
  try {
    r.modulation = parse_modulation(mod);
  } catch (const LookupError& e) {
    throw ConfigError(std::string("radio: ") + e.what(), ConfigErrorKind::invariant);
  }
  r.frame = {detail::get_integer(j, "frame_bytes", what),
             detail::get_integer(j, "preamble_bytes", what)};
  r.validate();
  return r;
}

inline ChannelProfile load_channel(const std::filesystem::path& path) {
  return channel_from_json(detail::parse_file(path));
}

inline RadioProfile load_radio(const std::filesystem::path& path) {
  return radio_from_json(detail::parse_file(path));
}

inline void save_channel(const std::filesystem::path& path, const ChannelProfile& ch) {
  detail::write_file(path, to_json(ch));
}

inline void save_radio(const std::filesystem::path& path, const RadioProfile& r) {
  detail::write_file(path, to_json(r));
}

}  // namespace wsnlink
