#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <string>

#include "json.hpp"
#include "qchain/core/error.hpp"

namespace qchain::adversary {

enum class ProblemFamily { ec_dlog, rsa_factor };

NLOHMANN_JSON_SERIALIZE_ENUM(ProblemFamily, {{ProblemFamily::ec_dlog, "ec_dlog"},
                                             {ProblemFamily::rsa_factor, "rsa_factor"}})

/// One measured point of the Shor cost curve: a problem of `bits` bits takes
/// `seconds` on a device clocked at `clock_hz`. Together with the cubic law
/// it fixes c in  ops = c * bits^3.
struct ShorAnchor {
  int bits{256};
  double clock_hz{1e10};
  double seconds{1800};

  double constant() const { return seconds * clock_hz / std::pow(static_cast<double>(bits), 3); }
  friend bool operator==(const ShorAnchor&, const ShorAnchor&) = default;
};

inline constexpr double kQubitsAt256 = 485550.0;

struct QuantumAdversaryProfile {
  std::string name{"reference"};
  double clock_speed_hz{1e10};
  long long qubit_count{485550};
  std::map<ProblemFamily, ShorAnchor> shor_calibration{
      {ProblemFamily::ec_dlog, {256, 1e10, 1800}},      // 256-bit EC log in 30 minutes at 10 GHz
      {ProblemFamily::rsa_factor, {2048, 1e7, 2520}},  // RSA-2048 in 42 minutes at 10 MHz
  };
  double qubit_scaling{kQubitsAt256 / 256.0};  // qubits per key bit

  friend bool operator==(const QuantumAdversaryProfile&, const QuantumAdversaryProfile&) = default;

  QuantumAdversaryProfile with_clock(double hz) const {
    auto p = *this;
    p.clock_speed_hz = hz;
    return p;
  }
};

inline void validate(const QuantumAdversaryProfile& p) {
  if (!(p.clock_speed_hz > 0) || !std::isfinite(p.clock_speed_hz)) throw ConfigError("clock_speed_hz", "must be > 0");
  if (p.qubit_count < 0) throw ConfigError("qubit_count", "must be >= 0");
  if (!(p.qubit_scaling > 0)) throw ConfigError("qubit_scaling", "must be > 0");
  for (auto fam : {ProblemFamily::ec_dlog, ProblemFamily::rsa_factor}) {
    auto it = p.shor_calibration.find(fam);
    const std::string field = "shor_calibration." + nlohmann::json(fam).get<std::string>();
    if (it == p.shor_calibration.end()) throw ConfigError(field, "missing");
    if (it->second.bits < 1 || !(it->second.clock_hz > 0) || !(it->second.seconds > 0))
      throw ConfigError(field, "anchor needs bits >= 1, clock_hz > 0, seconds > 0");
  }
}

inline void to_json(nlohmann::json& j, const QuantumAdversaryProfile& p) {
  nlohmann::json cal = nlohmann::json::object();
  for (const auto& [fam, a] : p.shor_calibration)
    cal[nlohmann::json(fam).get<std::string>()] = {{"bits", a.bits}, {"clock_hz", a.clock_hz}, {"seconds", a.seconds}};
  j = {{"name", p.name},
       {"clock_speed_hz", p.clock_speed_hz},
       {"qubit_count", p.qubit_count},
       {"qubit_scaling", p.qubit_scaling},
       {"shor_calibration", cal}};
}

/// Profile documents: clock_speed_hz is required; qubit_count, qubit_scaling
/// and per-family calibration anchors override the defaults.
inline void from_json(const nlohmann::json& j, QuantumAdversaryProfile& p) {
  if (!j.is_object()) throw ConfigError("", "profile must be a JSON object");
  p = QuantumAdversaryProfile{};
  for (const auto& [key, _] : j.items())
    if (key != "name" && key != "clock_speed_hz" && key != "qubit_count" && key != "qubit_scaling" &&
        key != "shor_calibration")
      throw ConfigError(key, "unknown key");
  auto number = [&](const nlohmann::json& obj, const std::string& key, const std::string& field) {
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(field, "must be a number");
    return v.get<double>();
  };
  if (!j.contains("clock_speed_hz")) throw ConfigError("clock_speed_hz", "required");
  p.clock_speed_hz = number(j, "clock_speed_hz", "clock_speed_hz");
  if (j.contains("name")) p.name = j.at("name").get<std::string>();
  if (j.contains("qubit_count")) {
    if (!j.at("qubit_count").is_number_integer()) throw ConfigError("qubit_count", "must be an integer");
    p.qubit_count = j.at("qubit_count").get<long long>();
  }
  if (j.contains("qubit_scaling")) p.qubit_scaling = number(j, "qubit_scaling", "qubit_scaling");
  if (j.contains("shor_calibration")) {
    const auto& cal = j.at("shor_calibration");
    if (!cal.is_object()) throw ConfigError("shor_calibration", "must be an object");
    for (const auto& [fam_name, anchor] : cal.items()) {
      const std::string field = "shor_calibration." + fam_name;
      if (fam_name != "ec_dlog" && fam_name != "rsa_factor") throw ConfigError(field, "unknown problem family");
      if (!anchor.is_object() || !anchor.contains("bits") || !anchor.contains("clock_hz") || !anchor.contains("seconds"))
        throw ConfigError(field, "anchor needs bits, clock_hz and seconds");
      ShorAnchor a;
      a.bits = static_cast<int>(number(anchor, "bits", field + ".bits"));
      a.clock_hz = number(anchor, "clock_hz", field + ".clock_hz");
      a.seconds = number(anchor, "seconds", field + ".seconds");
      p.shor_calibration[nlohmann::json(fam_name).get<ProblemFamily>()] = a;
    }
  }
  validate(p);
}

inline QuantumAdversaryProfile parse_profile(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("", std::string("profile is not valid JSON: ") + e.what());
  }
  return j.get<QuantumAdversaryProfile>();
}

inline QuantumAdversaryProfile load_profile(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(path, "cannot open adversary profile");
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  try {
    return parse_profile(text);
  } catch (const ConfigError& e) {
    throw ConfigError(e.field(), e.detail() + " (in " + path + ")");
  }
}

}  // namespace qchain::adversary
