#pragma once

// Curve parameter files are line-oriented `key = value` documents:
//
//   # comment
//   label      = toy-weierstrass-28
//   form       = weierstrass | twisted_edwards
//   prime      = <decimal>
//   a          = <decimal, reduced mod prime>
//   b          = <decimal>          (weierstrass)
//   d          = <decimal>          (twisted_edwards)
//   gx, gy     = <decimal>          generator coordinates
//   order      = <decimal>          prime order of the generator
//   cofactor   = <decimal>
//   attackable = true | false
//
// Unknown keys are rejected so typos surface as errors.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "qchain/core/error.hpp"
#include "qchain/ec/curve.hpp"

namespace qchain::ec {

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

template <FieldInt Int>
CurveParams<Int> parse_curve_params(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto body = detail::trim(line);
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno), "expected key = value");
    auto key = detail::trim(std::string_view(body).substr(0, eq));
    auto value = detail::trim(std::string_view(body).substr(eq + 1));
    if (!kv.emplace(key, value).second) throw ConfigError(key, "duplicate key");
  }

  CurveParams<Int> out;
  auto take = [&](const std::string& key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError(key, "missing key");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto take_int = [&](const std::string& key) -> Int {
    auto v = take(key);
    try {
      return parse_int<Int>(v);
    } catch (const std::exception& e) {
      throw ConfigError(key, e.what());
    }
  };

  out.label = take("label");
  auto form = take("form");
  if (form == "weierstrass") {
    out.form = CurveForm::weierstrass;
  } else if (form == "twisted_edwards") {
    out.form = CurveForm::twisted_edwards;
  } else {
    throw ConfigError("form", "expected weierstrass or twisted_edwards, got '" + form + "'");
  }
  out.prime = take_int("prime");
  out.a = take_int("a");
  out.coeff = take_int(out.form == CurveForm::weierstrass ? "b" : "d");
  out.gx = take_int("gx");
  out.gy = take_int("gy");
  out.order = take_int("order");
  out.cofactor = take_int("cofactor");
  auto attackable = take("attackable");
  if (attackable != "true" && attackable != "false") throw ConfigError("attackable", "expected true or false");
  out.attackable = attackable == "true";
  if (!kv.empty()) throw ConfigError(kv.begin()->first, "unknown key");
  return out;
}

template <FieldInt Int>
CurveGroup<Int> load_curve(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(path, "cannot open curve file");
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return CurveGroup<Int>(parse_curve_params<Int>(ss.str()));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

template <FieldInt Int>
std::string format_curve_params(const CurveParams<Int>& c) {
  std::ostringstream out;
  out << "label = " << c.label << '\n'
      << "form = " << to_string(c.form) << '\n'
      << "prime = " << to_string(c.prime) << '\n'
      << "a = " << to_string(c.a) << '\n'
      << (c.form == CurveForm::weierstrass ? "b = " : "d = ") << to_string(c.coeff) << '\n'
      << "gx = " << to_string(c.gx) << '\n'
      << "gy = " << to_string(c.gy) << '\n'
      << "order = " << to_string(c.order) << '\n'
      << "cofactor = " << to_string(c.cofactor) << '\n'
      << "attackable = " << (c.attackable ? "true" : "false") << '\n';
  return out.str();
}

// Built-in groups. The toy curves come from tools/find_toy_curves.py; the
// copies under data/curves/ are checked against these by the test suite.

inline const ToyGroup& toy_weierstrass() {
  static const ToyGroup g(CurveParams<ToyInt>{
      .label = "toy-weierstrass-28",
      .form = CurveForm::weierstrass,
      .prime = 268435399,
      .a = 268435396,
      .coeff = 3,
      .gx = 1,
      .gy = 1,
      .order = 268407199,
      .cofactor = 1,
      .attackable = true,
  });
  return g;
}

inline const ToyGroup& toy_edwards() {
  static const ToyGroup g(CurveParams<ToyInt>{
      .label = "toy-edwards-28",
      .form = CurveForm::twisted_edwards,
      .prime = 1073741789,
      .a = 1073741788,
      .coeff = 98,
      .gx = 260803420,
      .gy = 799390230,
      .order = 268437097,
      .cofactor = 4,
      .attackable = true,
  });
  return g;
}

inline const CurveGroup<u256>& secp256k1() {
  static const CurveGroup<u256> g(parse_curve_params<u256>(R"(
label = secp256k1
form = weierstrass
prime = 115792089237316195423570985008687907853269984665640564039457584007908834671663
a = 0
b = 7
gx = 55066263022277343669578718895168534326250603453777594175500187360389116729240
gy = 32670510020758816978083085130507043184471273380659243275938904335757337482424
order = 115792089237316195423570985008687907852837564279074904382605163141518161494337
cofactor = 1
attackable = false
)"));
  return g;
}

inline const CurveGroup<u256>& ed25519() {
  static const CurveGroup<u256> g(parse_curve_params<u256>(R"(
label = ed25519
form = twisted_edwards
prime = 57896044618658097711785492504343953926634992332820282019728792003956564819949
a = 57896044618658097711785492504343953926634992332820282019728792003956564819948
d = 37095705934669439343138083508754565189542113879843219016388785533085940283555
gx = 15112221349535400772501151409588531511454012693041857206046113283949847762202
gy = 46316835694926478169428394003475163141307993866256225615783033603165251855960
order = 7237005577332262213973186563042994240857116359379907606001950938285454250989
cofactor = 8
attackable = false
)"));
  return g;
}

/// Looks up a built-in toy group by label.
inline const ToyGroup& toy_group(std::string_view label) {
  if (label == toy_weierstrass().label()) return toy_weierstrass();
  if (label == toy_edwards().label()) return toy_edwards();
  throw ConfigError("curve", "unknown toy curve '" + std::string(label) + "'");
}

}  // namespace qchain::ec
