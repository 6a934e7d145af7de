#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qchain/core/bytes.hpp"

namespace qchain::ec {

using u256 = boost::multiprecision::uint256_t;
using u512 = boost::multiprecision::uint512_t;

/// Maps a field integer type to the double-width type used for products.
/// Toy groups run on std::uint64_t; full-size curves on u256.
template <class Int>
struct IntTraits;

template <>
struct IntTraits<std::uint64_t> {
  using Wide = unsigned __int128;
  static constexpr int kBits = 64;
};

template <>
struct IntTraits<u256> {
  using Wide = u512;
  static constexpr int kBits = 256;
};

template <class Int>
concept FieldInt = requires { typename IntTraits<Int>::Wide; };

// All helpers assume operands already reduced below the modulus.

template <FieldInt Int>
Int add_mod(const Int& a, const Int& b, const Int& m) {
  return a >= m - b ? Int(a - (m - b)) : Int(a + b);
}

template <FieldInt Int>
Int sub_mod(const Int& a, const Int& b, const Int& m) {
  return a >= b ? Int(a - b) : Int(a + (m - b));
}

template <FieldInt Int>
Int neg_mod(const Int& a, const Int& m) {
  return a == 0 ? Int(0) : Int(m - a);
}

template <FieldInt Int>
Int mul_mod(const Int& a, const Int& b, const Int& m) {
  using W = typename IntTraits<Int>::Wide;
  return static_cast<Int>((W(a) * W(b)) % W(m));
}

template <FieldInt Int>
bool is_odd(const Int& a) {
  return (a & 1) != 0;
}

template <FieldInt Int>
Int pow_mod(Int base, Int exp, const Int& m) {
  Int result = m == 1 ? Int(0) : Int(1);
  base %= m;
  while (exp != 0) {
    if (is_odd(exp)) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Inverse by the extended Euclidean algorithm, tracking the Bezout
/// coefficient modulo m so everything stays unsigned.
template <FieldInt Int>
Int inv_mod(const Int& a, const Int& m) {
  Int r0 = m, r1 = a % m;
  Int t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int t2 = sub_mod(t0, mul_mod(Int(q % m), t1, m), m);
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) throw std::domain_error("value has no inverse modulo m");
  return t0;
}

/// Euler's criterion: 1 for non-zero squares, -1 for non-squares, 0 for zero.
template <FieldInt Int>
int legendre(const Int& a, const Int& p) {
  if (a % p == 0) return 0;
  return pow_mod(a, Int((p - 1) / 2), p) == 1 ? 1 : -1;
}

/// Tonelli-Shanks square root modulo an odd prime.
template <FieldInt Int>
std::optional<Int> sqrt_mod(Int a, const Int& p) {
  a %= p;
  if (a == 0) return Int(0);
  if (legendre(a, p) != 1) return std::nullopt;
  if (p % 4 == 3) return pow_mod(a, Int((p + 1) / 4), p);
  Int q = p - 1;
  unsigned s = 0;
  while (!is_odd(q)) {
    q >>= 1;
    ++s;
  }
  Int z = 2;
  while (legendre(z, p) != -1) z += 1;
  Int c = pow_mod(z, q, p);
  Int t = pow_mod(a, q, p);
  Int r = pow_mod(a, Int((q + 1) / 2), p);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    Int t2 = t;
    while (t2 != 1) {
      t2 = mul_mod(t2, t2, p);
      ++i;
    }
    Int b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
    m = i;
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    r = mul_mod(r, b, p);
  }
  return r;
}

template <FieldInt Int>
int bit_length(const Int& v) {
  if (v == 0) return 0;
  if constexpr (std::is_same_v<Int, std::uint64_t>) {
    return 64 - std::countl_zero(v);
  } else {
    return static_cast<int>(boost::multiprecision::msb(v)) + 1;
  }
}

/// Miller-Rabin with the first twelve prime bases; deterministic below 2^64.
template <FieldInt Int>
bool is_probable_prime(const Int& n) {
  if (n < 2) return false;
  static constexpr unsigned kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (unsigned b : kBases) {
    if (n % b == 0) return n == b;
  }
  Int d = n - 1;
  unsigned s = 0;
  while (!is_odd(d)) {
    d >>= 1;
    ++s;
  }
  for (unsigned b : kBases) {
    Int x = pow_mod(Int(b), d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

template <FieldInt Int>
Int parse_int(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("not a decimal integer: " + std::string(text));
  }
  if constexpr (std::is_same_v<Int, std::uint64_t>) {
    std::size_t pos = 0;
    auto v = std::stoull(std::string(text), &pos, 10);
    return v;
  } else {
    boost::multiprecision::cpp_int big{std::string(text)};
    if (big >> IntTraits<Int>::kBits != 0) throw std::out_of_range("integer too wide");
    return static_cast<Int>(big);
  }
}

template <FieldInt Int>
std::string to_string(const Int& v) {
  if constexpr (std::is_same_v<Int, std::uint64_t>) {
    return std::to_string(v);
  } else {
    return v.str();
  }
}

/// Fixed-width big-endian encoding.
template <FieldInt Int>
void append_be(Bytes& out, Int v, std::size_t width) {
  std::size_t start = out.size();
  out.resize(start + width);
  for (std::size_t i = 0; i < width; ++i) {
    out[start + width - 1 - i] = static_cast<std::uint8_t>(static_cast<unsigned>(v & 0xff));
    v >>= 8;
  }
}

/// Reduces a big-endian byte string modulo m (Horner's rule).
template <FieldInt Int>
Int reduce_bytes(std::span<const std::uint8_t> data, const Int& m) {
  const Int base = Int(256) % m;
  Int acc = 0;
  for (auto byte : data) acc = add_mod(mul_mod(acc, base, m), Int(Int(byte) % m), m);
  return acc;
}

}  // namespace qchain::ec
