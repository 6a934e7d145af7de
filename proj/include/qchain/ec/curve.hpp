#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "qchain/core/bytes.hpp"
#include "qchain/ec/modarith.hpp"

namespace qchain::ec {

enum class CurveForm { weierstrass, twisted_edwards };

inline const char* to_string(CurveForm f) {
  return f == CurveForm::weierstrass ? "weierstrass" : "twisted_edwards";
}

/// Affine point. The identity is a flag with zeroed coordinates so that
/// defaulted equality is exact; on Edwards curves it stands for (0, 1).
template <FieldInt Int>
struct GroupPoint {
  Int x{0};
  Int y{0};
  bool infinity{true};

  static GroupPoint identity() { return {}; }
  static GroupPoint affine(Int x, Int y) { return {std::move(x), std::move(y), false}; }
  bool is_identity() const { return infinity; }

  friend bool operator==(const GroupPoint&, const GroupPoint&) = default;
};

/// Raw curve description. `coeff` is b for y^2 = x^3 + ax + b and d for
/// ax^2 + y^2 = 1 + dx^2y^2.
template <FieldInt Int>
struct CurveParams {
  std::string label;
  CurveForm form{CurveForm::weierstrass};
  Int prime{0};
  Int a{0};
  Int coeff{0};
  Int gx{0};
  Int gy{0};
  Int order{0};
  Int cofactor{1};
  bool attackable{false};

  friend bool operator==(const CurveParams&, const CurveParams&) = default;
};

/// Toy groups at or below this order can be broken by the classical oracle.
inline constexpr int kMaxAttackableOrderBits = 40;

/// Elliptic-curve group over a prime field. Immutable after construction.
///
/// Construction checks that the generator lies on the curve and that
/// order * generator is the identity. Toy groups also get primality checks on
/// the field prime and the order; full-size parameters are trusted as given.
template <FieldInt Int>
class CurveGroup {
 public:
  using Point = GroupPoint<Int>;

  explicit CurveGroup(CurveParams<Int> params) : params_(std::move(params)) {
    const auto& p = params_.prime;
    if (p < 5 || !is_odd(p)) throw std::invalid_argument(label() + ": field prime must be an odd prime");
    if (params_.a >= p || params_.coeff >= p) throw std::invalid_argument(label() + ": coefficients must be reduced");
    if (params_.order < 2 || params_.cofactor < 1) throw std::invalid_argument(label() + ": bad order/cofactor");
    if (params_.attackable) {
      if (bit_length(params_.order) > kMaxAttackableOrderBits)
        throw std::invalid_argument(label() + ": attackable groups are capped at 2^40 order");
      if (!is_probable_prime(p)) throw std::invalid_argument(label() + ": field modulus is not prime");
      if (!is_probable_prime(params_.order)) throw std::invalid_argument(label() + ": order is not prime");
    }
    if (form() == CurveForm::weierstrass) {
      // 4a^3 + 27b^2 != 0
      Int a3 = mul_mod(mul_mod(params_.a, params_.a, p), params_.a, p);
      Int disc = add_mod(mul_mod(Int(4), a3, p), mul_mod(Int(27), mul_mod(params_.coeff, params_.coeff, p), p), p);
      if (disc == 0) throw std::invalid_argument(label() + ": singular curve");
    } else if (params_.coeff == 0 || params_.coeff == params_.a || params_.a == 0) {
      throw std::invalid_argument(label() + ": degenerate Edwards coefficients");
    }
    generator_ = to_internal(Point::affine(params_.gx, params_.gy));
    if (!contains(generator_) || generator_.is_identity())
      throw std::invalid_argument(label() + ": generator is not on the curve");
    if (!mul_unreduced(params_.order, generator_).is_identity())
      throw std::invalid_argument(label() + ": order * generator != identity");
    group_order_ = params_.order * params_.cofactor;
    field_bytes_ = static_cast<std::size_t>((bit_length(p) + 7) / 8);
  }

  const CurveParams<Int>& params() const noexcept { return params_; }
  const std::string& label() const noexcept { return params_.label; }
  CurveForm form() const noexcept { return params_.form; }
  const Int& prime() const noexcept { return params_.prime; }
  const Int& a() const noexcept { return params_.a; }
  const Int& coeff() const noexcept { return params_.coeff; }
  const Int& order() const noexcept { return params_.order; }
  const Int& cofactor() const noexcept { return params_.cofactor; }
  bool attackable() const noexcept { return params_.attackable; }
  const Point& generator() const noexcept { return generator_; }
  std::size_t field_bytes() const noexcept { return field_bytes_; }
  int order_bits() const { return bit_length(params_.order); }

  bool same_group(const CurveGroup& other) const {
    const auto& o = other.params_;
    return params_.form == o.form && params_.prime == o.prime && params_.a == o.a && params_.coeff == o.coeff &&
           params_.gx == o.gx && params_.gy == o.gy && params_.order == o.order;
  }

  /// On-curve test; the identity is always a member.
  bool contains(const Point& pt) const {
    if (pt.is_identity()) return true;
    const auto& p = params_.prime;
    if (pt.x >= p || pt.y >= p) return false;
    const Int x2 = mul_mod(pt.x, pt.x, p);
    const Int y2 = mul_mod(pt.y, pt.y, p);
    if (form() == CurveForm::weierstrass) {
      Int rhs = add_mod(mul_mod(add_mod(x2, params_.a, p), pt.x, p), params_.coeff, p);
      return y2 == rhs;
    }
    Int lhs = add_mod(mul_mod(params_.a, x2, p), y2, p);
    Int rhs = add_mod(Int(1), mul_mod(params_.coeff, mul_mod(x2, y2, p), p), p);
    return lhs == rhs;
  }

  Point negate(const Point& pt) const {
    if (pt.is_identity()) return pt;
    if (form() == CurveForm::weierstrass) return Point::affine(pt.x, neg_mod(pt.y, params_.prime));
    return to_internal(Point::affine(neg_mod(pt.x, params_.prime), pt.y));
  }

  /// Group law without membership checks.
  Point add(const Point& p1, const Point& p2) const {
    if (p1.is_identity()) return p2;
    if (p2.is_identity()) return p1;
    return form() == CurveForm::weierstrass ? add_weierstrass(p1, p2) : add_edwards(p1, p2);
  }

  Point sub(const Point& p1, const Point& p2) const { return add(p1, negate(p2)); }

  /// Double-and-add with the scalar reduced modulo order * cofactor, which
  /// is a multiple of every point's order.
  Point mul(const Int& k, const Point& pt) const { return mul_unreduced(Int(k % group_order_), pt); }

  Point mul_unreduced(Int k, const Point& pt) const {
    Point acc = Point::identity();
    Point base = pt;
    while (k != 0) {
      if (is_odd(k)) acc = add(acc, base);
      k >>= 1;
      if (k != 0) base = add(base, base);
    }
    return acc;
  }

  Point mul_base(const Int& k) const { return mul(k, generator_); }

  /// Weierstrass only: the point with abscissa x and the requested y parity.
  std::optional<Point> lift_x(const Int& x, bool odd_y) const {
    if (form() != CurveForm::weierstrass) throw std::logic_error("lift_x is defined for Weierstrass curves");
    const auto& p = params_.prime;
    if (x >= p) return std::nullopt;
    Int rhs = add_mod(mul_mod(add_mod(mul_mod(x, x, p), params_.a, p), x, p), params_.coeff, p);
    auto y = sqrt_mod(rhs, p);
    if (!y) return std::nullopt;
    Int yy = *y;
    if (is_odd(yy) != odd_y) yy = neg_mod(yy, p);
    if (yy == 0 && odd_y) return std::nullopt;
    return Point::affine(x, yy);
  }

  /// Edwards only: the point with ordinate y and the requested x parity.
  std::optional<Point> lift_y(const Int& y, bool odd_x) const {
    if (form() != CurveForm::twisted_edwards) throw std::logic_error("lift_y is defined for Edwards curves");
    const auto& p = params_.prime;
    if (y >= p) return std::nullopt;
    // x^2 = (1 - y^2) / (a - d y^2)
    Int y2 = mul_mod(y, y, p);
    Int num = sub_mod(Int(1), y2, p);
    Int den = sub_mod(params_.a, mul_mod(params_.coeff, y2, p), p);
    if (den == 0) return std::nullopt;
    auto x = sqrt_mod(mul_mod(num, inv_mod(den, p), p), p);
    if (!x) return std::nullopt;
    Int xx = *x;
    if (is_odd(xx) != odd_x) xx = neg_mod(xx, p);
    if (xx == 0 && odd_x) return std::nullopt;
    return to_internal(Point::affine(xx, y));
  }

  /// 0x00 for the identity, otherwise 0x04 || x || y at field width.
  Bytes encode(const Point& pt) const {
    Bytes out;
    if (pt.is_identity()) {
      out.push_back(0);
      return out;
    }
    out.reserve(1 + 2 * field_bytes_);
    out.push_back(4);
    append_be(out, pt.x, field_bytes_);
    append_be(out, pt.y, field_bytes_);
    return out;
  }

  Bytes encode_scalar(const Int& s) const {
    Bytes out;
    append_be(out, s, field_bytes_);
    return out;
  }

 private:
  // Edwards (0, 1) is the neutral element; fold it into the identity flag.
  Point to_internal(Point pt) const {
    if (!pt.is_identity() && form() == CurveForm::twisted_edwards && pt.x == 0 && pt.y == 1) return Point::identity();
    return pt;
  }

  Point add_weierstrass(const Point& p1, const Point& p2) const {
    const auto& p = params_.prime;
    Int lambda;
    if (p1.x == p2.x) {
      if (add_mod(p1.y, p2.y, p) == 0) return Point::identity();
      Int num = add_mod(mul_mod(Int(3), mul_mod(p1.x, p1.x, p), p), params_.a, p);
      lambda = mul_mod(num, inv_mod(add_mod(p1.y, p1.y, p), p), p);
    } else {
      lambda = mul_mod(sub_mod(p2.y, p1.y, p), inv_mod(sub_mod(p2.x, p1.x, p), p), p);
    }
    Int x3 = sub_mod(sub_mod(mul_mod(lambda, lambda, p), p1.x, p), p2.x, p);
    Int y3 = sub_mod(mul_mod(lambda, sub_mod(p1.x, x3, p), p), p1.y, p);
    return Point::affine(x3, y3);
  }

  // Unified affine formula; complete when a is a square and d is not.
  Point add_edwards(const Point& p1, const Point& p2) const {
    const auto& p = params_.prime;
    Int x1x2 = mul_mod(p1.x, p2.x, p);
    Int y1y2 = mul_mod(p1.y, p2.y, p);
    Int t = mul_mod(params_.coeff, mul_mod(x1x2, y1y2, p), p);
    Int xnum = add_mod(mul_mod(p1.x, p2.y, p), mul_mod(p1.y, p2.x, p), p);
    Int ynum = sub_mod(y1y2, mul_mod(params_.a, x1x2, p), p);
    Int den_x = add_mod(Int(1), t, p);
    Int den_y = sub_mod(Int(1), t, p);
    Int inv = inv_mod(mul_mod(den_x, den_y, p), p);
    Int x3 = mul_mod(xnum, mul_mod(den_y, inv, p), p);
    Int y3 = mul_mod(ynum, mul_mod(den_x, inv, p), p);
    return to_internal(Point::affine(x3, y3));
  }

  CurveParams<Int> params_;
  Point generator_;
  Int group_order_{0};
  std::size_t field_bytes_{0};
};

/// Checked group law: both operands must be members of `group`.
template <FieldInt Int>
GroupPoint<Int> point_add(const GroupPoint<Int>& p1, const GroupPoint<Int>& p2, const CurveGroup<Int>& group) {
  if (!group.contains(p1) || !group.contains(p2))
    throw std::invalid_argument("point_add: operand is not a member of " + group.label());
  return group.add(p1, p2);
}

/// Checked scalar multiplication.
template <FieldInt Int>
GroupPoint<Int> scalar_mul(const Int& k, const GroupPoint<Int>& pt, const CurveGroup<Int>& group) {
  if (!group.contains(pt)) throw std::invalid_argument("scalar_mul: point is not a member of " + group.label());
  return group.mul(k, pt);
}

using ToyInt = std::uint64_t;
using ToyGroup = CurveGroup<ToyInt>;
using ToyPoint = GroupPoint<ToyInt>;

}  // namespace qchain::ec
