#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace multibrot {

using BigInt = boost::multiprecision::cpp_int;

// A rational point of the circle, always reduced. Values live in [0, 1];
// both endpoints are first-class: 0 and 1 are distinct angles (they form
// the degenerate root pair of the main component) even though they name
// the same point of the circle.
class Angle {
 public:
  Angle() : num_(0), den_(1) {}
  Angle(BigInt num, BigInt den);

  static Angle zero() { return Angle(); }
  static Angle one() { return Angle(1, 1); }

  // Accepts "p/q" or a bare integer "0" / "1". Throws std::invalid_argument.
  static Angle parse(std::string_view text);

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == den_; }
  bool is_endpoint() const { return is_zero() || is_one(); }

  std::string str() const;
  double to_double() const;

  bool operator==(const Angle& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  std::strong_ordering operator<=>(const Angle& o) const;

 private:
  BigInt num_, den_;  // invariant: 0 <= num_ <= den_, gcd(num_, den_) == 1
};

std::ostream& operator<<(std::ostream& os, const Angle& a);

// Exact preperiod/period data under multiplication by the degree.
struct AngleClass {
  int preperiod = 0;  // 0 iff the angle is periodic
  int period = 1;     // minimal eventual period
  bool operator==(const AngleClass&) const = default;
};

// d*theta mod 1, reduced. The distinguished angle 1 stays fixed, mirroring 0.
Angle map_d(const Angle& theta, int degree);

// Exact (preperiod, period) by iterating map_d until the first repeat.
AngleClass classify(const Angle& theta, int degree);

// All angles of exact period n, ascending. For n == 1 the list is the main
// component's ray set: 0, j/(d-1) for 0 < j < d-1, and 1.
std::vector<Angle> periodic_angles(int degree, int period);

// All angles of exact preperiod l >= 1 and exact eventual period n, ascending.
std::vector<Angle> preperiodic_angles(int degree, int preperiod, int period);

// Orientation test: true iff b lies on the counterclockwise open arc from a
// to c. Endpoints 0 and 1 are identified for circular purposes.
bool ccw_between(const Angle& a, const Angle& b, const Angle& c);

// true iff lo < x < hi in the linear order on [0, 1].
bool strictly_inside(const Angle& lo, const Angle& hi, const Angle& x);

}  // namespace multibrot

template <>
struct std::hash<multibrot::Angle> {
  std::size_t operator()(const multibrot::Angle& a) const noexcept;
};
