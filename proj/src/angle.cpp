#include "multibrot/angle.hpp"

#include <boost/functional/hash.hpp>

#include <charconv>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace multibrot {

namespace {

BigInt pow_int(int base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void check_degree(int degree) {
  if (degree < 2) throw std::invalid_argument("degree must be >= 2");
}

}  // namespace

Angle::Angle(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ <= 0) throw std::invalid_argument("angle denominator must be positive");
  if (num_ < 0 || num_ > den_) throw std::invalid_argument("angle must lie in [0, 1]");
  BigInt g = boost::multiprecision::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Angle Angle::parse(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("cannot parse angle '" + std::string(text) + "'");
  };
  if (text.empty()) fail();
  auto slash = text.find('/');
  auto parse_int = [&](std::string_view s) -> BigInt {
    if (s.empty() || s.size() > 1000) fail();
    for (char c : s)
      if (c < '0' || c > '9') fail();
    return BigInt(std::string(s));
  };
  if (slash == std::string_view::npos) {
    BigInt v = parse_int(text);
    if (v != 0 && v != 1) fail();
    return Angle(v, 1);
  }
  BigInt p = parse_int(text.substr(0, slash));
  BigInt q = parse_int(text.substr(slash + 1));
  if (q == 0 || p > q) fail();
  return Angle(p, q);
}

std::string Angle::str() const {
  return num_.str() + "/" + den_.str();
}

double Angle::to_double() const {
  return num_.convert_to<double>() / den_.convert_to<double>();
}

std::strong_ordering Angle::operator<=>(const Angle& o) const {
  BigInt lhs = num_ * o.den_;
  BigInt rhs = o.num_ * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Angle& a) {
  return os << a.str();
}

Angle map_d(const Angle& theta, int degree) {
  check_degree(degree);
  if (theta.is_one()) return Angle::one();
  BigInt n = theta.numerator() * degree % theta.denominator();
  return Angle(n, theta.denominator());
}

AngleClass classify(const Angle& theta, int degree) {
  check_degree(degree);
  std::unordered_map<Angle, int> seen;
  Angle x = theta;
  int step = 0;
  while (true) {
    auto [it, inserted] = seen.emplace(x, step);
    if (!inserted) return AngleClass{it->second, step - it->second};
    x = map_d(x, degree);
    ++step;
  }
}

std::vector<Angle> periodic_angles(int degree, int period) {
  check_degree(degree);
  if (period < 1) throw std::invalid_argument("period must be >= 1");
  std::vector<Angle> out;
  if (period == 1) {
    out.push_back(Angle::zero());
    for (int j = 1; j < degree - 1; ++j) out.emplace_back(j, degree - 1);
    out.push_back(Angle::one());
    return out;
  }
  BigInt modulus = pow_int(degree, period) - 1;
  std::vector<BigInt> divisor_moduli;  // d^m - 1 for proper divisors m of n
  for (int m = 1; m < period; ++m)
    if (period % m == 0) divisor_moduli.push_back(pow_int(degree, m) - 1);
  for (BigInt p = 1; p < modulus; ++p) {
    bool exact = true;
    for (const BigInt& dm : divisor_moduli) {
      if (p * dm % modulus == 0) {
        exact = false;
        break;
      }
    }
    if (exact) out.emplace_back(p, modulus);
  }
  return out;
}

std::vector<Angle> preperiodic_angles(int degree, int preperiod, int period) {
  check_degree(degree);
  if (preperiod < 1) throw std::invalid_argument("preperiod must be >= 1");
  if (period < 1) throw std::invalid_argument("period must be >= 1");
  BigInt modulus = pow_int(degree, preperiod) * (pow_int(degree, period) - 1);
  std::vector<Angle> out;
  AngleClass want{preperiod, period};
  for (BigInt k = 1; k < modulus; ++k) {
    Angle a(k, modulus);
    if (classify(a, degree) == want) out.push_back(a);
  }
  return out;
}

namespace {
// Circle position: the distinguished angle 1 sits at the same point as 0.
const Angle& circle_pos(const Angle& a, const Angle& zero) {
  return a.is_one() ? zero : a;
}
}  // namespace

bool ccw_between(const Angle& a, const Angle& b, const Angle& c) {
  static const Angle kZero = Angle::zero();
  const Angle& x = circle_pos(a, kZero);
  const Angle& y = circle_pos(b, kZero);
  const Angle& z = circle_pos(c, kZero);
  if (x == y || y == z || x == z) return false;
  if (x < z) return x < y && y < z;
  return y > x || y < z;
}

bool strictly_inside(const Angle& lo, const Angle& hi, const Angle& x) {
  return lo < x && x < hi;
}

}  // namespace multibrot

std::size_t std::hash<multibrot::Angle>::operator()(
    const multibrot::Angle& a) const noexcept {
  std::size_t seed = 0;
  boost::hash_combine(seed, a.numerator());
  boost::hash_combine(seed, a.denominator());
  return seed;
}
