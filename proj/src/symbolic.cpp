#include "multibrot/symbolic.hpp"

#include "multibrot/lamination.hpp"

#include <algorithm>
#include <stdexcept>

namespace multibrot {

namespace {

// Partition points (theta+j)/d, ascending.
std::vector<Angle> partition_points(const Angle& theta, int degree) {
  std::vector<Angle> pts;
  pts.reserve(degree);
  for (int j = 0; j < degree; ++j)
    pts.emplace_back(theta.numerator() + BigInt(j) * theta.denominator(),
                     theta.denominator() * degree);
  return pts;
}

int symbol_in(const std::vector<Angle>& pts, const Angle& x) {
  // The wrap arc (last point .. first point through 0) carries symbol 0; the
  // arc ending at pts[j] carries symbol j.
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (x == pts[j]) return kStar;
    if (x < pts[j]) return static_cast<int>(j);
  }
  return 0;
}

char symbol_char(int s) {
  if (s < 0) return '*';
  if (s < 10) return static_cast<char>('0' + s);
  return static_cast<char>('a' + (s - 10));
}

void append_symbols(std::string& out, const std::vector<int>& symbols) {
  for (int s : symbols) {
    if (s == kStar)
      out += "\xE2\x98\x85";  // ★
    else
      out += symbol_char(s);
  }
}

}  // namespace

int partition_symbol(const Angle& theta, const Angle& x, int degree) {
  return symbol_in(partition_points(theta, degree), x);
}

std::vector<int> itinerary(const Angle& theta, const Angle& x, int degree,
                           int steps) {
  auto pts = partition_points(theta, degree);
  std::vector<int> out;
  out.reserve(steps);
  Angle cur = x;
  for (int i = 0; i < steps; ++i) {
    out.push_back(symbol_in(pts, cur));
    cur = map_d(cur, degree);
  }
  return out;
}

KneadingSequence kneading_sequence(const Angle& theta, int degree) {
  if (theta.is_endpoint())
    throw std::invalid_argument("kneading sequence undefined for angles 0 and 1");
  AngleClass cls = classify(theta, degree);
  auto symbols = itinerary(theta, theta, degree, cls.preperiod + cls.period);
  KneadingSequence ks;
  ks.preperiodic.assign(symbols.begin(), symbols.begin() + cls.preperiod);
  ks.periodic.assign(symbols.begin() + cls.preperiod, symbols.end());
  return ks;
}

std::string KneadingSequence::str() const {
  std::string out;
  append_symbols(out, preperiodic);
  out += '|';
  append_symbols(out, periodic);
  return out;
}

bool kneading_equal_up_to_star(const KneadingSequence& a,
                               const KneadingSequence& b) {
  if (a.preperiodic.size() != b.preperiodic.size()) return false;
  if (a.periodic.size() != b.periodic.size()) return false;
  auto match = [](int x, int y) { return x == kStar || y == kStar || x == y; };
  for (std::size_t i = 0; i < a.preperiodic.size(); ++i)
    if (!match(a.preperiodic[i], b.preperiodic[i])) return false;
  for (std::size_t i = 0; i < a.periodic.size(); ++i)
    if (!match(a.periodic[i], b.periodic[i])) return false;
  return true;
}

bool same_preperiodic_group(const Angle& a, const Angle& b, int degree) {
  if (a == b) return true;
  AngleClass ca = classify(a, degree);
  if (ca.preperiod == 0) return false;
  if (!(ca == classify(b, degree))) return false;
  // Orbits of equal (l, n) never hit each other's partition points, so both
  // itineraries are star-free and n-periodic after l steps: a window of
  // l + n symbols decides equality of the full sequences.
  int window = ca.preperiod + ca.period;
  if (itinerary(a, b, degree, window) != itinerary(a, a, degree, window))
    return false;
  return itinerary(b, a, degree, window) == itinerary(b, b, degree, window);
}

std::string InternalAddress::str() const {
  std::string out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += "->";
    out += std::to_string(entries[i]);
  }
  if (!complete) out += "->...";
  return out;
}

std::string AngledInternalAddress::str() const {
  std::string out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += "->";
    out += std::to_string(entries[i].period);
    if (entries[i].angle) {
      out += '(' + std::to_string(entries[i].angle->first) + '/' +
             std::to_string(entries[i].angle->second) + ')';
    }
  }
  if (!complete) out += "->...";
  return out;
}

namespace {

// Address skeleton: the subsequence of theta's containment chain obtained by
// repeatedly taking the minimal-period component strictly deeper than the
// current one. Returns the chosen component refs; `landed` reports whether
// theta is an angle of the last chosen node.
std::vector<NodeRef> address_path(const Angle& theta, const Lamination& lam,
                                  bool* landed) {
  std::vector<NodeRef> comp_chain;
  for (NodeRef r : lam.chain(theta))
    if (r.kind == NodeRef::kComponent) comp_chain.push_back(r);
  // theta's own node, if it is a component, terminates the chain. Co-root
  // angles sit strictly inside their own root interval and are already on
  // the chain, so avoid listing the node twice.
  auto own = lam.node_of(theta);
  bool own_comp = own && own->kind == NodeRef::kComponent;
  if (own_comp && (comp_chain.empty() || !(comp_chain.back() == *own)))
    comp_chain.push_back(*own);

  std::vector<NodeRef> path;
  std::size_t pos = 0;
  path.push_back(comp_chain.front());  // main: every chain starts there
  while (pos + 1 < comp_chain.size()) {
    std::size_t best = pos + 1;
    for (std::size_t i = pos + 1; i < comp_chain.size(); ++i) {
      int p = lam.component(comp_chain[i]).period;
      int b = lam.component(comp_chain[best]).period;
      if (p < b || (p == b && i > best)) best = i;  // ties: innermost
    }
    path.push_back(comp_chain[best]);
    pos = best;
  }
  *landed = own_comp;
  return path;
}

}  // namespace

InternalAddress internal_address(const Angle& theta, const Lamination& lam) {
  InternalAddress addr;
  if (theta.is_endpoint()) {
    addr.entries = {1};
    addr.complete = true;
    return addr;
  }
  bool landed = false;
  auto path = address_path(theta, lam, &landed);
  for (NodeRef r : path) addr.entries.push_back(lam.component(r).period);
  for (std::size_t i = 1; i < addr.entries.size(); ++i)
    if (addr.entries[i] <= addr.entries[i - 1])
      throw std::logic_error("internal address not strictly increasing");
  addr.complete = landed;
  return addr;
}

AngledInternalAddress angled_internal_address(const Angle& theta,
                                              const Lamination& lam) {
  AngledInternalAddress addr;
  if (theta.is_endpoint()) {
    addr.entries.push_back(AngledEntry{1, std::nullopt, 0});
    addr.complete = true;
    return addr;
  }
  bool landed = false;
  auto path = address_path(theta, lam, &landed);
  for (std::size_t i = 0; i < path.size(); ++i) {
    AngledEntry e;
    e.period = lam.component(path[i]).period;
    bool final_entry = landed && i + 1 == path.size();
    if (!final_entry) {
      auto sub = locate_subwake(lam, path[i], theta);
      if (!sub) {
        // Cannot name the subwake within the search bound; report what we
        // have as a truncated address.
        addr.complete = false;
        addr.entries.push_back(e);
        return addr;
      }
      e.angle = std::make_pair(sub->first.p, sub->first.q);
      e.sector = sub->first.sector;
    }
    addr.entries.push_back(e);
  }
  addr.complete = landed;
  return addr;
}

}  // namespace multibrot
