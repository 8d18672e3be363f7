#include "multibrot/lamination.hpp"

#include "multibrot/symbolic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace multibrot {

namespace {

BigInt pow_int(int base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

std::vector<Angle> ComponentNode::rays() const {
  std::vector<Angle> r;
  r.reserve(coroots.size() + 2);
  r.push_back(root.lower);
  r.insert(r.end(), coroots.begin(), coroots.end());
  r.push_back(root.upper);
  return r;
}

bool Lamination::GapKey::operator<(const GapKey& o) const {
  if (node.kind != o.node.kind) return node.kind < o.node.kind;
  if (node.index != o.node.index) return node.index < o.node.index;
  return sector < o.sector;
}

const Angle& Lamination::span_lower(NodeRef r) const {
  return r.kind == NodeRef::kComponent ? comps_[r.index].span_lower()
                                       : misius_[r.index].span_lower();
}

const Angle& Lamination::span_upper(NodeRef r) const {
  return r.kind == NodeRef::kComponent ? comps_[r.index].span_upper()
                                       : misius_[r.index].span_upper();
}

const std::string& Lamination::id_of(NodeRef r) const {
  return r.kind == NodeRef::kComponent ? comps_[r.index].id : misius_[r.index].id;
}

std::optional<NodeRef> Lamination::parent_of(NodeRef r) const {
  return r.kind == NodeRef::kComponent ? comps_[r.index].parent
                                       : misius_[r.index].parent;
}

const std::vector<NodeRef>& Lamination::children_of(NodeRef r) const {
  return r.kind == NodeRef::kComponent ? comps_[r.index].children
                                       : misius_[r.index].children;
}

std::vector<Angle> Lamination::node_angles(NodeRef r) const {
  if (r.kind == NodeRef::kComponent) return comps_[r.index].rays();
  return misius_[r.index].angles;
}

std::optional<NodeRef> Lamination::node_of(const Angle& a) const {
  auto it = by_angle_.find(a);
  if (it == by_angle_.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeRef> Lamination::find_node(const std::string& id) const {
  for (std::size_t i = 0; i < comps_.size(); ++i)
    if (comps_[i].id == id) return NodeRef{NodeRef::kComponent, (int)i};
  for (std::size_t i = 0; i < misius_.size(); ++i)
    if (misius_[i].id == id) return NodeRef{NodeRef::kMisiurewicz, (int)i};
  return std::nullopt;
}

std::vector<Leaf> Lamination::leaves() const {
  std::vector<Leaf> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(c.root);
  return out;
}

namespace {
// Index of the last child whose span lower angle is below a, or -1.
int last_child_below(const Lamination& lam, const std::vector<NodeRef>& kids,
                     const Angle& a) {
  int lo = 0, hi = static_cast<int>(kids.size());
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (lam.span_lower(kids[mid]) < a)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo - 1;
}
}  // namespace

std::vector<NodeRef> Lamination::chain(const Angle& theta) const {
  std::vector<NodeRef> out;
  NodeRef cur = main();
  out.push_back(cur);
  if (theta.is_endpoint()) return out;
  while (true) {
    const auto& kids = children_of(cur);
    int i = last_child_below(*this, kids, theta);
    if (i < 0 || !(theta < span_upper(kids[i]))) break;
    cur = kids[i];
    out.push_back(cur);
  }
  return out;
}

NodeRef Lamination::enclosing(const Angle& theta) const {
  return chain(theta).back();
}

int Lamination::sector_of(NodeRef r, const Angle& a) const {
  auto angles = node_angles(r);
  for (std::size_t i = 0; i + 1 < angles.size(); ++i)
    if (angles[i] < a && a < angles[i + 1]) return static_cast<int>(i);
  throw std::logic_error("angle not interior to any sector of node " + id_of(r));
}

Lamination::GapKey Lamination::locate_gap(const Angle& a) const {
  NodeRef cur = enclosing(a);
  return GapKey{cur, sector_of(cur, a)};
}

void Lamination::insert_node(NodeRef ref) {
  if (ref.kind == NodeRef::kComponent && ref.index == 0) return;  // forest root
  const Angle lo = span_lower(ref);
  const Angle hi = span_upper(ref);
  NodeRef cur = main();
  while (true) {
    const auto& kids = children_of(cur);
    int i = last_child_below(*this, kids, lo);
    if (i < 0) break;
    const Angle& ku = span_upper(kids[i]);
    if (!(lo < ku)) break;
    if (!(hi < ku) && !(hi == ku))
      throw std::logic_error("overlapping wake intervals at node " +
                             std::to_string(kids[i].index));
    cur = kids[i];
  }
  auto& pkids = cur.kind == NodeRef::kComponent ? comps_[cur.index].children
                                                : misius_[cur.index].children;
  // Children of the parent falling inside the new span become our children.
  std::vector<NodeRef> mine;
  std::size_t first = 0;
  while (first < pkids.size() && !(lo < span_lower(pkids[first]))) ++first;
  std::size_t last = first;
  while (last < pkids.size() && span_lower(pkids[last]) < hi) {
    if (!(span_upper(pkids[last]) < hi))
      throw std::logic_error("overlapping wake intervals under node " +
                             std::to_string(cur.index));
    mine.push_back(pkids[last]);
    ++last;
  }
  pkids.erase(pkids.begin() + first, pkids.begin() + last);
  pkids.insert(pkids.begin() + first, ref);
  for (NodeRef c : mine) {
    auto& cp = c.kind == NodeRef::kComponent ? comps_[c.index].parent
                                             : misius_[c.index].parent;
    cp = ref;
  }
  if (ref.kind == NodeRef::kComponent) {
    comps_[ref.index].parent = cur;
    comps_[ref.index].children = std::move(mine);
  } else {
    misius_[ref.index].parent = cur;
    misius_[ref.index].children = std::move(mine);
  }
}

void Lamination::index_angles(NodeRef ref) {
  for (const Angle& a : node_angles(ref)) by_angle_[a] = ref;
}

void Lamination::detect_attachment(ComponentNode& node) const {
  if (!node.parent) return;
  NodeRef anc = *node.parent;
  while (anc.kind != NodeRef::kComponent) anc = *parent_of(anc);
  const ComponentNode& up = comps_[anc.index];
  if (node.period % up.period != 0) return;
  int q = node.period / up.period;
  if (q < 2) return;
  for (int p = 1; p < q; ++p) {
    if (std::gcd(p, q) != 1) continue;
    for (int s = 0; s + 1 < degree_; ++s) {
      Leaf b = bifurcation_angles(up, degree_, p, q, s);
      if (b.lower == node.root.lower && b.upper == node.root.upper) {
        node.attachment = InternalAngle{p, q, s};
        return;
      }
    }
  }
}

void Lamination::finalize_ids() {
  for (std::size_t i = 0; i < comps_.size(); ++i)
    comps_[i].id = i == 0 ? "main" : "c" + std::to_string(i);
  for (std::size_t i = 0; i < misius_.size(); ++i)
    misius_[i].id = "m" + std::to_string(i + 1);
}

// Enrichment appends, so restore the (preperiod, period, lower) order the
// file format and ids promise, rewriting every stored NodeRef.
void Lamination::sort_misiurewicz_nodes() {
  std::vector<int> order(misius_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& x = misius_[a];
    const auto& y = misius_[b];
    if (x.preperiod != y.preperiod) return x.preperiod < y.preperiod;
    if (x.period != y.period) return x.period < y.period;
    return x.angles.front() < y.angles.front();
  });
  if (std::is_sorted(order.begin(), order.end())) return;
  std::vector<int> remap(misius_.size());
  std::vector<MisiurewiczNode> sorted;
  sorted.reserve(misius_.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    remap[order[pos]] = static_cast<int>(pos);
    sorted.push_back(std::move(misius_[order[pos]]));
  }
  misius_ = std::move(sorted);
  auto fix = [&](NodeRef& r) {
    if (r.kind == NodeRef::kMisiurewicz) r.index = remap[r.index];
  };
  auto fix_node = [&](auto& node) {
    if (node.parent) fix(*node.parent);
    for (NodeRef& c : node.children) fix(c);
  };
  for (auto& c : comps_) fix_node(c);
  for (auto& m : misius_) fix_node(m);
  for (auto& [angle, ref] : by_angle_) fix(ref);
}

Lamination Lamination::build_periodic(int degree, int max_period) {
  if (degree < 2) throw std::invalid_argument("degree must be >= 2");
  if (max_period < 1) throw std::invalid_argument("max_period must be >= 1");
  Lamination lam(degree, max_period);
  for (int n = 1; n <= max_period; ++n) {
    auto angles = periodic_angles(degree, n);
    if (n == 1) {
      ComponentNode node;
      node.period = 1;
      node.root = Leaf{angles.front(), angles.back(), 1};
      node.coroots.assign(angles.begin() + 1, angles.end() - 1);
      lam.comps_.push_back(std::move(node));
      lam.insert_node(lam.main());
      lam.index_angles(lam.main());
      continue;
    }
    // Angles of one landing group are consecutive within one gap of the
    // existing lamination; groups are the d-blocks of each gap's angle list.
    std::map<GapKey, std::vector<Angle>> buckets;
    for (const Angle& a : angles) buckets[lam.locate_gap(a)].push_back(a);
    std::vector<std::vector<Angle>> groups;
    for (auto& [key, vec] : buckets) {
      if (vec.size() % degree != 0)
        throw std::logic_error("period " + std::to_string(n) +
                               ": gap holds " + std::to_string(vec.size()) +
                               " angles, not a multiple of the degree");
      for (std::size_t i = 0; i < vec.size(); i += degree)
        groups.emplace_back(vec.begin() + i, vec.begin() + i + degree);
    }
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (auto& g : groups) {
      KneadingSequence ks = kneading_sequence(g.front(), degree);
      for (std::size_t i = 1; i < g.size(); ++i) {
        if (!kneading_equal_up_to_star(ks, kneading_sequence(g[i], degree)))
          throw std::logic_error("period " + std::to_string(n) +
                                 " group at " + g.front().str() +
                                 ": kneading sequences disagree");
      }
      ComponentNode node;
      node.period = n;
      node.root = Leaf{g.front(), g.back(), n};
      node.coroots.assign(g.begin() + 1, g.end() - 1);
      NodeRef ref{NodeRef::kComponent, (int)lam.comps_.size()};
      lam.comps_.push_back(std::move(node));
      lam.insert_node(ref);
      lam.detect_attachment(lam.comps_[ref.index]);
      lam.index_angles(ref);
    }
  }
  lam.finalize_ids();
  return lam;
}

namespace {

// true iff all angles of b lie within one complementary arc of a's angle set
// (no chord of one landing group crosses a chord of the other).
bool groups_unlinked(const std::vector<Angle>& a, const std::vector<Angle>& b) {
  if (a.size() < 2) return true;
  int gap = -2;
  for (const Angle& x : b) {
    int g = static_cast<int>(a.size()) - 1;  // wrap arc by default
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      if (a[i] < x && x < a[i + 1]) {
        g = static_cast<int>(i);
        break;
      }
      if (x == a[i] || x == a[i + 1]) return false;
    }
    if (gap == -2)
      gap = g;
    else if (g != gap)
      return false;
  }
  return true;
}

}  // namespace

void Lamination::add_preperiodic(int max_preperiod, int max_period) {
  if (max_preperiod < 1)
    throw std::invalid_argument("max_preperiod must be >= 1");
  if (max_period > max_period_)
    throw std::invalid_argument(
        "preperiodic period bound exceeds the built period bound");
  max_preperiod_ = std::max(max_preperiod_, max_preperiod);
  for (int l = 1; l <= max_preperiod; ++l) {
    for (int n = 1; n <= max_period; ++n) {
      if (!covered_preperiodic_.insert({l, n}).second) continue;
      auto angles = preperiodic_angles(degree_, l, n);
      std::map<GapKey, std::vector<Angle>> buckets;
      for (const Angle& a : angles) buckets[locate_gap(a)].push_back(a);
      std::vector<MisiurewiczNode> pending;
      for (auto& [key, vec] : buckets) {
        std::vector<std::vector<Angle>> groups;
        for (const Angle& a : vec) {
          bool placed = false;
          for (auto& g : groups) {
            if (same_preperiodic_group(g.front(), a, degree_)) {
              g.push_back(a);
              placed = true;
              break;
            }
          }
          if (!placed) groups.push_back({a});
        }
        // Landing groups never link; a violation means the grouping
        // criterion failed, and splitting is the safe direction.
        for (std::size_t i = 0; i < groups.size(); ++i) {
          for (std::size_t j = i + 1; j < groups.size(); ++j) {
            if (!groups_unlinked(groups[i], groups[j])) {
              warnings_.push_back("linked preperiodic groups at (" +
                                  std::to_string(l) + "," + std::to_string(n) +
                                  ") near " + groups[i].front().str() +
                                  "; split into single rays");
              std::vector<std::vector<Angle>> split;
              for (auto& g : {groups[i], groups[j]})
                for (const Angle& a : g) split.push_back({a});
              groups[i] = std::move(split.front());
              groups.erase(groups.begin() + j);
              groups.insert(groups.end(), split.begin() + 1, split.end());
              j = i;  // recheck
            }
          }
        }
        for (auto& g : groups) {
          MisiurewiczNode node;
          node.preperiod = l;
          node.period = n;
          node.angles = std::move(g);
          node.zero_gap = static_cast<int>(node.angles.size()) - 1;
          pending.push_back(std::move(node));
        }
      }
      std::sort(pending.begin(), pending.end(),
                [](const MisiurewiczNode& a, const MisiurewiczNode& b) {
                  return a.angles.front() < b.angles.front();
                });
      for (auto& node : pending) {
        NodeRef ref{NodeRef::kMisiurewicz, (int)misius_.size()};
        misius_.push_back(std::move(node));
        insert_node(ref);
        index_angles(ref);
      }
    }
  }
  sort_misiurewicz_nodes();
  finalize_ids();
}

std::string Lamination::serialize() const {
  std::ostringstream os;
  os << "MBLAM v1 d=" << degree_ << " maxper=" << max_period_
     << " maxpre=" << max_preperiod_ << "\n";
  for (const auto& c : comps_) {
    os << "comp " << c.id << " n=" << c.period << " root=" << c.root.lower.str()
       << "," << c.root.upper.str() << " coroots=";
    for (std::size_t i = 0; i < c.coroots.size(); ++i) {
      if (i) os << ",";
      os << c.coroots[i].str();
    }
    os << "\n";
  }
  for (const auto& m : misius_) {
    os << "misiu " << m.id << " l=" << m.preperiod << " n=" << m.period
       << " angles=";
    for (std::size_t i = 0; i < m.angles.size(); ++i) {
      if (i) os << ",";
      os << m.angles[i].str();
    }
    os << " zerogap=" << m.zero_gap << "\n";
  }
  return os.str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string field(const std::string& token, const std::string& key) {
  if (token.rfind(key + "=", 0) != 0)
    throw std::runtime_error("lamination file: expected " + key + "=, got '" +
                             token + "'");
  return token.substr(key.size() + 1);
}

std::vector<Angle> parse_angle_list(const std::string& text) {
  std::vector<Angle> out;
  if (text.empty()) return out;
  for (const auto& part : split(text, ',')) out.push_back(Angle::parse(part));
  return out;
}

}  // namespace

Lamination Lamination::deserialize(const std::string& text) {
  auto lines = split(text, '\n');
  if (lines.empty()) throw std::runtime_error("lamination file: empty");
  auto header = split(lines[0], ' ');
  if (header.size() != 5 || header[0] != "MBLAM" || header[1] != "v1")
    throw std::runtime_error("lamination file: bad header");
  int degree = std::stoi(field(header[2], "d"));
  int maxper = std::stoi(field(header[3], "maxper"));
  int maxpre = std::stoi(field(header[4], "maxpre"));
  Lamination lam(degree, maxper);
  lam.max_preperiod_ = maxpre;
  for (int l = 1; l <= maxpre; ++l)
    for (int n = 1; n <= maxper; ++n)
      lam.covered_preperiodic_.insert({l, n});
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::string& line = lines[li];
    if (line.empty()) continue;
    auto tok = split(line, ' ');
    if (tok[0] == "comp") {
      if (tok.size() != 5) throw std::runtime_error("lamination file: bad comp line");
      ComponentNode node;
      node.period = std::stoi(field(tok[2], "n"));
      auto roots = parse_angle_list(field(tok[3], "root"));
      if (roots.size() != 2) throw std::runtime_error("lamination file: bad root");
      node.root = Leaf{roots[0], roots[1], node.period};
      node.coroots = parse_angle_list(field(tok[4], "coroots"));
      if ((int)node.coroots.size() != degree - 2)
        throw std::runtime_error("lamination file: co-root count mismatch");
      NodeRef ref{NodeRef::kComponent, (int)lam.comps_.size()};
      lam.comps_.push_back(std::move(node));
      lam.insert_node(ref);
      lam.detect_attachment(lam.comps_[ref.index]);
      lam.index_angles(ref);
    } else if (tok[0] == "misiu") {
      if (tok.size() != 6) throw std::runtime_error("lamination file: bad misiu line");
      MisiurewiczNode node;
      node.preperiod = std::stoi(field(tok[2], "l"));
      node.period = std::stoi(field(tok[3], "n"));
      node.angles = parse_angle_list(field(tok[4], "angles"));
      node.zero_gap = std::stoi(field(tok[5], "zerogap"));
      if (node.angles.empty())
        throw std::runtime_error("lamination file: empty misiu node");
      NodeRef ref{NodeRef::kMisiurewicz, (int)lam.misius_.size()};
      lam.misius_.push_back(std::move(node));
      lam.insert_node(ref);
      lam.index_angles(ref);
    } else {
      throw std::runtime_error("lamination file: unknown record '" + tok[0] + "'");
    }
  }
  if (lam.comps_.empty()) throw std::runtime_error("lamination file: no components");
  lam.finalize_ids();
  return lam;
}

Leaf bifurcation_angles(const ComponentNode& node, int degree, int p, int q,
                        int sector) {
  if (q < 2 || p < 1 || p >= q || std::gcd(p, q) != 1)
    throw std::invalid_argument("internal angle must be reduced p/q in (0,1)");
  if (sector < 0 || sector >= degree - 1)
    throw std::invalid_argument("sector out of range");
  auto rays = node.rays();
  int m = node.period;
  auto block_of = [&](const Angle& a) {
    std::vector<int> digits(m);
    if (a.is_one()) {
      std::fill(digits.begin(), digits.end(), degree - 1);
      return digits;
    }
    Angle x = a;
    for (int i = 0; i < m; ++i) {
      BigInt t = x.numerator() * degree;
      BigInt dig = t / x.denominator();
      digits[i] = dig.convert_to<int>();
      x = Angle(t - dig * x.denominator(), x.denominator());
    }
    return digits;
  };
  auto lo_block = block_of(rays[sector]);
  auto hi_block = block_of(rays[sector + 1]);
  // Walk the rotation orbit of p/q; the window position decides which
  // boundary ray's digit block the two new angles copy.
  BigInt lo_val = 0, hi_val = 0;
  for (int i = 1; i <= q; ++i) {
    int r = (i * p) % q;
    if (r == 0) r = q;
    const auto& bl = (r > q - p) ? hi_block : lo_block;
    const auto& bu = (r >= q - p && r <= q - 1) ? hi_block : lo_block;
    for (int dgt : bl) lo_val = lo_val * degree + dgt;
    for (int dgt : bu) hi_val = hi_val * degree + dgt;
  }
  BigInt den = pow_int(degree, q * m) - 1;
  return Leaf{Angle(lo_val, den), Angle(hi_val, den), q * m};
}

bool is_primitive(const Lamination& lam, NodeRef comp) {
  if (comp.kind != NodeRef::kComponent)
    throw std::invalid_argument("is_primitive expects a component node");
  return !lam.component(comp).attachment.has_value();
}

std::optional<std::pair<InternalAngle, Leaf>> locate_subwake(
    const Lamination& lam, NodeRef comp, const Angle& theta) {
  const ComponentNode& node = lam.component(comp);
  int m = node.period;
  int qcap = std::max(2, (lam.max_period() + m - 1) / m + 1);
  for (int q = 2; q <= qcap; ++q) {
    for (int p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      for (int s = 0; s + 1 < lam.degree(); ++s) {
        Leaf b = bifurcation_angles(node, lam.degree(), p, q, s);
        if (!(theta < b.lower) && !(b.upper < theta))
          return std::make_pair(InternalAngle{p, q, s}, b);
      }
    }
  }
  return std::nullopt;
}

}  // namespace multibrot
