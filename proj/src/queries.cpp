#include "multibrot/queries.hpp"

#include "multibrot/symbolic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace multibrot {

namespace {

void reject_endpoints(const Angle& t1, const Angle& t2) {
  if (t1.is_endpoint() || t2.is_endpoint())
    throw std::invalid_argument("angles 0 and 1 are not valid query inputs");
}

bool node_lists_angle(const Lamination& lam, NodeRef r, const Angle& a) {
  auto angles = lam.node_angles(r);
  return std::binary_search(angles.begin(), angles.end(), a);
}

// Deepest node whose closure holds both angles: strict span containment, or
// the angle being one of the node's own rays.
NodeRef deepest_common(const Lamination& lam, const Angle& t1,
                       const Angle& t2) {
  auto holds = [&](NodeRef r, const Angle& a) {
    return strictly_inside(lam.span_lower(r), lam.span_upper(r), a) ||
           node_lists_angle(lam, r, a);
  };
  NodeRef cur = lam.main();
  while (true) {
    bool moved = false;
    for (NodeRef c : lam.children_of(cur)) {
      if (holds(c, t1) && holds(c, t2)) {
        cur = c;
        moved = true;
        break;
      }
    }
    if (!moved) return cur;
  }
}

int gap_of(const MisiurewiczNode& node, const Angle& a) {
  for (std::size_t i = 0; i + 1 < node.angles.size(); ++i)
    if (node.angles[i] < a && a < node.angles[i + 1]) return static_cast<int>(i);
  throw std::logic_error("angle not interior to any gap of the node");
}

int index_of_angle(const std::vector<Angle>& angles, const Angle& a) {
  auto it = std::lower_bound(angles.begin(), angles.end(), a);
  return static_cast<int>(it - angles.begin());
}

}  // namespace

bool in_wake(const Lamination& lam, NodeRef node, const Angle& theta) {
  return strictly_inside(lam.span_lower(node), lam.span_upper(node), theta);
}

std::string BranchResult::str(const Lamination& lam) const {
  switch (kind) {
    case kInWake:
      return "inwake " + lam.id_of(node);
    case kComponentBranch:
      return "branch comp " + lam.id_of(node) + " " + std::to_string(sub1.p) +
             "/" + std::to_string(sub1.q) + " " + std::to_string(sub2.p) + "/" +
             std::to_string(sub2.q);
    case kMisiurewiczBranch:
      return "branch misiu " + lam.id_of(node) + " " + std::to_string(gap1) +
             " " + std::to_string(gap2);
    case kUndecided:
      return "undecided";
  }
  return "undecided";
}

BranchResult branch_point(const Lamination& lam, const Angle& t1,
                          const Angle& t2) {
  reject_endpoints(t1, t2);
  if (t1 == t2) throw std::invalid_argument("branch_point needs distinct angles");
  BranchResult res;
  auto n1 = lam.node_of(t1);
  auto n2 = lam.node_of(t2);
  if (n1 && n2 && *n1 == *n2) {
    if (n1->kind == NodeRef::kComponent) {
      res.kind = BranchResult::kInWake;
      res.node = *n1;
      res.contains_input = 2;
      return res;
    }
    // Two rays of one Misiurewicz point: report the gaps flanking them.
    const auto& node = lam.misiurewicz(*n1);
    int r = node.gap_count();
    int i = index_of_angle(node.angles, t1);
    int j = index_of_angle(node.angles, t2);
    if (i > j) std::swap(i, j);
    res.kind = BranchResult::kMisiurewiczBranch;
    res.node = *n1;
    if (j > i + 1) {
      res.gap1 = i;
      res.gap2 = j - 1;
    } else {
      res.gap1 = (i - 1 + r) % r;
      res.gap2 = i;
    }
    return res;
  }
  if (n1 && in_wake(lam, *n1, t2)) {
    res.kind = BranchResult::kInWake;
    res.node = *n1;
    res.contains_input = 2;
    return res;
  }
  if (n2 && in_wake(lam, *n2, t1)) {
    res.kind = BranchResult::kInWake;
    res.node = *n2;
    res.contains_input = 1;
    return res;
  }
  NodeRef common = deepest_common(lam, t1, t2);
  if (common.kind == NodeRef::kComponent) {
    auto s1 = locate_subwake(lam, common, t1);
    auto s2 = locate_subwake(lam, common, t2);
    if (!s1 || !s2 || s1->first == s2->first) return res;  // undecided
    res.kind = BranchResult::kComponentBranch;
    res.node = common;
    res.sub1 = s1->first;
    res.sub2 = s2->first;
    return res;
  }
  const auto& node = lam.misiurewicz(common);
  int g1 = gap_of(node, t1);
  int g2 = gap_of(node, t2);
  if (g1 == g2) return res;  // needs structure deeper than the bound
  res.kind = BranchResult::kMisiurewiczBranch;
  res.node = common;
  res.gap1 = g1;
  res.gap2 = g2;
  return res;
}

std::string SeparationResult::str(const Lamination& lam) const {
  switch (kind) {
    case kSameClass:
      return "same-class";
    case kRayPair:
      return "pair " + leaf.lower.str() + " " + leaf.upper.str();
    case kComponentCrossing:
      return "comp " + lam.id_of(comp) + " via " + ray1.str() + " " + ray2.str();
    case kUndecided:
      return "undecided";
  }
  return "undecided";
}

namespace {

// Boundary rays of a component available as crossing-witness endpoints: its
// own d rays plus subwake root angles up to the search bound, ranked by
// (ray period, angle).
std::vector<std::pair<int, Angle>> witness_ray_candidates(const Lamination& lam,
                                                          NodeRef comp) {
  const auto& node = lam.component(comp);
  std::vector<std::pair<int, Angle>> out;
  for (const Angle& a : node.rays()) out.emplace_back(node.period, a);
  int m = node.period;
  int qcap = std::max(2, (lam.max_period() + m - 1) / m + 1);
  for (int q = 2; q <= qcap; ++q) {
    for (int p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      for (int s = 0; s + 1 < lam.degree(); ++s) {
        Leaf b = bifurcation_angles(node, lam.degree(), p, q, s);
        out.emplace_back(b.period, b.lower);
        out.emplace_back(b.period, b.upper);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  return out;
}

}  // namespace

SeparationResult separate(const Lamination& lam, const Angle& t1,
                          const Angle& t2) {
  reject_endpoints(t1, t2);
  SeparationResult res;
  if (t1 == t2) {
    res.kind = SeparationResult::kSameClass;
    return res;
  }
  auto n1 = lam.node_of(t1);
  auto n2 = lam.node_of(t2);
  if ((n1 && n2 && *n1 == *n2) ||
      ((!n1 || !n2) && same_preperiodic_group(t1, t2, lam.degree()))) {
    res.kind = SeparationResult::kSameClass;
    return res;
  }

  // Periodic leaf witness, minimal (period, lower angle).
  for (const auto& c : lam.components()) {
    const Leaf& leaf = c.root;
    if (t1 == leaf.lower || t1 == leaf.upper || t2 == leaf.lower ||
        t2 == leaf.upper)
      continue;
    if (leaf.contains(t1) != leaf.contains(t2)) {
      res.kind = SeparationResult::kRayPair;
      res.leaf = leaf;
      res.inside_input = leaf.contains(t1) ? 1 : 2;
      return res;
    }
  }

  NodeRef common = deepest_common(lam, t1, t2);
  if (common.kind != NodeRef::kComponent) return res;  // undecided

  // Both classes touch `common` or live in subwakes whose roots exceed the
  // leaf bound; name the crossing through the component.
  bool on1 = node_lists_angle(lam, common, t1);
  bool on2 = node_lists_angle(lam, common, t2);
  std::optional<std::pair<InternalAngle, Leaf>> s1, s2;
  if (!on1) {
    s1 = locate_subwake(lam, common, t1);
    if (!s1) return res;
  }
  if (!on2) {
    s2 = locate_subwake(lam, common, t2);
    if (!s2) return res;
  }
  if (s1 && s2 && s1->first == s2->first) return res;  // same subwake: deeper

  // A subwake root beyond the leaf bound already separates when the angle
  // sits strictly inside it.
  for (int which = 1; which <= 2; ++which) {
    const auto& s = which == 1 ? s1 : s2;
    const Angle& self = which == 1 ? t1 : t2;
    const Angle& other = which == 1 ? t2 : t1;
    if (s && s->second.contains(self) && !(other == s->second.lower) &&
        !(other == s->second.upper) && !s->second.contains(other)) {
      res.kind = SeparationResult::kRayPair;
      res.leaf = s->second;
      res.inside_input = which;
      return res;
    }
  }

  if (on1 && on2) return res;  // same node was handled; cannot happen

  // Boundary-to-boundary: enclose the subwake class with the greater lower
  // angle between two structure rays of the component.
  int enclose;
  if (on1)
    enclose = 2;
  else if (on2)
    enclose = 1;
  else
    enclose = s1->second.lower < s2->second.lower ? 2 : 1;
  const auto& sk = enclose == 1 ? s1 : s2;
  const Angle& lk = sk->second.lower;
  const Angle& uk = sk->second.upper;
  Angle oa, ob;  // extent of the other side's class
  if (enclose == 1 ? on2 : on1) {
    oa = ob = enclose == 1 ? t2 : t1;
  } else {
    const auto& so = enclose == 1 ? s2 : s1;
    oa = so->second.lower;
    ob = so->second.upper;
  }
  bool other_below = ob < lk;
  const Angle& span_lo = lam.span_lower(common);
  const Angle& span_hi = lam.span_upper(common);
  auto usable = [&](const Angle& w) { return !(w == t1) && !(w == t2); };
  std::optional<Angle> w1, w2;
  for (const auto& [period, w] : witness_ray_candidates(lam, common)) {
    (void)period;
    if (!usable(w)) continue;
    if (!w1 && w < lk && (other_below ? ob < w : !(w < span_lo))) w1 = w;
    if (!w2 && uk < w && (other_below ? !(span_hi < w) : w < oa)) w2 = w;
    if (w1 && w2) break;
  }
  if (!w1 || !w2) return res;  // undecided
  const Angle& inside = enclose == 1 ? t1 : t2;
  const Angle& outside = enclose == 1 ? t2 : t1;
  if (!strictly_inside(*w1, *w2, inside) || strictly_inside(*w1, *w2, outside))
    return res;  // undecided rather than an unverified witness
  res.kind = SeparationResult::kComponentCrossing;
  res.comp = common;
  res.ray1 = *w1;
  res.ray2 = *w2;
  res.inside_input = enclose;
  return res;
}

Ternary same_comb_class(const Lamination& lam, const Angle& t1,
                        const Angle& t2) {
  SeparationResult sep = separate(lam, t1, t2);
  switch (sep.kind) {
    case SeparationResult::kSameClass:
      return Ternary::kTrue;
    case SeparationResult::kUndecided:
      return Ternary::kUndecided;
    default:
      return Ternary::kFalse;
  }
}

std::vector<CharacteristicPair> characteristic_ray_pairs(const Lamination& lam,
                                                         const Angle& theta) {
  if (theta.is_endpoint())
    throw std::invalid_argument("angles 0 and 1 have no characteristic pairs");
  std::vector<CharacteristicPair> out;
  for (NodeRef r : lam.chain(theta)) {
    if (node_lists_angle(lam, r, theta)) continue;
    if (r.kind == NodeRef::kComponent) {
      if (r.index == 0) continue;  // the degenerate main pair bounds nothing
      const auto& c = lam.component(r);
      out.push_back(CharacteristicPair{c.root.lower, c.root.upper, true,
                                       c.period, 0});
    } else {
      const auto& m = lam.misiurewicz(r);
      int g = gap_of(m, theta);
      out.push_back(CharacteristicPair{m.angles[g], m.angles[g + 1], false,
                                       m.period, m.preperiod});
    }
  }
  return out;
}

std::vector<Leaf> approximating_pairs(const Lamination& lam, const Leaf& root,
                                      int count) {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  auto ref = lam.node_of(root.lower);
  if (!ref || ref->kind != NodeRef::kComponent ||
      !(lam.component(*ref).root == root))
    throw std::invalid_argument("not a root leaf of the lamination: " +
                                root.lower.str() + "," + root.upper.str());
  if (!is_primitive(lam, *ref))
    throw std::invalid_argument("root " + root.lower.str() + "," +
                                root.upper.str() +
                                " is a satellite; approximating pairs "
                                "require a primitive root");
  std::vector<Leaf> chain;
  for (const auto& c : lam.components()) {
    if (c.root.lower.is_zero()) continue;  // skip the degenerate main pair
    if (c.root.lower < root.lower && root.upper < c.root.upper)
      chain.push_back(c.root);
  }
  std::sort(chain.begin(), chain.end(),
            [](const Leaf& a, const Leaf& b) { return a.lower < b.lower; });
  // The containment chain interleaves several pull-back cascades; the
  // approximating sequence is the one through the innermost member, with
  // gaps growing by d^period per step outward.
  double ratio = std::pow(static_cast<double>(lam.degree()), root.period);
  double theta = root.lower.to_double();
  auto gap_of = [&](const Leaf& l) { return theta - l.lower.to_double(); };
  std::vector<Leaf> series;
  if (!chain.empty()) {
    series.push_back(chain.back());
    chain.pop_back();
    while (static_cast<int>(series.size()) < count && !chain.empty()) {
      double target = gap_of(series.back()) * ratio;
      int best = -1;
      for (std::size_t i = 0; i < chain.size(); ++i) {
        double g = gap_of(chain[i]);
        if (g < target / 2 || g > target * 2) continue;
        if (best < 0 || std::abs(g - target) < std::abs(gap_of(chain[best]) - target))
          best = static_cast<int>(i);
      }
      if (best < 0) break;
      series.push_back(chain[best]);
      chain.erase(chain.begin() + best);
    }
  }
  if (static_cast<int>(series.size()) < count)
    throw BoundExceeded(lam.max_period(),
                        "only " + std::to_string(series.size()) +
                            " approximating pairs available");
  std::reverse(series.begin(), series.end());
  return series;
}

std::vector<MisiurewiczGap> misiurewicz_subwakes(const Lamination& lam,
                                                 NodeRef node) {
  if (node.kind != NodeRef::kMisiurewicz)
    throw std::invalid_argument("misiurewicz_subwakes expects a Misiurewicz node");
  const auto& m = lam.misiurewicz(node);
  std::vector<MisiurewiczGap> out;
  int r = m.gap_count();
  for (int i = 0; i < r; ++i) {
    MisiurewiczGap gap;
    if (i + 1 < r) {
      gap.lower = m.angles[i];
      gap.upper = m.angles[i + 1];
    } else {
      gap.lower = m.angles.back();  // wrap arc through angle 0
      gap.upper = m.angles.front();
      gap.zero_wake = true;
    }
    for (const auto& c : lam.components()) {
      const Leaf& leaf = c.root;
      if (leaf.lower.is_zero()) continue;
      bool fits = gap.zero_wake
                      ? leaf.lower < m.angles.front() && m.angles.back() < leaf.upper
                      : gap.lower < leaf.lower && leaf.upper < gap.upper;
      if (fits) {
        gap.witness = leaf;
        break;
      }
    }
    out.push_back(std::move(gap));
  }
  return out;
}

FiberPartition fiber_partition(const Lamination& lam,
                               std::vector<Angle> angles) {
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
  int n = static_cast<int>(angles.size());
  std::vector<int> uf(n);
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  auto unite = [&](int a, int b) { uf[find(a)] = find(b); };

  // Landing-group merges: node membership when available, the exact
  // preperiodic grouping criterion otherwise.
  std::map<std::pair<NodeRef::Kind, int>, int> by_node;
  std::map<std::pair<int, int>, std::vector<int>> loose;  // (l, n) buckets
  for (int i = 0; i < n; ++i) {
    if (auto r = lam.node_of(angles[i])) {
      auto key = std::make_pair(r->kind, r->index);
      auto [it, fresh] = by_node.emplace(key, i);
      if (!fresh) unite(i, it->second);
    } else {
      AngleClass cls = classify(angles[i], lam.degree());
      if (cls.preperiod > 0)
        loose[{cls.preperiod, cls.period}].push_back(i);
    }
  }
  for (auto& [key, idxs] : loose) {
    std::vector<int> reps;
    for (int i : idxs) {
      bool placed = false;
      for (int r : reps) {
        if (same_preperiodic_group(angles[r], angles[i], lam.degree())) {
          unite(i, r);
          placed = true;
          break;
        }
      }
      if (!placed) reps.push_back(i);
    }
  }

  FiberPartition out;
  std::map<int, std::vector<Angle>> classes;
  for (int i = 0; i < n; ++i) classes[find(i)].push_back(angles[i]);
  for (auto& [root, members] : classes) out.classes.push_back(std::move(members));
  std::sort(out.classes.begin(), out.classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  // Separation diagnostics stay affordable only for small partitions.
  if (out.classes.size() <= 64) {
    for (std::size_t i = 0; i < out.classes.size(); ++i) {
      for (std::size_t j = i + 1; j < out.classes.size(); ++j) {
        const Angle& a = out.classes[i].front();
        const Angle& b = out.classes[j].front();
        if (a.is_endpoint() || b.is_endpoint()) continue;
        if (separate(lam, a, b).kind == SeparationResult::kUndecided)
          out.undecided.emplace_back(a, b);
      }
    }
  }
  return out;
}

}  // namespace multibrot
