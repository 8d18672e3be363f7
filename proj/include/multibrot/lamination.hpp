#pragma once

#include "multibrot/angle.hpp"

#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace multibrot {

// Raised when a query needs structure beyond the built period bound.
struct BoundExceeded : std::runtime_error {
  explicit BoundExceeded(int bound, const std::string& what)
      : std::runtime_error(what + " (period bound " + std::to_string(bound) + ")"),
        bound(bound) {}
  int bound;
};

// A pair of parameter-ray angles landing together, drawn as one chord.
// The main component carries the degenerate leaf (0, 1).
struct Leaf {
  Angle lower, upper;
  int period = 1;
  bool contains(const Angle& x) const { return lower < x && x < upper; }
  bool operator==(const Leaf& o) const {
    return lower == o.lower && upper == o.upper;
  }
};

struct NodeRef {
  enum Kind { kComponent, kMisiurewicz };
  Kind kind = kComponent;
  int index = 0;
  bool operator==(const NodeRef&) const = default;
};

struct InternalAngle {
  int p = 0, q = 1;
  int sector = 0;  // which side of the component for degree > 2
  bool operator==(const InternalAngle&) const = default;
};

// A hyperbolic component: d parameter rays, the outermost two forming the
// root pair and the d-2 interior ones landing at co-roots.
struct ComponentNode {
  int period = 1;
  Leaf root;
  std::vector<Angle> coroots;                 // exactly degree-2 of them
  std::optional<InternalAngle> attachment;    // set iff satellite
  std::optional<NodeRef> parent;              // wake-forest parent
  std::vector<NodeRef> children;              // sorted by span lower angle
  std::string id;                             // "main", "c1", ...

  std::vector<Angle> rays() const;  // root pair + coroots, ascending
  const Angle& span_lower() const { return root.lower; }
  const Angle& span_upper() const { return root.upper; }
};

// A group of preperiodic parameter rays landing at one Misiurewicz point.
struct MisiurewiczNode {
  int preperiod = 1;
  int period = 1;
  std::vector<Angle> angles;  // ascending, size >= 1
  int zero_gap = 0;           // complementary arc containing angle 0
  std::optional<NodeRef> parent;
  std::vector<NodeRef> children;
  std::string id;  // "m1", ...

  int gap_count() const { return static_cast<int>(angles.size()); }
  const Angle& span_lower() const { return angles.front(); }
  const Angle& span_upper() const { return angles.back(); }
};

// The landing-group lamination: every rational parameter ray up to the
// period/preperiod bounds assigned to its node, plus the nesting forest of
// wake intervals. Immutable once built; all queries are const.
class Lamination {
 public:
  static Lamination build_periodic(int degree, int max_period);

  // Groups preperiodic angles with preperiod <= max_preperiod and eventual
  // period <= max_period into Misiurewicz nodes.
  void add_preperiodic(int max_preperiod, int max_period);

  int degree() const { return degree_; }
  int max_period() const { return max_period_; }
  int max_preperiod() const { return max_preperiod_; }

  const std::vector<ComponentNode>& components() const { return comps_; }
  const std::vector<MisiurewiczNode>& misiurewicz_nodes() const { return misius_; }
  const ComponentNode& component(NodeRef r) const { return comps_[r.index]; }
  const MisiurewiczNode& misiurewicz(NodeRef r) const { return misius_[r.index]; }
  NodeRef main() const { return NodeRef{NodeRef::kComponent, 0}; }

  // All root leaves, ordered by (period, lower angle).
  std::vector<Leaf> leaves() const;

  // Landing-group membership; nullopt when the angle is not an angle of any
  // node within the bounds.
  std::optional<NodeRef> node_of(const Angle& a) const;
  std::optional<NodeRef> find_node(const std::string& id) const;

  const Angle& span_lower(NodeRef r) const;
  const Angle& span_upper(NodeRef r) const;
  const std::string& id_of(NodeRef r) const;
  std::optional<NodeRef> parent_of(NodeRef r) const;
  const std::vector<NodeRef>& children_of(NodeRef r) const;
  std::vector<Angle> node_angles(NodeRef r) const;

  // Deepest node whose wake interval strictly contains theta (main if none
  // deeper). The second form also descends into nodes listing theta as one
  // of their own rays, which then terminates the walk.
  NodeRef enclosing(const Angle& theta) const;

  // Chain of nodes whose span strictly contains theta, outermost first.
  std::vector<NodeRef> chain(const Angle& theta) const;

  // Diagnostics collected while grouping (unexpected splits and the like).
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Line-oriented cache format; parse round-trips bit-exactly and verifies
  // the header against expectations when asked.
  std::string serialize() const;
  static Lamination deserialize(const std::string& text);

 private:
  Lamination(int degree, int max_period)
      : degree_(degree), max_period_(max_period) {}

  struct GapKey {
    NodeRef node;
    int sector;
    bool operator<(const GapKey& o) const;
    bool operator==(const GapKey&) const = default;
  };
  GapKey locate_gap(const Angle& a) const;
  int sector_of(NodeRef r, const Angle& a) const;
  void insert_node(NodeRef ref);
  void index_angles(NodeRef ref);
  void detect_attachment(ComponentNode& node) const;
  void finalize_ids();
  void sort_misiurewicz_nodes();

  int degree_;
  int max_period_;
  int max_preperiod_ = 0;
  std::vector<ComponentNode> comps_;      // creation order == (period, lower)
  std::vector<MisiurewiczNode> misius_;   // (preperiod, period, lower)
  std::unordered_map<Angle, NodeRef> by_angle_;
  std::set<std::pair<int, int>> covered_preperiodic_;
  std::vector<std::string> warnings_;
};

// Root leaf of the subwake of `node` at internal angle p/q, by the
// rotation-number digit construction: base-d blocks of the two sector
// boundary rays concatenated along the rotation orbit of p/q.
Leaf bifurcation_angles(const ComponentNode& node, int degree, int p, int q,
                        int sector = 0);

// False iff the node's root equals a bifurcation leaf of its component
// parent (satellite); the main component is primitive by convention.
bool is_primitive(const Lamination& lam, NodeRef comp);

// Subwake of `comp` whose closure contains theta: searches internal angles
// with q up to a bound derived from the lamination's period bound.
std::optional<std::pair<InternalAngle, Leaf>> locate_subwake(
    const Lamination& lam, NodeRef comp, const Angle& theta);

}  // namespace multibrot
