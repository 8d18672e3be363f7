#pragma once

#include "multibrot/angle.hpp"
#include "multibrot/lamination.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace multibrot {

// true iff theta lies strictly inside the node's wake interval: the root
// leaf interval for components, the complement of the zero gap for
// Misiurewicz nodes.
bool in_wake(const Lamination& lam, NodeRef node, const Angle& theta);

struct BranchResult {
  enum Kind { kInWake, kComponentBranch, kMisiurewiczBranch, kUndecided };
  Kind kind = kUndecided;
  NodeRef node;            // meaningful unless undecided
  int contains_input = 0;  // kInWake: which input lies in the node's wake
  InternalAngle sub1, sub2;  // kComponentBranch: subwakes of input 1 and 2
  int gap1 = 0, gap2 = 0;    // kMisiurewiczBranch
  std::string str(const Lamination& lam) const;
};

// Decides the mutual position of two rational angles: one in the other's
// wake, or branching at a component or a Misiurewicz point. Walks the wake
// forest to the deepest node holding both.
BranchResult branch_point(const Lamination& lam, const Angle& t1,
                          const Angle& t2);

struct SeparationResult {
  enum Kind { kSameClass, kRayPair, kComponentCrossing, kUndecided };
  Kind kind = kUndecided;
  Leaf leaf;               // kRayPair witness
  NodeRef comp;            // kComponentCrossing
  Angle ray1, ray2;        // kComponentCrossing boundary rays, ray1 < ray2
  int inside_input = 0;    // which input lies inside the witness interval
  std::string str(const Lamination& lam) const;
};

// Periodic-only separation: a leaf witness with minimal (period, lower
// angle), or a crossing through a shared component named by two of its
// boundary rays. Never uses preperiodic ray pairs as witnesses.
SeparationResult separate(const Lamination& lam, const Angle& t1,
                          const Angle& t2);

enum class Ternary { kFalse, kTrue, kUndecided };

// true iff the angles' landing patterns agree: same landing group, or no
// witness exists and the classes provably coincide. Undecided when the
// lamination bound cannot settle it.
Ternary same_comb_class(const Lamination& lam, const Angle& t1,
                        const Angle& t2);

struct CharacteristicPair {
  Angle lower, upper;
  bool periodic = true;
  int period = 1;
  int preperiod = 0;  // 0 for periodic pairs
};

// All ray pairs whose wake strictly contains theta, outermost first: these
// reappear as characteristic dynamic ray pairs at the same angles for every
// parameter on the theta-ray.
std::vector<CharacteristicPair> characteristic_ray_pairs(const Lamination& lam,
                                                         const Angle& theta);

// The innermost `count` leaves strictly containing a primitive root leaf,
// outermost first; consecutive gaps contract roughly by d^-period.
std::vector<Leaf> approximating_pairs(const Lamination& lam, const Leaf& root,
                                      int count);

struct MisiurewiczGap {
  Angle lower, upper;  // lower > upper marks the wrap arc through angle 0
  bool zero_wake = false;
  std::optional<Leaf> witness;  // periodic leaf inside the arc, if any in bound
};

// Complementary arcs of the node's ray set, each with a periodic leaf
// separating the arc interior from the node; the arc containing angle 0 is
// flagged as the zero wake and its witness encloses the whole group.
std::vector<MisiurewiczGap> misiurewicz_subwakes(const Lamination& lam,
                                                 NodeRef node);

struct FiberPartition {
  std::vector<std::vector<Angle>> classes;  // sorted, disjoint
  // Class pairs the bound could not separate (diagnosed for small inputs).
  std::vector<std::pair<Angle, Angle>> undecided;
};

// Partitions angles into landing groups; distinct groups are never merged,
// and pairs that resist separation at the bound are reported as undecided.
FiberPartition fiber_partition(const Lamination& lam,
                               std::vector<Angle> angles);

}  // namespace multibrot
