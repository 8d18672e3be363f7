#pragma once

#include "multibrot/angle.hpp"

#include <optional>
#include <string>
#include <vector>

namespace multibrot {

class Lamination;

// Symbol used when an orbit point lands exactly on a partition boundary.
inline constexpr int kStar = -1;

// Itinerary of theta's forward orbit with respect to the circle partition cut
// by the d preimages (theta+j)/d. The arc whose upper (counterclockwise)
// boundary is (theta+j)/d carries symbol j; for d = 2 this puts symbol 1 on
// the arc containing theta itself. Periodic angles produce a star exactly at
// the multiples of their period, preperiodic angles are star-free.
struct KneadingSequence {
  std::vector<int> preperiodic;  // empty for periodic angles
  std::vector<int> periodic;     // nonempty
  std::string str() const;       // "<pre>|<per>", star printed as ★
  bool operator==(const KneadingSequence&) const = default;
};

// Symbol of x in theta's partition (kStar when x is a partition point).
int partition_symbol(const Angle& theta, const Angle& x, int degree);

// First `steps` symbols of x's orbit in theta's partition.
std::vector<int> itinerary(const Angle& theta, const Angle& x, int degree,
                           int steps);

KneadingSequence kneading_sequence(const Angle& theta, int degree);

// Equality with stars acting as wildcards on either side.
bool kneading_equal_up_to_star(const KneadingSequence& a,
                               const KneadingSequence& b);

// Decides whether two angles of equal exact (preperiod, period) belong to one
// landing group: their orbits must share the itinerary in a common partition,
// checked symmetrically.
bool same_preperiodic_group(const Angle& a, const Angle& b, int degree);

struct InternalAddress {
  std::vector<int> entries;  // strictly increasing, starts at 1
  bool complete = false;     // false when truncated at the lamination bound
  std::string str() const;   // "1->3", "1->3->6->..." when incomplete
  bool operator==(const InternalAddress&) const = default;
};

struct AngledEntry {
  int period = 1;
  // Internal angle of the subwake holding the rest of the address; absent on
  // the final entry of a complete address.
  std::optional<std::pair<int, int>> angle;  // (p, q)
  int sector = 0;                            // relevant for degree > 2 only
};

struct AngledInternalAddress {
  std::vector<AngledEntry> entries;
  bool complete = false;
  std::string str() const;  // "1(1/3)->3"
};

// Walks the wake forest: each entry is the minimal period of a leaf
// separating the previous address node from theta. Complete only when theta
// lands on a component within the lamination bound; preperiodic angles have
// unbounded addresses and always come back truncated.
InternalAddress internal_address(const Angle& theta, const Lamination& lam);

// internal_address augmented with the internal angle of the subwake of each
// address component that contains theta.
AngledInternalAddress angled_internal_address(const Angle& theta,
                                              const Lamination& lam);

}  // namespace multibrot
