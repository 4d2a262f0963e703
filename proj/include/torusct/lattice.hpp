#pragma once

#include <vector>

#include "torusct/types.hpp"

namespace torusct {

// gcd-reduce and canonicalize the sign: axis classes map to (1,0) and (0,1),
// every other class to its representative with a >= 1. Throws on v = 0.
ReducedDirection reduce(IntDirection v);

// Height of the class: max(|a|, |b|).
int height(ReducedDirection d);

// Primitive direction perpendicular to k, i.e. reduce((-k2, k1)). Throws on k = 0.
ReducedDirection perp_direction(FourierIndex k);

struct DirectionSet {
  int box_radius = 0;
  // (1,0), (0,1), then {(a,b) : 1 <= a,b <= N, gcd = 1} lexicographic,
  // then the same list mirrored to (a,-b).
  std::vector<ReducedDirection> members;
  bool contains(ReducedDirection d) const;
  int index_of(ReducedDirection d) const;  // -1 when absent
};

// All projective directions of height <= N, in the canonical order above.
// Contains perp_direction(k) for every 0 != k in [-N,N]^2.
DirectionSet direction_set(int N);

// Number of projective classes of height <= N, counted by exhaustive gcd
// enumeration over [-N,N]^2. Independent of direction_set; cross-checks it.
long phi_bruteforce(int N);

// Parameter values t in [0,1] where x + t v touches a unit-cell boundary line,
// sorted, deduplicated at 1e-12, with 0 and 1 always present. For quadrature
// panelization. Throws on v = 0.
std::vector<double> geodesic_break_ts(Point x, IntDirection v);

// Decompose the closed geodesic {x + t v mod 1 : t in [0,1]} into straight
// chords of the closed unit square, in traversal order from the first boundary
// touch. When x is interior, the chord through x is emitted once, merged
// across the t = 1 wrap, and placed last; consecutive chords connect mod 1.
std::vector<Segment> geodesic_segments(Point x, IntDirection v);

}  // namespace torusct
