#pragma once

// Certified periodic (mod 1) points. Corridors are refined backward along a
// covering-graph walk so that every step maps one corridor exactly onto the
// next (interiors strictly inside); the composite piecewise-linear map over
// the base corridor is then solved exactly for F^q(x) = x + p.

#include "sunrot/rotation_set.hpp"

#include <string>
#include <vector>

namespace sunrot {

struct PeriodicWitness {
    Point point = Point::line(Rat(0));  // representative, fundamental copy
    int q = 0;                          // exact relation F^q(x) = x + p
    long long p = 0;
    Rat rho;                            // p/q
    bool degenerate = false;  // solved on a plateau or identity piece
    std::string provenance;   // "loop-corridor" | "power-solve" | "tail"
    std::vector<int> trace;   // loop vertices, or tail label cycle (cells)
};

// Nested corridors along a walk: K_i is a subinterval of the i-th vertex
// interval (fundamental branch coordinates); F maps K_i onto K_{i+1} plus
// the arrow's deck translation, interiors landing strictly inside. Any
// orbit started in the interior of K_0 follows the walk's host cells.
std::vector<TSegment> refine_corridors(const PLMap& map,
                                       const BasicPartition& part,
                                       const CoveringGraph& g,
                                       const std::vector<int>& path);

// Periodic point whose orbit follows the loop: F^L(x) = x + W for the loop
// length L and weight W. Corridor-based; falls back to a plain composite
// solve over the whole base vertex interval.
PeriodicWitness periodic_from_loop(const PLMap& map,
                                   const BasicPartition& part,
                                   const CoveringGraph& g,
                                   const LoopSpec& loop);

// Periodic point realizing the rotation number of a lassoing tower's
// periodic tail: F^q(x) = x + p solved beyond the last label-cycle cell.
PeriodicWitness periodic_from_jtail(const PLMap& map,
                                    const BasicPartition& part,
                                    const IPath& ip);

// Exact check of the defining relation, by q evaluations.
bool verify_witness(const PLMap& map, const PeriodicWitness& w);

}  // namespace sunrot
