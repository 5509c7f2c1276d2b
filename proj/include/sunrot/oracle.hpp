#pragma once

// Independent cross-checks for the tests: exact orbit simulation with
// itinerary codes, brute-force cycle enumeration over one component, replay
// of a coded orbit as a covering-graph walk, and a fast double-precision
// mean-displacement sampler for the line dynamics.

#include "sunrot/rotation_set.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace sunrot {

constexpr int code_dustbin = -1;   // in X + Z but in no cell
constexpr int code_skeleton = -2;  // outside X + Z

struct OrbitRecord {
    std::vector<Point> points;  // x_0 .. x_n
    std::vector<int> codes;     // cell id, code_dustbin, or code_skeleton
    Rat displacement;           // line-retraction displacement over the run
};

OrbitRecord simulate(const PLMap& map, const BasicPartition& part,
                     const Point& x0, int steps);

// displacement / step count
Rat orbit_mean(const OrbitRecord& rec);

// Sum of the cell translations along the itinerary (all points but the last
// must sit in cells; nullopt otherwise). Checks the deck bookkeeping: when
// first and last point are branch points, the copy advances by exactly this
// sum, and the line displacement stays within 2 of it.
std::optional<long long> itinerary_weight(const BasicPartition& part,
                                          const OrbitRecord& rec);

// Every simple cycle of one component with its rotation number. Small
// components only (refuses more than max_verts vertices).
std::vector<std::pair<std::vector<int>, Rat>> enumerate_cycles(
    const CoveringGraph& g, int scc, int max_verts = 12);

// The covering-graph walk a fully-coded orbit threads: from the basis
// vertex of the first code, each step follows the unique out-arrow whose
// target is hosted by the next code; the branch coordinate must lie inside
// the target's interval.
std::vector<int> path_of_itinerary(const PLMap& map,
                                   const BasicPartition& part,
                                   const CoveringGraph& g,
                                   const OrbitRecord& rec);

// Mean displacement of the line dynamics over `steps` iterations from x0,
// in double precision (requires line_invariant()).
double line_orbit_mean_double(const PLMap& map, double x0, int steps);

}  // namespace sunrot
