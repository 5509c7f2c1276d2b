#pragma once

// Rotation analysis. Loops in the covering graph carry a rotation number
// weight/length; every essential component meeting the basis contributes the
// full interval [min mean cycle, max mean cycle], and any rational inside it
// is the mean of an explicit synthesized loop. Lassoing towers contribute
// isolated rationals. The line dynamics contributes one interval of its own.
// assemble() merges all parts into the final set.

#include "sunrot/cover_graph.hpp"

#include <string>
#include <vector>

namespace sunrot {

// A walk in the covering graph, stored as its vertex sequence. Closed walks
// (front == back) are loops.
struct LoopSpec {
    std::vector<int> vertices;
    long long weight = 0;
    long long length = 0;

    bool closed() const {
        return vertices.size() >= 2 && vertices.front() == vertices.back();
    }
};

// Builds the walk along `vertices`, summing arrow weights. Every consecutive
// pair must be an arrow of g; out-arrows have distinct targets, so a vertex
// sequence determines its arrows.
LoopSpec make_walk(const CoveringGraph& g, const std::vector<int>& vertices);

Rat loop_rho(const LoopSpec& l);

LoopSpec concat(const LoopSpec& a, const LoopSpec& b);
LoopSpec power(const LoopSpec& a, long long k);

// Rotation interval of one essential component that meets the basis, with
// witness loops for both endpoints.
struct ComponentInterval {
    int scc = -1;
    Rat lo, hi;
    LoopSpec gamma_lo, gamma_hi;
};

// scc_decompose must have run on g.
ComponentInterval component_interval(const CoveringGraph& g, int scc);

// A loop of the component whose mean is exactly r, built as an explicit
// concatenation gamma_lo^a . (P gamma_hi^k Q)^b based at one vertex.
// Throws std::domain_error when r lies outside [lo, hi].
LoopSpec synthesize_loop(const CoveringGraph& g, const ComponentInterval& c,
                         const Rat& r);

// The closed periodic tail of a lassoing tower (tower arrows plus the
// closing lasso arrow), as a loop.
LoopSpec tail_loop(const CoveringGraph& g, const IPath& ip);

// Rotation interval of the line dynamics. When the line is invariant this is
// [rho(F_l), rho(F_u)] for the monotone envelopes of F|R; each rotation
// number is exact (orbit periodicity in exact arithmetic) or a certified
// enclosure of width <= 2/budget. Otherwise the line leaks into the branches
// and the interval is a sampled estimate through the line retraction.
struct RotRInterval {
    Rat lo, hi;
    std::string rigor;  // "exact" | "rigorous-enclosure" | "estimate"
};

RotRInterval rot_R_interval(const PLMap& map, double tol = 1e-9,
                            int budget = 2000,
                            unsigned long long seed = 12345);

struct IsolatedPoint {
    Rat rho;
    long long p = 0;
    int q = 0;
    int M = -1;                    // height where the periodic tail starts
    std::vector<int> label_cycle;  // host cells of one tail period
    bool in_J = false;     // no tail vertex emits a basis arrow
    int basis = -1;        // tower root
    bool absorbed = false; // rho already lies in an interval part
};

struct RotPiece {
    Rat lo, hi;
};

struct RotationReport {
    RotRInterval rot_R;
    std::vector<ComponentInterval> components;
    std::vector<IsolatedPoint> isolated;
    std::vector<Rat> exceptional;   // candidates dropped unless realized
    std::vector<int> undetermined;  // basis roots of capped towers
    std::string rigor;              // "rigorous" | "approximate"
    std::vector<RotPiece> set;      // merged union: disjoint, ascending
};

// Runs scc_decompose and compute_I_and_J on g, computes the line interval,
// and merges everything. rigor is "approximate" exactly when a tower was
// capped or the line interval is an estimate.
RotationReport assemble(const PLMap& map, CoveringGraph& g, double tol = 1e-9,
                        int budget = 2000, unsigned long long seed = 12345);

}  // namespace sunrot
