#pragma once

// Covering graph over the basic partition. A vertex stands for the interval
// <A_0...A_n> = [min A_n, hi] inside its host cell A_n, identified by its
// significant part; the basis (height 0) is the partition itself. Expanding
// a vertex along the host label (ell, p) covers the cells of branch ell up
// to the reach: fully covered cells give arrows back into the basis, the
// single partially covered cell (if any) gives the height-(H+1) tower
// successor. A tower ends by termination (no partial cell), by exact
// repetition of the (host, reach) state — a lasso, closed by an arrow to
// the earlier vertex with the same state — or by hitting the height cap.

#include "sunrot/partition.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sunrot {

enum class ArrowKind { basis, tower, lasso };

struct CovArrow {
    int from, to;
    long long weight;  // p of the source's host cell
    ArrowKind kind;
};

struct CovVertex {
    int id = -1;
    int host = -1;   // cell id
    int height = 0;
    Rat hi;          // right endpoint; the interval is [cell.a, hi]
    int tower = -1;  // basis vertex whose tower this belongs to
    std::vector<int> word;  // significant part, as cell ids
};

struct TowerStatus {
    enum Kind { terminated, lasso, capped } kind = terminated;
    int height = 0;          // highest materialized height
    int prefix = -1;         // lasso: height where the repeating tail starts
    int period = -1;         // lasso: state period
};

// One infinite path climbing a tower forever (an I-path). It exists exactly
// when the tower lassos; a capped tower leaves it undetermined. The path is
// eventually label-periodic; it belongs to J when no tail vertex emits a
// basis arrow, and then its rotation number is p/q.
struct IPath {
    int basis = -1;
    enum Class { in_J, not_in_J, undetermined } cls = undetermined;
    std::vector<int> tail;        // vertex ids of one period of the tail
    std::vector<int> label_cycle; // host cells of the tail vertices
    int M = -1;                   // height where the tail starts
    long long p = 0;              // weight of one period
    int q = 0;                    // period
};

struct CoveringGraph {
    int basis_size = 0;
    std::vector<CovVertex> vertices;  // ids [0, basis_size) are the basis
    std::vector<CovArrow> arrows;
    std::vector<std::vector<int>> out;  // arrow indices per vertex
    std::vector<TowerStatus> towers;    // per basis vertex
    bool capped = false;
    int h_max = 0;

    // Filled by scc_decompose:
    std::vector<int> scc_id;
    std::vector<std::vector<int>> sccs;  // vertex lists per component
    std::vector<char> essential;         // component contains a cycle
    std::vector<char> meets_basis;

    // Filled by compute_I_and_J:
    std::vector<IPath> ipaths;

    const CovVertex& v(int id) const { return vertices.at(id); }
    TSegment interval(const BasicPartition& part, int id) const;
};

// Reach of the interval [cell.a, hi] under one application of F, split into
// fully covered cells of the target branch and the partial remainder.
struct Expansion {
    long long weight = 0;
    Rat reach;                                // on branch ell(host), >= s
    std::vector<int> full_cells;              // basis arrow targets, in order
    std::optional<std::pair<int, Rat>> partial;  // (cell, reach)
};

Expansion expand_interval(const PLMap& map, const BasicPartition& part,
                          int host_cell, const Rat& hi);

CoveringGraph build_graph(const BasicPartition& part, const PLMap& map,
                          int h_max = 512);

void scc_decompose(CoveringGraph& g);
void compute_I_and_J(CoveringGraph& g);

// Exact positive-covering inequalities behind every arrow: the source
// interval's left endpoint maps into the skeleton and the translated right
// endpoint of the target interval is reached. Throws std::logic_error on
// any failure.
void check_coverings(const PLMap& map, const BasicPartition& part,
                     const CoveringGraph& g);

std::string to_dot(const CoveringGraph& g, const BasicPartition& part);

}  // namespace sunrot
