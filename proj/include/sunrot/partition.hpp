#pragma once

// Basic partition of the branch residuals X^i into maximal closed cells on
// which F keeps a single target label (ell, p): every point of a cell maps
// into branch copy X^ell + p or the interior of the skeleton, the cell's
// left endpoint maps exactly onto min X^ell + p, and consecutive cells of a
// branch carry distinct labels. Points of X outside every cell form the
// dustbin: their image avoids X + Z entirely.

#include "sunrot/pl_map.hpp"

#include <optional>
#include <vector>

namespace sunrot {

struct Cell {
    int id = -1;
    int branch = -1;  // branch carrying the cell
    Rat a, b;         // closed interval [a, b] in branch coordinates, a <= b
    int ell = -1;     // target branch
    long long p = 0;  // target deck translation
};

class BasicPartition {
public:
    BasicPartition(std::vector<Cell> cells, int branch_count);

    int size() const { return static_cast<int>(cells_.size()); }
    const Cell& cell(int id) const { return cells_.at(id); }
    const std::vector<Cell>& cells() const { return cells_; }
    // Cell ids on one branch, in increasing coordinate order.
    const std::vector<int>& of_branch(int i) const { return by_branch_.at(i); }

private:
    std::vector<Cell> cells_;
    std::vector<std::vector<int>> by_branch_;
};

BasicPartition build_partition(const PLMap& map);

// Cell containing p, or nullopt when p lies in the dustbin. p must belong
// to X + Z (std::domain_error otherwise). The deck copy is ignored: cells
// live on fundamental branch copies.
std::optional<int> classify_point(const PLMap& map, const BasicPartition& part,
                                  const Point& p);

}  // namespace sunrot
