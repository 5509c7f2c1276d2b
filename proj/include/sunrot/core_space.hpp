#pragma once

// Model of the lifted sun graph: the real line R plus, for every branch i
// and integer m, a copy of the segment [0, len_i] glued to the line at
// attach_i + m. Points are kept canonical: a branch point with coordinate 0
// is stored as the line point it is glued to.

#include "sunrot/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sunrot {

struct BranchShape {
    Rat attach;  // in [0, 1)
    Rat length;  // > 0
};

// Validated at construction: attach values pairwise distinct.
class SunGraphShape {
public:
    explicit SunGraphShape(std::vector<BranchShape> branches);

    int branch_count() const { return static_cast<int>(branches_.size()); }
    const BranchShape& branch(int i) const { return branches_.at(i); }

    // Branch whose attachment point equals line coordinate x (mod nothing:
    // exact match attach_i + m). Returns (i, m) or nullopt.
    std::optional<std::pair<int, long long>> attachment_at(const Rat& x) const;

private:
    std::vector<BranchShape> branches_;
};

struct Chart {
    // branch < 0 means the line chart; copy is meaningful only for branches.
    int branch = -1;
    long long copy = 0;

    static Chart line() { return Chart{-1, 0}; }
    static Chart br(int i, long long m) { return Chart{i, m}; }
    bool is_line() const { return branch < 0; }

    friend bool operator==(const Chart& a, const Chart& b) {
        if (a.branch < 0 && b.branch < 0) return true;
        return a.branch == b.branch && a.copy == b.copy;
    }
    friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }
    friend bool operator<(const Chart& a, const Chart& b) {
        int ab = a.branch < 0 ? -1 : a.branch;
        int bb = b.branch < 0 ? -1 : b.branch;
        if (ab != bb) return ab < bb;
        if (ab < 0) return false;
        return a.copy < b.copy;
    }
    std::string str() const;
};

class Point {
public:
    // Canonical invariants: line points carry only x; branch points have
    // 0 < t <= len_i. Build through the factory functions below.
    static Point line(const Rat& x);
    static Point branch(const SunGraphShape& shape, int i, const Rat& t,
                        long long m);

    bool on_line() const { return br_ < 0; }
    const Rat& x() const;       // line coordinate, line points only
    int branch_index() const;   // branch points only
    const Rat& t() const;       // branch coordinate, branch points only
    long long copy() const;     // branch points only

    friend bool operator==(const Point& a, const Point& b);
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

    // Deck translation; canonical form is preserved (t > 0 unchanged).
    Point translated(long long dm) const;

    std::string str() const;

private:
    Point() = default;
    Rat x_;          // line coordinate or branch coordinate
    int br_ = -1;    // -1: line point
    long long m_ = 0;
};

// Closed segment inside one chart; lo <= hi. Branch charts constrain the
// coordinates to [0, len_i].
struct TSegment {
    Chart chart;
    Rat lo, hi;

    TSegment(Chart c, Rat a, Rat b);
    bool degenerate() const { return lo == hi; }
    std::string str() const;
};

// Deck translation x -> x + m.
Point translate(const Point& p, long long m);
TSegment translate(const TSegment& s, long long m);

// Retraction of the whole graph onto the line, as a line coordinate.
Rat retract_line(const SunGraphShape& shape, const Point& p);

// Every chart a point belongs to: line points belong to the line chart and,
// when they are an attachment point, to that branch chart at coordinate 0;
// branch points belong to their branch chart only.
std::vector<Chart> charts_of(const SunGraphShape& shape, const Point& p);

// Coordinate of p inside chart c, if p lies in c.
std::optional<Rat> coord_in_chart(const SunGraphShape& shape, const Point& p,
                                  const Chart& c);

// Canonical point with coordinate u in chart c (validated against shape).
Point point_from_chart(const SunGraphShape& shape, const Chart& c,
                       const Rat& u);

bool point_in_segment(const SunGraphShape& shape, const Point& p,
                      const TSegment& s);

// Order of a and b along a shared branch copy (attachment endpoints count as
// coordinate 0). Throws std::domain_error when no shared branch copy exists.
// Returns -1, 0, 1.
int branch_compare(const SunGraphShape& shape, const Point& a, const Point& b);

}  // namespace sunrot
