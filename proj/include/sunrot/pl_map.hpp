#pragma once

// Piecewise-linear degree-1 maps on the lifted sun graph. A map is given by
// control points on the fundamental domain (the line on [0,1], each branch
// on [0, len_i]) plus the declared invariant skeleton T_R (per-branch initial
// segments [0, s_i]; the line is always inside T_R). The degree-1 closure
// F(x+m) = F(x)+m extends the data to the whole graph.
//
// Interpolation between consecutive control values happens inside a chart
// both values share (the line, or one branch copy). Value pairs sharing no
// chart are rejected at validation: the map would have to leave the chart in
// between and the data does not say how.

#include "sunrot/core_space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sunrot {

struct ControlPoint {
    Rat x;    // abscissa in the source chart
    Point v;  // value
};

struct ValidationReport {
    std::vector<std::string> errors;
    bool ok() const { return errors.empty(); }
};

// One maximal linear piece: for t in [a,b] (absolute source coordinates),
// the image is the point of chart `img` with coordinate alpha + beta*t.
struct LinearPiece {
    Rat a, b;
    Chart img;
    Rat alpha, beta;
    Rat at(const Rat& t) const { return alpha + beta * t; }
};

// A branch of F: the residual segment X^i = [s_i, len_i] of a branch not
// swallowed by T_R. Its minimum is the single point where it meets T_R.
struct BranchOfF {
    int branch;
    Rat s;    // min coordinate (min X^i is the branch point (i, s, 0))
    Rat len;
};

struct PreimageResult {
    std::vector<Rat> roots;  // ascending, deduplicated
    bool degenerate = false; // some piece solved identically (plateau hit)
};

class PLMap {
public:
    PLMap(SunGraphShape shape, std::vector<Rat> tr,
          std::vector<ControlPoint> line,
          std::vector<std::vector<ControlPoint>> branches);

    const SunGraphShape& shape() const { return shape_; }
    const ValidationReport& validation() const { return report_; }
    bool valid() const { return report_.ok(); }

    const Rat& tr(int i) const { return tr_.at(i); }
    bool branch_active(int i) const {
        return tr_.at(i) < shape_.branch(i).length;
    }
    std::vector<BranchOfF> branches_of_f() const;
    // min X^i as a point (line point when s_i = 0)
    Point min_x(int i) const;

    // Membership in T_R, its interior, and X + Z. X membership returns
    // (branch, coordinate, copy) with coordinate >= s_branch.
    bool in_tr(const Point& p) const;
    bool in_int_tr(const Point& p) const;
    std::optional<std::tuple<int, Rat, long long>> in_x(const Point& p) const;
    bool segment_in_tr(const TSegment& s) const;

    // True when every line control value lies on the line, i.e. F(R) <= R.
    bool line_invariant() const;

    Point eval(const Point& p) const;

    // Maximal linear pieces of F over a closed interval of one chart,
    // in source order, with absolute (already translated) image charts.
    std::vector<LinearPiece> pieces_on(const Chart& c, const Rat& lo,
                                       const Rat& hi) const;

    // Image of a chart segment as an ordered chain of chart segments
    // (one per linear piece; the union is connected and equals F(seg)).
    std::vector<TSegment> image_segment(const TSegment& seg) const;

    // All solutions of eval(u) = target with u in seg (coordinates in
    // seg's chart).
    PreimageResult preimage_in_segment(const TSegment& seg,
                                       const Point& target) const;

    const std::vector<ControlPoint>& line_controls() const { return line_; }
    const std::vector<ControlPoint>& branch_controls(int i) const {
        return branches_.at(i);
    }

private:
    void build_pieces();
    void check_closure_and_invariance();
    std::optional<LinearPiece> resolve_pair(const ControlPoint& p,
                                            const ControlPoint& q,
                                            const std::string& where);
    void require_valid() const;

    SunGraphShape shape_;
    std::vector<Rat> tr_;
    std::vector<ControlPoint> line_;
    std::vector<std::vector<ControlPoint>> branches_;
    std::vector<LinearPiece> line_pieces_;                // on [0,1]
    std::vector<std::vector<LinearPiece>> branch_pieces_; // on [0,len_i]
    ValidationReport report_;
    bool pieces_ok_ = false;
};

}  // namespace sunrot
