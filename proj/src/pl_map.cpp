#include "sunrot/pl_map.hpp"

#include <algorithm>

namespace sunrot {

PLMap::PLMap(SunGraphShape shape, std::vector<Rat> tr,
             std::vector<ControlPoint> line,
             std::vector<std::vector<ControlPoint>> branches)
    : shape_(std::move(shape)),
      tr_(std::move(tr)),
      line_(std::move(line)),
      branches_(std::move(branches)) {
    int n = shape_.branch_count();
    if (static_cast<int>(tr_.size()) != n)
        report_.errors.push_back("tr: need one entry per branch");
    if (static_cast<int>(branches_.size()) != n)
        report_.errors.push_back("branch_maps: need one list per branch");
    if (!report_.ok()) return;

    for (int i = 0; i < n; ++i) {
        if (tr_[i] < Rat(0) || tr_[i] > shape_.branch(i).length)
            report_.errors.push_back("tr: branch " + std::to_string(i) +
                                     " segment end outside [0, len]");
    }
    build_pieces();
    if (report_.ok()) {
        pieces_ok_ = true;
        check_closure_and_invariance();
    }
}

std::optional<LinearPiece> PLMap::resolve_pair(const ControlPoint& p,
                                               const ControlPoint& q,
                                               const std::string& where) {
    if (!(p.x < q.x)) {
        report_.errors.push_back(where + ": control abscissae not strictly "
                                         "increasing at x=" + q.x.str());
        return std::nullopt;
    }
    auto cp = charts_of(shape_, p.v);
    auto cq = charts_of(shape_, q.v);
    // prefer the line when both readings exist (only happens when both
    // values are the same attachment point, where the choice is irrelevant)
    std::optional<Chart> common;
    for (const auto& a : cp)
        for (const auto& b : cq)
            if (a == b && (!common || a.is_line())) common = a;
    if (!common) {
        report_.errors.push_back(
            where + ": consecutive control values " + p.v.str() + " at x=" +
            p.x.str() + " and " + q.v.str() + " at x=" + q.x.str() +
            " share no chart; refine the subdivision so each linear piece "
            "stays inside one chart");
        return std::nullopt;
    }
    Rat ua = *coord_in_chart(shape_, p.v, *common);
    Rat ub = *coord_in_chart(shape_, q.v, *common);
    LinearPiece piece;
    piece.a = p.x;
    piece.b = q.x;
    piece.img = *common;
    piece.beta = (ub - ua) / (q.x - p.x);
    piece.alpha = ua - piece.beta * p.x;
    return piece;
}

void PLMap::build_pieces() {
    if (line_.size() < 2) {
        report_.errors.push_back("line: need at least two control points");
        return;
    }
    if (line_.front().x != Rat(0) || line_.back().x != Rat(1)) {
        report_.errors.push_back("line: control points must span [0,1]");
        return;
    }
    for (size_t j = 0; j + 1 < line_.size(); ++j)
        if (auto piece = resolve_pair(line_[j], line_[j + 1], "line"))
            line_pieces_.push_back(*piece);

    branch_pieces_.resize(branches_.size());
    for (size_t i = 0; i < branches_.size(); ++i) {
        const auto& ctrl = branches_[i];
        std::string where = "branch " + std::to_string(i);
        if (ctrl.size() < 2) {
            report_.errors.push_back(where + ": need at least two control points");
            continue;
        }
        if (ctrl.front().x != Rat(0) ||
            ctrl.back().x != shape_.branch(static_cast<int>(i)).length) {
            report_.errors.push_back(where + ": control points must span [0, len]");
            continue;
        }
        for (size_t j = 0; j + 1 < ctrl.size(); ++j)
            if (auto piece = resolve_pair(ctrl[j], ctrl[j + 1], where))
                branch_pieces_[i].push_back(*piece);
    }
}

void PLMap::check_closure_and_invariance() {
    // degree-1 closure on the line
    if (line_.back().v != translate(line_.front().v, 1))
        report_.errors.push_back("line: value at 1 must equal value at 0 "
                                 "translated by 1");
    // continuity at attachments: branch value at t=0 equals F(attach_i)
    for (int i = 0; i < shape_.branch_count(); ++i) {
        Point at_line = eval(Point::line(shape_.branch(i).attach));
        if (branches_[i].front().v != at_line)
            report_.errors.push_back(
                "branch " + std::to_string(i) +
                ": value at t=0 must equal the line image of the attachment (" +
                at_line.str() + ")");
    }
    // F(T_R) inside T_R, checked piece by piece with exact images
    auto check_seg = [&](const TSegment& seg, const std::string& what) {
        for (const auto& piece : image_segment(seg)) {
            if (!segment_in_tr(piece))
                report_.errors.push_back(
                    what + ": image piece " + piece.str() +
                    " leaves the declared invariant skeleton");
        }
    };
    check_seg(TSegment(Chart::line(), Rat(0), Rat(1)), "line");
    for (int i = 0; i < shape_.branch_count(); ++i)
        if (tr_[i] > Rat(0))
            check_seg(TSegment(Chart::br(i, 0), Rat(0), tr_[i]),
                      "tr segment of branch " + std::to_string(i));
}

void PLMap::require_valid() const {
    // geometric operations need the piece decomposition only; semantic
    // failures (closure, invariance) are surfaced through validation()
    if (!pieces_ok_)
        throw std::logic_error("pl_map: using a structurally invalid map: " +
                               (report_.errors.empty() ? std::string("?")
                                                       : report_.errors.front()));
}

std::vector<BranchOfF> PLMap::branches_of_f() const {
    std::vector<BranchOfF> out;
    for (int i = 0; i < shape_.branch_count(); ++i)
        if (branch_active(i))
            out.push_back({i, tr_[i], shape_.branch(i).length});
    return out;
}

Point PLMap::min_x(int i) const {
    return Point::branch(shape_, i, tr_[i], 0);
}

bool PLMap::in_tr(const Point& p) const {
    if (p.on_line()) return true;
    return p.t() <= tr_[p.branch_index()];
}

bool PLMap::in_int_tr(const Point& p) const {
    // boundary of T_R = the points min X^l + m over active branches
    if (p.on_line()) {
        auto at = shape_.attachment_at(p.x());
        if (at && branch_active(at->first) && tr_[at->first] == Rat(0))
            return false;
        return true;
    }
    int i = p.branch_index();
    if (p.t() < tr_[i]) return true;
    if (p.t() == tr_[i] && !branch_active(i)) return true;  // branch tip
    return false;
}

std::optional<std::tuple<int, Rat, long long>> PLMap::in_x(
    const Point& p) const {
    if (p.on_line()) {
        auto at = shape_.attachment_at(p.x());
        if (at && branch_active(at->first) && tr_[at->first] == Rat(0))
            return std::make_tuple(at->first, Rat(0), at->second);
        return std::nullopt;
    }
    int i = p.branch_index();
    if (branch_active(i) && p.t() >= tr_[i])
        return std::make_tuple(i, p.t(), p.copy());
    return std::nullopt;
}

bool PLMap::segment_in_tr(const TSegment& s) const {
    if (s.chart.is_line()) return true;
    return s.hi <= tr_[s.chart.branch];
}

bool PLMap::line_invariant() const {
    for (const auto& c : line_)
        if (!c.v.on_line()) return false;
    return true;
}

std::vector<LinearPiece> PLMap::pieces_on(const Chart& c, const Rat& lo,
                                          const Rat& hi) const {
    require_valid();
    if (hi < lo) throw std::domain_error("pieces_on: hi < lo");
    std::vector<LinearPiece> out;

    auto emit = [&](const LinearPiece& src, long long src_shift,
                    long long img_shift, const Rat& a, const Rat& b) {
        // src is a fundamental piece over [src.a, src.b]. Line coordinates
        // shift with the deck (src_shift = k, absolute x = fundamental + k);
        // branch coordinates do not (t is the same on every copy), so branch
        // sources pass src_shift = 0 and only the image moves.
        LinearPiece p;
        p.a = a;
        p.b = b;
        p.beta = src.beta;
        p.alpha = src.alpha - src.beta * Rat(src_shift);
        if (src.img.is_line()) {
            p.img = Chart::line();
            p.alpha += Rat(img_shift);
        } else {
            p.img = Chart::br(src.img.branch, src.img.copy + img_shift);
        }
        out.push_back(p);
    };

    if (c.is_line()) {
        if (lo == hi) {
            long long k = lo.floor_ll();
            Rat tf = lo - Rat(k);
            for (const auto& piece : line_pieces_) {
                if (piece.a <= tf && tf < piece.b) {
                    emit(piece, k, k, lo, lo);
                    return out;
                }
            }
            // tf in [0,1) is always inside some piece; defensive:
            throw std::logic_error("pieces_on: line point not covered");
        }
        long long k0 = lo.floor_ll();
        long long k1 = hi.floor_ll();
        if (Rat(k1) == hi) --k1;  // right endpoint on a period boundary
        for (long long k = k0; k <= k1; ++k) {
            for (const auto& piece : line_pieces_) {
                Rat a = max(lo, piece.a + Rat(k));
                Rat b = min(hi, piece.b + Rat(k));
                if (a < b) emit(piece, k, k, a, b);
            }
        }
        return out;
    }

    int i = c.branch;
    if (i < 0 || i >= shape_.branch_count())
        throw std::domain_error("pieces_on: bad branch chart");
    if (lo < Rat(0) || hi > shape_.branch(i).length)
        throw std::domain_error("pieces_on: coordinates outside branch");
    const auto& pieces = branch_pieces_[i];
    if (lo == hi) {
        for (const auto& piece : pieces) {
            if (piece.a <= lo && lo < piece.b) {
                emit(piece, 0, c.copy, lo, lo);
                return out;
            }
        }
        if (!pieces.empty() && lo == pieces.back().b) {
            emit(pieces.back(), 0, c.copy, lo, lo);
            return out;
        }
        throw std::logic_error("pieces_on: branch point not covered");
    }
    for (const auto& piece : pieces) {
        Rat a = max(lo, piece.a);
        Rat b = min(hi, piece.b);
        if (a < b) emit(piece, 0, c.copy, a, b);
    }
    return out;
}

Point PLMap::eval(const Point& p) const {
    require_valid();
    Chart c = p.on_line() ? Chart::line()
                          : Chart::br(p.branch_index(), p.copy());
    Rat t = p.on_line() ? p.x() : p.t();
    auto pieces = pieces_on(c, t, t);
    const auto& piece = pieces.front();
    return point_from_chart(shape_, piece.img, piece.at(t));
}

std::vector<TSegment> PLMap::image_segment(const TSegment& seg) const {
    std::vector<TSegment> chain;
    for (const auto& piece : pieces_on(seg.chart, seg.lo, seg.hi))
        chain.emplace_back(piece.img, piece.at(piece.a), piece.at(piece.b));
    return chain;
}

PreimageResult PLMap::preimage_in_segment(const TSegment& seg,
                                          const Point& target) const {
    PreimageResult res;
    for (const auto& piece : pieces_on(seg.chart, seg.lo, seg.hi)) {
        auto tau = coord_in_chart(shape_, target, piece.img);
        if (!tau) continue;
        if (piece.beta == Rat(0)) {
            if (piece.alpha == *tau) {
                res.degenerate = true;
                res.roots.push_back(piece.a);
                res.roots.push_back(piece.b);
            }
            continue;
        }
        Rat u = (*tau - piece.alpha) / piece.beta;
        if (piece.a <= u && u <= piece.b) res.roots.push_back(u);
    }
    std::sort(res.roots.begin(), res.roots.end());
    res.roots.erase(std::unique(res.roots.begin(), res.roots.end()),
                    res.roots.end());
    return res;
}

}  // namespace sunrot
