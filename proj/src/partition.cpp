#include "sunrot/partition.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace sunrot {

namespace {

// One maximal sub-interval of a source piece whose image stays in one
// branch copy: label (ell, p), source coordinates [a, b].
struct Hit {
    Rat a, b;
    int ell;
    long long p;
};

BigInt ceil_big(const Rat& x) { return -((-x).floor()); }

long long to_ll(const BigInt& v) {
    if (v > BigInt(std::numeric_limits<long long>::max()) ||
        v < BigInt(std::numeric_limits<long long>::min()))
        throw std::overflow_error("deck translation exceeds long long");
    return static_cast<long long>(v);
}

// Hits of one linear piece against every branch copy. A line-image piece
// meets X + Z only at attachment translates of branches swallowed up to the
// attachment (s = 0), so those hits are isolated points (or the whole piece
// when it is flat on such a level). A branch-image piece on chart (l, m)
// hits where the image coordinate reaches [s_l, len_l].
void collect_hits(const PLMap& map, const LinearPiece& piece,
                  std::vector<Hit>& out) {
    const SunGraphShape& shape = map.shape();
    if (piece.img.is_line()) {
        Rat va = piece.at(piece.a), vb = piece.at(piece.b);
        Rat lo = min(va, vb), hi = max(va, vb);
        if (piece.beta == Rat(0)) {
            auto at = shape.attachment_at(lo);
            if (at && map.branch_active(at->first) &&
                map.tr(at->first) == Rat(0))
                out.push_back({piece.a, piece.b, at->first, at->second});
            return;
        }
        for (int l = 0; l < shape.branch_count(); ++l) {
            if (!map.branch_active(l) || map.tr(l) != Rat(0)) continue;
            const Rat& att = shape.branch(l).attach;
            for (BigInt m = ceil_big(lo - att); Rat(m) + att <= hi; ++m) {
                Rat t = (att + Rat(m) - piece.alpha) / piece.beta;
                if (piece.a <= t && t <= piece.b)
                    out.push_back({t, t, l, to_ll(m)});
            }
        }
        return;
    }
    int l = piece.img.branch;
    if (!map.branch_active(l)) return;
    Rat s = map.tr(l);
    Rat len = shape.branch(l).length;
    if (piece.beta == Rat(0)) {
        Rat v = piece.at(piece.a);
        if (s <= v && v <= len)
            out.push_back({piece.a, piece.b, l, piece.img.copy});
        return;
    }
    Rat t1 = (s - piece.alpha) / piece.beta;
    Rat t2 = (len - piece.alpha) / piece.beta;
    Rat a = max(piece.a, min(t1, t2));
    Rat b = min(piece.b, max(t1, t2));
    if (a <= b) out.push_back({a, b, l, piece.img.copy});
}

}  // namespace

BasicPartition::BasicPartition(std::vector<Cell> cells, int branch_count)
    : cells_(std::move(cells)), by_branch_(branch_count) {
    for (int id = 0; id < static_cast<int>(cells_.size()); ++id) {
        const Cell& c = cells_[id];
        if (c.id != id || c.branch < 0 || c.branch >= branch_count ||
            c.b < c.a)
            throw std::logic_error("malformed cell list");
        auto& row = by_branch_[c.branch];
        if (!row.empty() && !(cells_[row.back()].b < c.a))
            throw std::logic_error("cells of a branch must be disjoint and "
                                   "ordered");
        row.push_back(id);
    }
}

BasicPartition build_partition(const PLMap& map) {
    if (!map.valid())
        throw std::domain_error("cannot partition an invalid map");
    const SunGraphShape& shape = map.shape();
    std::vector<Cell> cells;
    for (int i = 0; i < shape.branch_count(); ++i) {
        if (!map.branch_active(i)) continue;
        Rat s = map.tr(i), len = shape.branch(i).length;
        std::vector<Hit> hits;
        for (const auto& piece : map.pieces_on(Chart::br(i, 0), s, len))
            collect_hits(map, piece, hits);
        std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) {
            if (x.a != y.a) return x.a < y.a;
            return x.b < y.b;
        });
        // A cell is a maximal run of same-label hits: gaps between them map
        // into the interior of the skeleton and stay inside the cell; a hit
        // with a different label ends the run. Hits with distinct labels are
        // disjoint as closed sets (a shared point would lie on two distinct
        // attachment translates), so a touching pair means a bug upstream.
        std::vector<Hit> runs;
        for (const auto& h : hits) {
            if (!runs.empty()) {
                Hit& last = runs.back();
                if (h.ell == last.ell && h.p == last.p) {
                    last.b = max(last.b, h.b);
                    continue;
                }
                if (h.a <= last.b)
                    throw std::logic_error(
                        "touching image hits with distinct labels");
            }
            runs.push_back(h);
        }
        for (const auto& h : runs) {
            Cell c;
            c.id = static_cast<int>(cells.size());
            c.branch = i;
            c.a = h.a;
            c.b = h.b;
            c.ell = h.ell;
            c.p = h.p;
            // The left endpoint must land exactly on min X^ell + p.
            Point img = map.eval(Point::branch(shape, i, c.a, 0));
            if (img != translate(map.min_x(c.ell), c.p))
                throw std::logic_error(
                    "cell left endpoint does not reach the branch minimum");
            cells.push_back(c);
        }
    }
    return BasicPartition(std::move(cells), shape.branch_count());
}

std::optional<int> classify_point(const PLMap& map, const BasicPartition& part,
                                  const Point& p) {
    auto loc = map.in_x(p);
    if (!loc) throw std::domain_error("point does not belong to X + Z");
    const auto& [i, t, m] = *loc;
    (void)m;
    for (int id : part.of_branch(i)) {
        const Cell& c = part.cell(id);
        if (c.a <= t && t <= c.b) return id;
        if (t < c.a) break;
    }
    return std::nullopt;
}

}  // namespace sunrot
