#include "sunrot/periodic_finder.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace sunrot {

namespace {

// One linear stretch of a scalar piecewise-linear function on [a, b].
struct Lin {
    Rat a, b, alpha, beta;
    Rat at(const Rat& t) const { return alpha + beta * t; }
};

// F over [lo, hi] of chart src, retracted onto branch ell copy w: pieces
// landing elsewhere (inside the skeleton) become the constant s_ell, pieces
// on the target copy are clipped from below at s_ell. Continuous by the
// cell property: images only leave the target copy through its minimum.
std::vector<Lin> retracted_pieces(const PLMap& map, const Chart& src,
                                  const Rat& lo, const Rat& hi, int ell,
                                  long long w) {
    Rat s = map.tr(ell);
    std::vector<Lin> out;
    for (const LinearPiece& piece : map.pieces_on(src, lo, hi)) {
        bool on_target = !piece.img.is_line() && piece.img.branch == ell &&
                         piece.img.copy == w;
        if (!on_target) {
            out.push_back({piece.a, piece.b, s, Rat(0)});
            continue;
        }
        Rat va = piece.at(piece.a), vb = piece.at(piece.b);
        if (va >= s && vb >= s) {
            out.push_back({piece.a, piece.b, piece.alpha, piece.beta});
        } else if (va <= s && vb <= s) {
            out.push_back({piece.a, piece.b, s, Rat(0)});
        } else {
            Rat tc = (s - piece.alpha) / piece.beta;
            if (va < s) {
                out.push_back({piece.a, tc, s, Rat(0)});
                out.push_back({tc, piece.b, piece.alpha, piece.beta});
            } else {
                out.push_back({piece.a, tc, piece.alpha, piece.beta});
                out.push_back({tc, piece.b, s, Rat(0)});
            }
        }
    }
    return out;
}

std::optional<Rat> leftmost_hit(const std::vector<Lin>& ps, const Rat& d) {
    for (const Lin& l : ps) {
        Rat va = l.at(l.a), vb = l.at(l.b);
        if (min(va, vb) <= d && d <= max(va, vb)) {
            if (l.beta == Rat(0)) return l.a;
            return (d - l.alpha) / l.beta;
        }
    }
    return std::nullopt;
}

std::optional<Rat> rightmost_hit(const std::vector<Lin>& ps, const Rat& c,
                                 const Rat& cap) {
    for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
        if (it->a > cap) continue;
        Rat b = min(it->b, cap);
        Rat va = it->at(it->a), vb = it->at(b);
        if (min(va, vb) <= c && c <= max(va, vb)) {
            if (it->beta == Rat(0)) return b;
            return (c - it->alpha) / it->beta;
        }
    }
    return std::nullopt;
}

const CovArrow& walk_arrow(const CoveringGraph& g, int u, int v) {
    for (int ai : g.out.at(u))
        if (g.arrows[ai].to == v) return g.arrows[ai];
    throw std::domain_error("walk step is not an arrow");
}

// Pull the corridor [c, d] (on the target branch, fundamental copy) back
// through one arrow: the leftmost stretch of the source interval whose
// retracted image runs exactly from c up to d.
TSegment pull_one(const PLMap& map, const BasicPartition& part,
                  const CoveringGraph& g, int vsrc, const TSegment& target) {
    const CovVertex& sv = g.v(vsrc);
    const Cell& host = part.cell(sv.host);
    if (target.chart.is_line() || target.chart.branch != host.ell ||
        target.chart.copy != 0)
        throw std::logic_error("corridor chart mismatch");
    Chart src = Chart::br(host.branch, 0);
    auto ps = retracted_pieces(map, src, host.a, sv.hi, host.ell, host.p);
    auto v = leftmost_hit(ps, target.hi);
    if (!v) throw std::logic_error("corridor lost its upper end");
    auto u = rightmost_hit(ps, target.lo, *v);
    if (!u) throw std::logic_error("corridor lost its lower end");
    return TSegment(src, *u, *v);
}

// One composite linear piece: for t in [a, b] (coordinates of the base
// chart), the current image is the point of chart `img` at alpha + beta*t.
struct CompPiece {
    Rat a, b;
    Chart img;
    Rat alpha, beta;
};

std::vector<CompPiece> compose_step(const PLMap& map,
                                    const std::vector<CompPiece>& in) {
    std::vector<CompPiece> out;
    for (const CompPiece& pc : in) {
        Rat ia = pc.alpha + pc.beta * pc.a;
        Rat ib = pc.alpha + pc.beta * pc.b;
        Rat clo = min(ia, ib), chi = max(ia, ib);
        for (const LinearPiece& q : map.pieces_on(pc.img, clo, chi)) {
            if (pc.beta == Rat(0)) {
                out.push_back({pc.a, pc.b, q.img,
                               q.alpha + q.beta * pc.alpha, Rat(0)});
                break;
            }
            Rat ta, tb;
            if (pc.beta > Rat(0)) {
                ta = (q.a - pc.alpha) / pc.beta;
                tb = (q.b - pc.alpha) / pc.beta;
            } else {
                ta = (q.b - pc.alpha) / pc.beta;
                tb = (q.a - pc.alpha) / pc.beta;
            }
            ta = max(ta, pc.a);
            tb = min(tb, pc.b);
            if (tb < ta) continue;
            out.push_back({ta, tb, q.img, q.alpha + q.beta * pc.alpha,
                           q.beta * pc.beta});
        }
    }
    std::sort(out.begin(), out.end(), [](const CompPiece& x, const CompPiece& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    if (out.size() > 200000)
        throw std::logic_error("composite piece count blew up");
    return out;
}

struct RootCand {
    Rat t;
    bool degenerate;
};

// Solutions of (composite value) = (same branch coordinate, deck-shifted by
// w): fixed points of F^L - w over the base branch. A final piece on the
// line chart can only solve at the attachment edge t = 0.
std::vector<RootCand> solve_final(const std::vector<CompPiece>& pieces,
                                  const SunGraphShape& shape, int branch,
                                  long long w) {
    Chart target = Chart::br(branch, w);
    Rat att = shape.branch(branch).attach + Rat(w);
    std::vector<RootCand> roots;
    for (const CompPiece& pc : pieces) {
        if (pc.img == target) {
            if (pc.beta == Rat(1)) {
                if (pc.alpha == Rat(0)) roots.push_back({pc.a, true});
            } else if (pc.beta == Rat(0)) {
                if (pc.a <= pc.alpha && pc.alpha <= pc.b)
                    roots.push_back({pc.alpha, true});
            } else {
                Rat t = pc.alpha / (Rat(1) - pc.beta);
                if (pc.a <= t && t <= pc.b) roots.push_back({t, false});
            }
        } else if (pc.img.is_line()) {
            if (pc.a == Rat(0) && pc.alpha == att)
                roots.push_back({Rat(0), false});
        }
    }
    std::sort(roots.begin(), roots.end(), [](const RootCand& x,
                                             const RootCand& y) {
        if (x.t != y.t) return x.t < y.t;
        return !x.degenerate && y.degenerate;
    });
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](const RootCand& x, const RootCand& y) {
                                return x.t == y.t;
                            }),
                roots.end());
    return roots;
}

}  // namespace

std::vector<TSegment> refine_corridors(const PLMap& map,
                                       const BasicPartition& part,
                                       const CoveringGraph& g,
                                       const std::vector<int>& path) {
    if (path.empty()) throw std::domain_error("empty walk");
    std::vector<TSegment> rev;
    rev.push_back(g.interval(part, path.back()));
    for (int i = static_cast<int>(path.size()) - 2; i >= 0; --i) {
        walk_arrow(g, path[i], path[i + 1]);  // validates the step
        rev.push_back(pull_one(map, part, g, path[i], rev.back()));
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

PeriodicWitness periodic_from_loop(const PLMap& map,
                                   const BasicPartition& part,
                                   const CoveringGraph& g,
                                   const LoopSpec& loop) {
    if (!loop.closed()) throw std::domain_error("witness wants a closed loop");
    const CovVertex& base = g.v(loop.vertices.front());
    const Cell& bh = part.cell(base.host);
    const int b0 = bh.branch;
    const long long w = loop.weight;
    const int len = static_cast<int>(loop.length);

    auto solve_over = [&](const Rat& lo,
                          const Rat& hi) -> std::optional<RootCand> {
        std::vector<CompPiece> pieces{
            {lo, hi, Chart::br(b0, 0), Rat(0), Rat(1)}};
        for (int i = 0; i < len; ++i) pieces = compose_step(map, pieces);
        auto roots = solve_final(pieces, map.shape(), b0, w);
        if (roots.empty()) return std::nullopt;
        return roots.front();
    };

    auto corridors = refine_corridors(map, part, g, loop.vertices);
    auto cand = solve_over(corridors[0].lo, corridors[0].hi);
    std::string prov = "loop-corridor";
    if (!cand) {
        cand = solve_over(bh.a, base.hi);
        prov = "power-solve";
    }
    if (!cand) throw std::logic_error("loop carries no periodic point");

    PeriodicWitness wit;
    wit.point = Point::branch(map.shape(), b0, cand->t, 0);
    wit.q = len;
    wit.p = w;
    wit.rho = Rat(w) / Rat(len);
    wit.degenerate = cand->degenerate;
    wit.provenance = prov;
    wit.trace = loop.vertices;
    if (!verify_witness(map, wit))
        throw std::logic_error("witness failed exact verification");
    return wit;
}

PeriodicWitness periodic_from_jtail(const PLMap& map,
                                    const BasicPartition& part,
                                    const IPath& ip) {
    if (ip.label_cycle.empty() || ip.q < 1)
        throw std::domain_error("path has no periodic tail");
    const Cell& last = part.cell(ip.label_cycle.back());
    const int ell = last.branch;
    const Rat len = map.shape().branch(ell).length;
    std::vector<CompPiece> pieces{
        {last.a, len, Chart::br(ell, 0), Rat(0), Rat(1)}};
    for (int i = 0; i < ip.q; ++i) pieces = compose_step(map, pieces);
    auto roots = solve_final(pieces, map.shape(), ell, ip.p);
    if (roots.empty()) throw std::logic_error("tail carries no periodic point");

    PeriodicWitness wit;
    wit.point = Point::branch(map.shape(), ell, roots.front().t, 0);
    wit.q = ip.q;
    wit.p = ip.p;
    wit.rho = Rat(ip.p, static_cast<long long>(ip.q));
    wit.degenerate = roots.front().degenerate;
    wit.provenance = "tail";
    wit.trace = ip.label_cycle;
    if (!verify_witness(map, wit))
        throw std::logic_error("witness failed exact verification");
    return wit;
}

bool verify_witness(const PLMap& map, const PeriodicWitness& w) {
    if (w.q < 1) return false;
    Point x = w.point;
    for (int i = 0; i < w.q; ++i) x = map.eval(x);
    return x == translate(w.point, w.p);
}

}  // namespace sunrot
