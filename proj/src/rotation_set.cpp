#include "sunrot/rotation_set.hpp"

#include "sunrot/digraph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace sunrot {

namespace {

long long to_ll(const BigInt& b, const char* what) {
    if (b < std::numeric_limits<long long>::min() ||
        b > std::numeric_limits<long long>::max())
        throw std::overflow_error(std::string(what) + ": out of range");
    return static_cast<long long>(b);
}

int find_arrow(const CoveringGraph& g, int u, int v) {
    for (int ai : g.out.at(u))
        if (g.arrows[ai].to == v) return ai;
    throw std::domain_error("walk step is not an arrow");
}

}  // namespace

LoopSpec make_walk(const CoveringGraph& g, const std::vector<int>& vertices) {
    if (vertices.empty()) throw std::domain_error("empty walk");
    LoopSpec l;
    l.vertices = vertices;
    for (size_t i = 0; i + 1 < vertices.size(); ++i) {
        const CovArrow& a =
            g.arrows[find_arrow(g, vertices[i], vertices[i + 1])];
        l.weight += a.weight;
        ++l.length;
    }
    return l;
}

Rat loop_rho(const LoopSpec& l) {
    if (!l.closed())
        throw std::domain_error("rotation number needs a closed loop");
    return Rat(l.weight) / Rat(l.length);
}

LoopSpec concat(const LoopSpec& a, const LoopSpec& b) {
    if (a.vertices.empty() || b.vertices.empty() ||
        a.vertices.back() != b.vertices.front())
        throw std::domain_error("walks do not concatenate");
    LoopSpec r = a;
    r.vertices.insert(r.vertices.end(), b.vertices.begin() + 1,
                      b.vertices.end());
    r.weight += b.weight;
    r.length += b.length;
    return r;
}

LoopSpec power(const LoopSpec& a, long long k) {
    if (!a.closed()) throw std::domain_error("power of a non-closed walk");
    if (k < 1) throw std::domain_error("power wants a positive exponent");
    if (a.length * k > 1000000)
        throw std::domain_error("synthesized loop would be too long");
    LoopSpec r;
    r.weight = a.weight * k;
    r.length = a.length * k;
    r.vertices.reserve(static_cast<size_t>(r.length) + 1);
    r.vertices.push_back(a.vertices.front());
    for (long long i = 0; i < k; ++i)
        r.vertices.insert(r.vertices.end(), a.vertices.begin() + 1,
                          a.vertices.end());
    return r;
}

ComponentInterval component_interval(const CoveringGraph& g, int scc) {
    if (g.sccs.empty())
        throw std::logic_error("components were not computed");
    Digraph d(static_cast<int>(g.vertices.size()));
    for (const auto& a : g.arrows) d.add_edge(a.from, a.to, a.weight);
    std::vector<char> inside(g.vertices.size(), 0);
    for (int v : g.sccs.at(scc)) inside[v] = 1;
    auto mn = mean_cycle(d, inside, false);
    auto mx = mean_cycle(d, inside, true);
    if (!mn || !mx) throw std::domain_error("component has no cycle");
    ComponentInterval c;
    c.scc = scc;
    c.lo = mn->mean;
    c.hi = mx->mean;
    c.gamma_lo = make_walk(g, mn->cycle);
    c.gamma_hi = make_walk(g, mx->cycle);
    if (c.hi < c.lo) throw std::logic_error("mean cycle bounds crossed");
    if (loop_rho(c.gamma_lo) != c.lo || loop_rho(c.gamma_hi) != c.hi)
        throw std::logic_error("witness loop mean mismatch");
    return c;
}

namespace {

std::vector<int> bfs_path(const CoveringGraph& g,
                          const std::vector<char>& inside, int from, int to) {
    std::vector<int> prev(g.vertices.size(), -2);
    std::deque<int> queue{from};
    prev[from] = -1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (v == to) break;
        for (int ai : g.out[v]) {
            int w = g.arrows[ai].to;
            if (!inside[w] || prev[w] != -2) continue;
            prev[w] = v;
            queue.push_back(w);
        }
    }
    if (prev[to] == -2)
        throw std::logic_error("component is not strongly connected");
    std::vector<int> path;
    for (int v = to; v != -1; v = prev[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

LoopSpec synthesize_loop(const CoveringGraph& g, const ComponentInterval& c,
                         const Rat& r) {
    if (r < c.lo || c.hi < r)
        throw std::domain_error("target mean outside the component interval");
    if (r == c.lo) return c.gamma_lo;
    if (r == c.hi) return c.gamma_hi;
    const BigInt p = r.num(), q = r.den();
    std::vector<char> inside(g.vertices.size(), 0);
    for (int v : g.sccs.at(c.scc)) inside[v] = 1;
    const int u = c.gamma_lo.vertices.front();
    const int v = c.gamma_hi.vertices.front();

    // A loop at u with mean >= r: route over to gamma_hi, spin it often
    // enough to dominate the connector's deficit, and come back.
    LoopSpec high;
    if (u == v) {
        high = c.gamma_hi;
    } else {
        LoopSpec P = make_walk(g, bfs_path(g, inside, u, v));
        LoopSpec Q = make_walk(g, bfs_path(g, inside, v, u));
        BigInt deficit = p * BigInt(P.length + Q.length) -
                         q * BigInt(P.weight + Q.weight);
        BigInt gain =
            q * BigInt(c.gamma_hi.weight) - p * BigInt(c.gamma_hi.length);
        BigInt kb = deficit <= 0 ? BigInt(1) : (deficit + gain - 1) / gain;
        if (kb < 1) kb = 1;
        long long k = to_ll(kb, "connector exponent");
        high = concat(P, concat(power(c.gamma_hi, k), Q));
    }
    // d1, d2 measure the signed distance of each mean from r, scaled by q
    // times the length; mixing a copies of gamma_lo with b copies of high
    // cancels them exactly.
    BigInt d1 = p * BigInt(c.gamma_lo.length) - q * BigInt(c.gamma_lo.weight);
    BigInt d2 = q * BigInt(high.weight) - p * BigInt(high.length);
    if (d1 <= 0)
        throw std::logic_error("low witness does not sit below the target");
    if (d2 < 0) throw std::logic_error("high side lost its excess");
    if (d2 == 0) return high;
    BigInt gg = boost::multiprecision::gcd(d1, d2);
    long long a = to_ll(d2 / gg, "low exponent");
    long long b = to_ll(d1 / gg, "high exponent");
    LoopSpec res = concat(power(c.gamma_lo, a), power(high, b));
    if (loop_rho(res) != r)
        throw std::logic_error("synthesized loop mean is off");
    return res;
}

LoopSpec tail_loop(const CoveringGraph& g, const IPath& ip) {
    if (ip.tail.empty()) throw std::domain_error("path has no periodic tail");
    std::vector<int> verts = ip.tail;
    verts.push_back(ip.tail.front());
    LoopSpec l = make_walk(g, verts);
    if (l.weight != ip.p || l.length != ip.q)
        throw std::logic_error("tail loop disagrees with its path data");
    return l;
}

namespace {

Rat line_eval(const PLMap& map, const Rat& x) {
    Point v = map.eval(Point::line(x));
    if (!v.on_line()) throw std::logic_error("line dynamics left the line");
    return v.x();
}

// Pointwise monotone envelope of F|R: minimum of F over [x, x+1] (lower) or
// maximum over [x-1, x] (upper). The extremum sits at a window endpoint or
// at a breakpoint translate inside the window.
Rat envelope_eval(const PLMap& map, const std::vector<Rat>& bps, const Rat& x,
                  bool lower) {
    Rat wlo = lower ? x : x - Rat(1);
    Rat whi = wlo + Rat(1);
    Rat best = line_eval(map, wlo);
    Rat other = line_eval(map, whi);
    if (lower ? other < best : best < other) best = other;
    for (const Rat& b : bps) {
        Rat k = Rat((wlo - b).floor()) + Rat(1);
        Rat y = b + k;  // the unique translate of b in (wlo, whi), if any
        if (y <= wlo || whi <= y) continue;
        Rat val = line_eval(map, y);
        if (lower ? val < best : best < val) best = val;
    }
    return best;
}

struct RhoEnclosure {
    Rat lo, hi;
    bool exact = false;
};

// Rotation number of a monotone degree-1 lift, from the exact orbit of 0.
// A repeated fractional part yields the exact value; otherwise the orbit
// displacements pin it inside intersected enclosures |x_n - n rho| <= 1.
template <class G>
RhoEnclosure monotone_rho(const G& step, int budget) {
    Rat x(0);
    std::map<Rat, std::pair<int, Rat>> seen;
    seen.emplace(Rat(0), std::make_pair(0, Rat(0)));
    bool have = false;
    Rat lo, hi;
    for (int n = 1; n <= budget; ++n) {
        x = step(x);
        Rat frac = x - Rat(x.floor());
        auto it = seen.find(frac);
        if (it != seen.end()) {
            const Rat rho =
                (x - it->second.second) / Rat(n - it->second.first);
            return {rho, rho, true};
        }
        seen.emplace(frac, std::make_pair(n, x));
        Rat l = (x - Rat(1)) / Rat(n), h = (x + Rat(1)) / Rat(n);
        if (!have) {
            lo = l;
            hi = h;
            have = true;
        } else {
            if (lo < l) lo = l;
            if (h < hi) hi = h;
        }
    }
    if (hi < lo) throw std::logic_error("rotation enclosures crossed");
    return {lo, hi, false};
}

}  // namespace

RotRInterval rot_R_interval(const PLMap& map, double tol, int budget,
                            unsigned long long seed) {
    if (budget < 1) throw std::domain_error("budget must be positive");
    RotRInterval out;
    if (map.line_invariant()) {
        bool monotone = true;
        for (const auto& pc : map.pieces_on(Chart::line(), Rat(0), Rat(1)))
            if (pc.beta < Rat(0)) monotone = false;
        if (monotone) {
            auto r = monotone_rho(
                [&](const Rat& x) { return line_eval(map, x); }, budget);
            out.lo = r.lo;
            out.hi = r.hi;
            out.rigor = r.exact ? "exact" : "rigorous-enclosure";
            return out;
        }
        std::set<Rat> fr;
        for (const auto& cp : map.line_controls())
            fr.insert(cp.x - Rat(cp.x.floor()));
        std::vector<Rat> bps(fr.begin(), fr.end());
        auto rl = monotone_rho(
            [&](const Rat& x) { return envelope_eval(map, bps, x, true); },
            budget);
        auto ru = monotone_rho(
            [&](const Rat& x) { return envelope_eval(map, bps, x, false); },
            budget);
        out.lo = rl.lo;
        out.hi = ru.hi;
        if (out.hi < out.lo) throw std::logic_error("envelope order violated");
        out.rigor = (rl.exact && ru.exact) ? "exact" : "rigorous-enclosure";
        return out;
    }

    // The line leaks into the branches: sample orbits and read displacement
    // through the line retraction. Estimate only.
    const SunGraphShape& shape = map.shape();
    std::mt19937_64 rng(seed);
    const int starts = 24, steps_max = 400;
    const size_t den_digit_cap = 3000;
    double lo_d = 0, hi_d = 0;
    bool have = false;
    for (int s = 0; s < starts; ++s) {
        Rat jitter(static_cast<long long>(rng() % 1009),
                   1009LL * 4 * starts);
        Rat x0 = Rat(2 * s + 1, 2 * starts) + jitter;
        Point pt = Point::line(x0);
        Rat r0 = retract_line(shape, pt);
        int n = 0;
        while (n < steps_max) {
            pt = map.eval(pt);
            ++n;
            const Rat& coord = pt.on_line() ? pt.x() : pt.t();
            if (coord.den().str().size() > den_digit_cap) break;
        }
        double est = (retract_line(shape, pt) - r0).to_double() / n;
        if (!have) {
            lo_d = hi_d = est;
            have = true;
        } else {
            lo_d = std::min(lo_d, est);
            hi_d = std::max(hi_d, est);
        }
    }
    if (!have) throw std::logic_error("no orbit was sampled");
    double t = std::clamp(tol, 1e-12, 1.0);
    long long den = std::llround(1.0 / t);
    if (den < 1) den = 1;
    auto snap = [&](double v) {
        return Rat(std::llround(v * static_cast<double>(den)), den);
    };
    out.lo = snap(lo_d);
    out.hi = snap(hi_d);
    if (out.hi < out.lo) out.hi = out.lo;
    out.rigor = "estimate";
    return out;
}

RotationReport assemble(const PLMap& map, CoveringGraph& g, double tol,
                        int budget, unsigned long long seed) {
    scc_decompose(g);
    compute_I_and_J(g);
    RotationReport rep;
    rep.rot_R = rot_R_interval(map, tol, budget, seed);
    for (int c = 0; c < static_cast<int>(g.sccs.size()); ++c)
        if (g.essential[c] && g.meets_basis[c])
            rep.components.push_back(component_interval(g, c));
    std::sort(rep.components.begin(), rep.components.end(),
              [](const ComponentInterval& a, const ComponentInterval& b) {
                  if (a.lo != b.lo) return a.lo < b.lo;
                  if (a.hi != b.hi) return a.hi < b.hi;
                  return a.scc < b.scc;
              });
    for (const IPath& ip : g.ipaths) {
        if (ip.cls == IPath::undetermined) {
            rep.undetermined.push_back(ip.basis);
            continue;
        }
        IsolatedPoint pt;
        pt.rho = Rat(ip.p, static_cast<long long>(ip.q));
        pt.p = ip.p;
        pt.q = ip.q;
        pt.M = ip.M;
        pt.label_cycle = ip.label_cycle;
        pt.in_J = ip.cls == IPath::in_J;
        pt.basis = ip.basis;
        rep.isolated.push_back(std::move(pt));
    }
    std::sort(rep.isolated.begin(), rep.isolated.end(),
              [](const IsolatedPoint& a, const IsolatedPoint& b) {
                  if (a.rho != b.rho) return a.rho < b.rho;
                  return a.basis < b.basis;
              });
    std::sort(rep.undetermined.begin(), rep.undetermined.end());

    auto merge = [](std::vector<RotPiece> v) {
        std::sort(v.begin(), v.end(), [](const RotPiece& a, const RotPiece& b) {
            if (a.lo != b.lo) return a.lo < b.lo;
            return a.hi < b.hi;
        });
        std::vector<RotPiece> m;
        for (const auto& p : v) {
            if (!m.empty() && p.lo <= m.back().hi)
                m.back().hi = max(m.back().hi, p.hi);
            else
                m.push_back(p);
        }
        return m;
    };
    std::vector<RotPiece> parts;
    parts.push_back({rep.rot_R.lo, rep.rot_R.hi});
    for (const auto& c : rep.components) parts.push_back({c.lo, c.hi});
    const std::vector<RotPiece> interval_parts = merge(std::move(parts));
    std::vector<RotPiece> all = interval_parts;
    for (auto& ip : rep.isolated) {
        bool inside = false;
        for (const auto& pc : interval_parts)
            if (pc.lo <= ip.rho && ip.rho <= pc.hi) inside = true;
        ip.absorbed = inside;
        if (!inside) all.push_back({ip.rho, ip.rho});
    }
    rep.set = merge(std::move(all));
    rep.rigor = (g.capped || rep.rot_R.rigor == "estimate") ? "approximate"
                                                            : "rigorous";
    return rep;
}

}  // namespace sunrot
