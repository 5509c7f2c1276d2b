#include "sunrot/oracle.hpp"

#include "sunrot/digraph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sunrot {

namespace {

int code_of(const PLMap& map, const BasicPartition& part, const Point& p) {
    if (!map.in_x(p)) return code_skeleton;
    auto cell = classify_point(map, part, p);
    return cell ? *cell : code_dustbin;
}

}  // namespace

OrbitRecord simulate(const PLMap& map, const BasicPartition& part,
                     const Point& x0, int steps) {
    if (steps < 0) throw std::domain_error("negative step count");
    OrbitRecord rec;
    rec.points.reserve(static_cast<size_t>(steps) + 1);
    rec.codes.reserve(static_cast<size_t>(steps) + 1);
    Point x = x0;
    rec.points.push_back(x);
    rec.codes.push_back(code_of(map, part, x));
    for (int i = 0; i < steps; ++i) {
        x = map.eval(x);
        rec.points.push_back(x);
        rec.codes.push_back(code_of(map, part, x));
    }
    rec.displacement = retract_line(map.shape(), x) -
                       retract_line(map.shape(), x0);
    return rec;
}

Rat orbit_mean(const OrbitRecord& rec) {
    if (rec.points.size() < 2) throw std::domain_error("orbit has no step");
    return rec.displacement /
           Rat(static_cast<long long>(rec.points.size()) - 1);
}

std::optional<long long> itinerary_weight(const BasicPartition& part,
                                          const OrbitRecord& rec) {
    if (rec.points.size() < 2) return std::nullopt;
    long long sum = 0;
    for (size_t i = 0; i + 1 < rec.codes.size(); ++i) {
        if (rec.codes[i] < 0) return std::nullopt;
        sum += part.cell(rec.codes[i]).p;
    }
    const Point& first = rec.points.front();
    const Point& last = rec.points.back();
    if (!first.on_line() && !last.on_line() &&
        last.copy() - first.copy() != sum)
        throw std::logic_error("deck bookkeeping broke along the itinerary");
    Rat drift = abs(rec.displacement - Rat(sum));
    if (drift > Rat(2))
        throw std::logic_error("line displacement drifted from the weights");
    return sum;
}

std::vector<std::pair<std::vector<int>, Rat>> enumerate_cycles(
    const CoveringGraph& g, int scc, int max_verts) {
    if (g.sccs.empty()) throw std::logic_error("components were not computed");
    Digraph d(static_cast<int>(g.vertices.size()));
    for (const auto& a : g.arrows) d.add_edge(a.from, a.to, a.weight);
    std::vector<char> inside(g.vertices.size(), 0);
    for (int v : g.sccs.at(scc)) inside[v] = 1;
    std::vector<std::pair<std::vector<int>, Rat>> out;
    for (auto& cyc : simple_cycles(d, inside, max_verts)) {
        LoopSpec l = make_walk(g, cyc);
        out.emplace_back(std::move(cyc), loop_rho(l));
    }
    return out;
}

std::vector<int> path_of_itinerary(const PLMap& map,
                                   const BasicPartition& part,
                                   const CoveringGraph& g,
                                   const OrbitRecord& rec) {
    (void)map;
    if (rec.codes.empty()) throw std::domain_error("empty orbit");
    for (int c : rec.codes)
        if (c < 0)
            throw std::domain_error("orbit leaves the cells; no walk exists");
    std::vector<int> path{rec.codes.front()};
    for (size_t i = 0; i + 1 < rec.codes.size(); ++i) {
        int cur = path.back();
        int next_host = rec.codes[i + 1];
        int chosen = -1;
        for (int ai : g.out.at(cur)) {
            const CovArrow& a = g.arrows[ai];
            if (g.v(a.to).host == next_host) {
                chosen = a.to;
                break;  // at most one arrow per target host
            }
        }
        if (chosen < 0)
            throw std::logic_error("orbit step has no matching arrow");
        const Point& np = rec.points[i + 1];
        if (np.on_line())
            throw std::logic_error("coded orbit point fell on the line");
        const Cell& host = part.cell(next_host);
        if (np.t() < host.a || g.v(chosen).hi < np.t())
            throw std::logic_error("orbit point misses the target interval");
        path.push_back(chosen);
    }
    return path;
}

double line_orbit_mean_double(const PLMap& map, double x0, int steps) {
    if (!map.line_invariant())
        throw std::domain_error("line dynamics is not self-contained");
    if (steps < 1) throw std::domain_error("need at least one step");
    struct DPiece {
        double a, b, alpha, beta;
    };
    std::vector<DPiece> table;
    for (const auto& pc : map.pieces_on(Chart::line(), Rat(0), Rat(1)))
        table.push_back({pc.a.to_double(), pc.b.to_double(),
                         pc.alpha.to_double(), pc.beta.to_double()});
    double x = x0;
    for (int i = 0; i < steps; ++i) {
        double k = std::floor(x);
        double f = x - k;
        // last piece containing f (linear scan: tables are tiny)
        const DPiece* hit = &table.back();
        for (const auto& pc : table)
            if (pc.a <= f && f <= pc.b) {
                hit = &pc;
                break;
            }
        x = hit->alpha + hit->beta * f + k;
    }
    return (x - x0) / steps;
}

}  // namespace sunrot
