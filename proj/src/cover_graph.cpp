#include "sunrot/cover_graph.hpp"

#include "sunrot/digraph.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace sunrot {

TSegment CoveringGraph::interval(const BasicPartition& part, int id) const {
    const CovVertex& w = vertices.at(id);
    const Cell& c = part.cell(w.host);
    return TSegment(Chart::br(c.branch, 0), c.a, w.hi);
}

Expansion expand_interval(const PLMap& map, const BasicPartition& part,
                          int host_cell, const Rat& hi) {
    const Cell& host = part.cell(host_cell);
    if (hi < host.a || hi > host.b)
        throw std::domain_error("interval endpoint outside the host cell");
    Expansion e;
    e.weight = host.p;
    int ell = host.ell;
    Rat s = map.tr(ell);
    // F(host.a) = min X^ell + p, so the image always reaches coordinate s.
    // It is connected and meets the target copy in a sub-branch [s, reach].
    Rat reach = s;
    TSegment dom(Chart::br(host.branch, 0), host.a, hi);
    for (const TSegment& seg : map.image_segment(dom)) {
        if (!seg.chart.is_line() && seg.chart.branch == ell &&
            seg.chart.copy == host.p) {
            reach = max(reach, seg.hi);
        } else if (!map.segment_in_tr(seg)) {
            throw std::logic_error(
                "image of a vertex interval leaves the target copy and the "
                "skeleton");
        }
    }
    e.reach = reach;
    for (int cid : part.of_branch(ell)) {
        const Cell& c = part.cell(cid);
        if (c.b <= reach) {
            e.full_cells.push_back(cid);
        } else if (c.a <= reach) {
            e.partial = {cid, reach};
            break;
        } else {
            break;
        }
    }
    return e;
}

namespace {

void add_arrow(CoveringGraph& g, int from, int to, long long w, ArrowKind k) {
    g.out.at(from).push_back(static_cast<int>(g.arrows.size()));
    g.arrows.push_back({from, to, w, k});
}

}  // namespace

CoveringGraph build_graph(const BasicPartition& part, const PLMap& map,
                          int h_max) {
    if (h_max < 1) throw std::domain_error("height cap must be at least 1");
    CoveringGraph g;
    g.basis_size = part.size();
    g.h_max = h_max;
    for (int i = 0; i < part.size(); ++i) {
        CovVertex v;
        v.id = i;
        v.host = i;
        v.height = 0;
        v.hi = part.cell(i).b;
        v.tower = i;
        v.word = {i};
        g.vertices.push_back(std::move(v));
        g.out.emplace_back();
    }
    g.towers.resize(part.size());

    for (int b = 0; b < part.size(); ++b) {
        std::map<std::pair<int, Rat>, int> seen;  // (host, hi) -> vertex
        int cur = b;
        for (;;) {
            const CovVertex v = g.vertices[cur];  // copy: the vector grows
            Expansion e = expand_interval(map, part, v.host, v.hi);
            for (int cid : e.full_cells)
                add_arrow(g, cur, cid, e.weight, ArrowKind::basis);
            if (!e.partial) {
                g.towers[b] = {TowerStatus::terminated, v.height, -1, -1};
                break;
            }
            auto key = *e.partial;
            // A full cover never reappears as a partial state, so the basis
            // root itself cannot be hit and needs no seen entry.
            auto it = seen.find(key);
            if (it != seen.end()) {
                add_arrow(g, cur, it->second, e.weight, ArrowKind::lasso);
                int h1 = g.vertices[it->second].height;
                g.towers[b] = {TowerStatus::lasso, v.height, h1,
                               v.height + 1 - h1};
                break;
            }
            if (v.height + 1 > h_max) {
                g.towers[b] = {TowerStatus::capped, v.height, -1, -1};
                g.capped = true;
                break;
            }
            CovVertex w;
            w.id = static_cast<int>(g.vertices.size());
            w.host = key.first;
            w.height = v.height + 1;
            w.hi = key.second;
            w.tower = b;
            w.word = v.word;
            w.word.push_back(key.first);
            if (!(w.hi < part.cell(w.host).b))
                throw std::logic_error("tower vertex covers its host cell");
            seen[key] = w.id;
            g.vertices.push_back(w);
            g.out.emplace_back();
            add_arrow(g, cur, w.id, e.weight, ArrowKind::tower);
            cur = w.id;
        }
    }
    return g;
}

void scc_decompose(CoveringGraph& g) {
    Digraph d(static_cast<int>(g.vertices.size()));
    for (const auto& a : g.arrows) d.add_edge(a.from, a.to, a.weight);
    auto [comp, count] = tarjan_scc(d);
    g.scc_id = comp;
    g.sccs.assign(count, {});
    for (int v = 0; v < d.n; ++v) g.sccs[comp[v]].push_back(v);
    g.essential.assign(count, 0);
    g.meets_basis.assign(count, 0);
    for (const auto& a : g.arrows)
        if (comp[a.from] == comp[a.to]) g.essential[comp[a.from]] = 1;
    for (int v = 0; v < g.basis_size; ++v) g.meets_basis[comp[v]] = 1;
}

void compute_I_and_J(CoveringGraph& g) {
    g.ipaths.clear();
    for (int b = 0; b < g.basis_size; ++b) {
        const TowerStatus& st = g.towers[b];
        if (st.kind == TowerStatus::terminated) continue;
        IPath ip;
        ip.basis = b;
        if (st.kind == TowerStatus::capped) {
            ip.cls = IPath::undetermined;
            g.ipaths.push_back(std::move(ip));
            continue;
        }
        ip.M = st.prefix;
        ip.q = st.period;
        for (const auto& v : g.vertices) {
            if (v.tower != b) continue;
            if (v.height >= st.prefix && v.height < st.prefix + st.period)
                ip.tail.push_back(v.id);
        }
        // Tower vertices are materialized in height order.
        bool emits = false;
        for (int vid : ip.tail) {
            ip.label_cycle.push_back(g.vertices[vid].host);
            for (int ai : g.out[vid]) {
                if (g.arrows[ai].kind == ArrowKind::basis) emits = true;
            }
        }
        for (int r = 0; r < ip.q; ++r) {
            int from = ip.tail[r];
            // Each tail vertex has exactly one tower/lasso arrow; its weight
            // is the host's p.
            long long w = 0;
            bool found = false;
            for (int ai : g.out[from]) {
                if (g.arrows[ai].kind != ArrowKind::basis) {
                    w = g.arrows[ai].weight;
                    found = true;
                }
            }
            if (!found)
                throw std::logic_error("tail vertex lost its tower arrow");
            ip.p += w;
        }
        ip.cls = emits ? IPath::not_in_J : IPath::in_J;
        g.ipaths.push_back(std::move(ip));
    }
    if (static_cast<int>(g.ipaths.size()) > g.basis_size)
        throw std::logic_error("more infinite paths than basis vertices");
}

void check_coverings(const PLMap& map, const BasicPartition& part,
                     const CoveringGraph& g) {
    const SunGraphShape& shape = map.shape();
    for (const auto& a : g.arrows) {
        TSegment ia = g.interval(part, a.from);
        const Cell& ha = part.cell(g.vertices[a.from].host);
        Point lo = Point::branch(shape, ha.branch, ha.a, 0);
        if (!map.in_tr(map.eval(lo)))
            throw std::logic_error("arrow source minimum leaves the skeleton");
        const Cell& hb = part.cell(g.vertices[a.to].host);
        Rat hi_b = a.kind == ArrowKind::basis ? hb.b : g.vertices[a.to].hi;
        Point top =
            translate(Point::branch(shape, hb.branch, hi_b, 0), a.weight);
        bool reached = false;
        for (const TSegment& seg : map.image_segment(ia))
            if (point_in_segment(shape, top, seg)) reached = true;
        if (!reached)
            throw std::logic_error("arrow target is not positively covered");
    }
}

std::string to_dot(const CoveringGraph& g, const BasicPartition& part) {
    std::ostringstream os;
    os << "digraph covering {\n  rankdir=LR;\n";
    for (const auto& v : g.vertices) {
        os << "  v" << v.id << " [label=\"";
        for (size_t i = 0; i < v.word.size(); ++i)
            os << (i ? "." : "") << v.word[i];
        os << " [" << part.cell(v.host).a.str() << "," << v.hi.str()
           << "] H=" << v.height << "\"";
        if (v.id < g.basis_size) os << ", shape=box";
        os << "];\n";
    }
    for (const auto& a : g.arrows) {
        os << "  v" << a.from << " -> v" << a.to << " [label=\"w="
           << a.weight << "\"";
        if (a.kind == ArrowKind::tower) os << ", style=dashed";
        if (a.kind == ArrowKind::lasso) os << ", style=dotted";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace sunrot
