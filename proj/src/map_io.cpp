#include "sunrot/map_io.hpp"

#include <fstream>

namespace sunrot {

using nlohmann::json;

Rat parse_rat(const json& j, const std::string& where) {
    if (!j.is_string())
        throw SchemaError(where + ": rationals are strings like \"p/q\"");
    try {
        return Rat::parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw SchemaError(where + ": " + e.what());
    }
}

Point parse_point(const SunGraphShape& shape, const json& j,
                  const std::string& where) {
    if (!j.is_object() || j.size() != 1)
        throw SchemaError(where + ": a point is {\"R\": x} or {\"B\": [i,t,m]}");
    if (j.contains("R")) return Point::line(parse_rat(j["R"], where));
    if (j.contains("B")) {
        const auto& b = j["B"];
        if (!b.is_array() || b.size() != 3 || !b[0].is_number_integer() ||
            !b[2].is_number_integer())
            throw SchemaError(where + ": \"B\" takes [branch, \"t\", copy]");
        int i = b[0].get<int>();
        Rat t = parse_rat(b[1], where);
        long long m = b[2].get<long long>();
        try {
            return Point::branch(shape, i, t, m);
        } catch (const std::domain_error& e) {
            throw SchemaError(where + ": " + e.what());
        }
    }
    throw SchemaError(where + ": unknown point kind");
}

json point_json(const Point& p) {
    json j;
    if (p.on_line())
        j["R"] = p.x().str();
    else
        j["B"] = {p.branch_index(), p.t().str(), p.copy()};
    return j;
}

static std::vector<ControlPoint> parse_controls(const SunGraphShape& shape,
                                                const json& j,
                                                const std::string& where) {
    if (!j.is_array())
        throw SchemaError(where + ": expected an array of [x, point] pairs");
    std::vector<ControlPoint> out;
    for (size_t k = 0; k < j.size(); ++k) {
        const auto& e = j[k];
        std::string at = where + "[" + std::to_string(k) + "]";
        if (!e.is_array() || e.size() != 2)
            throw SchemaError(at + ": expected [x, point]");
        out.push_back({parse_rat(e[0], at), parse_point(shape, e[1], at)});
    }
    return out;
}

PLMap parse_map(const json& j) {
    if (!j.is_object()) throw SchemaError("map: expected a JSON object");
    for (const auto& key : {"branches", "line", "branch_maps"})
        if (!j.contains(key))
            throw SchemaError(std::string("map: missing \"") + key + "\"");

    std::vector<BranchShape> branches;
    const auto& jb = j["branches"];
    if (!jb.is_array()) throw SchemaError("branches: expected an array");
    for (size_t i = 0; i < jb.size(); ++i) {
        std::string at = "branches[" + std::to_string(i) + "]";
        if (!jb[i].is_object() || !jb[i].contains("attach") ||
            !jb[i].contains("length"))
            throw SchemaError(at + ": expected {attach, length}");
        branches.push_back({parse_rat(jb[i]["attach"], at + ".attach"),
                            parse_rat(jb[i]["length"], at + ".length")});
    }
    SunGraphShape shape = [&] {
        try {
            return SunGraphShape(branches);
        } catch (const std::domain_error& e) {
            throw SchemaError(std::string("branches: ") + e.what());
        }
    }();

    std::vector<Rat> tr(branches.size(), Rat(0));
    if (j.contains("tr")) {
        const auto& jt = j["tr"];
        if (!jt.is_array()) throw SchemaError("tr: expected an array");
        for (size_t k = 0; k < jt.size(); ++k) {
            std::string at = "tr[" + std::to_string(k) + "]";
            if (!jt[k].is_object() || !jt[k].contains("branch") ||
                !jt[k].contains("upto") || !jt[k]["branch"].is_number_integer())
                throw SchemaError(at + ": expected {branch, upto}");
            int i = jt[k]["branch"].get<int>();
            if (i < 0 || i >= shape.branch_count())
                throw SchemaError(at + ": branch index out of range");
            tr[i] = parse_rat(jt[k]["upto"], at + ".upto");
        }
    }

    auto line = parse_controls(shape, j["line"], "line");
    const auto& jm = j["branch_maps"];
    if (!jm.is_array() || jm.size() != branches.size())
        throw SchemaError("branch_maps: need one control list per branch");
    std::vector<std::vector<ControlPoint>> bmaps;
    for (size_t i = 0; i < jm.size(); ++i)
        bmaps.push_back(parse_controls(shape, jm[i],
                                       "branch_maps[" + std::to_string(i) + "]"));

    return PLMap(std::move(shape), std::move(tr), std::move(line),
                 std::move(bmaps));
}

PLMap load_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return parse_map(j);
}

}  // namespace sunrot
