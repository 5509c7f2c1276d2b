#pragma once

// JSON serialization of maps and points.
//
// Map file schema:
//   {
//     "branches":    [{"attach": "0", "length": "1"}, ...],
//     "tr":          [{"branch": 0, "upto": "1/4"}, ...],   // missing => 0
//     "line":        [["0", POINT], ..., ["1", POINT]],
//     "branch_maps": [[["0", POINT], ..., ["len_i", POINT]], ...]
//   }
// where POINT is {"R": "x"} or {"B": [i, "t", m]} with exact rational
// strings. Structural problems raise SchemaError; semantic map problems are
// reported by PLMap::validation().

#include "sunrot/pl_map.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace sunrot {

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rat parse_rat(const nlohmann::json& j, const std::string& where);
Point parse_point(const SunGraphShape& shape, const nlohmann::json& j,
                  const std::string& where);
nlohmann::json point_json(const Point& p);

PLMap parse_map(const nlohmann::json& j);
PLMap load_map(const std::string& path);

}  // namespace sunrot
