#pragma once

#include <string>

#include <json.hpp>

#include "bflights/geometry.hpp"

namespace bflights {

// Boundary file format: {"kind": string, "vertices": [[x,y],...], "meta": object}.
// Lattice paths store integer coordinates.
nlohmann::json boundary_to_json(const Boundary& boundary, nlohmann::json meta = nlohmann::json::object());
Boundary boundary_from_json(const nlohmann::json& j, nlohmann::json* meta_out = nullptr);

void save_boundary_file(const Boundary& boundary, const std::string& path,
                        const nlohmann::json& meta = nlohmann::json::object());
Boundary load_boundary_file(const std::string& path, nlohmann::json* meta_out = nullptr);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace bflights
