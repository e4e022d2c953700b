#include "bflights/boundary_io.hpp"

#include <cmath>
#include <fstream>

namespace bflights {

using nlohmann::json;

json boundary_to_json(const Boundary& boundary, json meta) {
  json j;
  j["kind"] = to_string(boundary.kind);
  json verts = json::array();
  const bool lattice = boundary.kind == BoundaryKind::LatticePath2D;
  for (const Point& v : boundary.vertices) {
    if (lattice) {
      verts.push_back({static_cast<std::int64_t>(std::llround(v.x)),
                       static_cast<std::int64_t>(std::llround(v.y))});
    } else if (boundary.ambient_dim() == 3) {
      verts.push_back({v.x, v.y, v.z});
    } else {
      verts.push_back({v.x, v.y});
    }
  }
  j["vertices"] = std::move(verts);
  j["meta"] = std::move(meta);
  return j;
}

Boundary boundary_from_json(const json& j, json* meta_out) {
  if (!j.is_object() || !j.contains("kind")) throw IoError("boundary JSON: missing kind");
  Boundary b;
  b.kind = boundary_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("vertices")) {
    for (const auto& row : j.at("vertices")) {
      Point p;
      p.x = row.at(0).get<double>();
      p.y = row.at(1).get<double>();
      if (row.size() > 2) p.z = row.at(2).get<double>();
      b.vertices.push_back(p);
    }
  }
  if (meta_out) *meta_out = j.value("meta", json::object());
  b.validate();
  return b;
}

void save_boundary_file(const Boundary& boundary, const std::string& path, const json& meta) {
  save_json_file(boundary_to_json(boundary, meta), path);
}

Boundary load_boundary_file(const std::string& path, json* meta_out) {
  return boundary_from_json(load_json_file(path), meta_out);
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError("cannot parse " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace bflights
