#include "vanatta/layout_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vanatta/errors.hpp"

namespace vanatta::geometry {

using nlohmann::json;

std::string export_layout(const SurfaceLayout& layout) {
  json doc;
  doc["wavelength_m"] = layout.wavelength;
  doc["center_xy_m"] = {layout.center.x, layout.center.y};
  doc["absorption_efficiency"] = layout.absorption_efficiency;
  json elements = json::array();
  for (const auto& e : layout.elements) {
    elements.push_back({{"id", e.id}, {"x_m", e.position.x}, {"y_m", e.position.y}, {"pair_id", e.pair_id}});
  }
  doc["elements"] = std::move(elements);
  json lines = json::array();
  for (const auto& l : layout.lines) {
    lines.push_back({{"pair_id", l.pair_id}, {"base_length_m", l.base_length}, {"has_switch", l.has_switch}});
  }
  doc["lines"] = std::move(lines);
  return doc.dump(2) + "\n";
}

SurfaceLayout import_layout(std::string_view text) {
  try {
    const json doc = json::parse(text);
    SurfaceLayout layout;
    layout.wavelength = doc.at("wavelength_m").get<double>();
    const auto& c = doc.at("center_xy_m");
    layout.center = {c.at(0).get<double>(), c.at(1).get<double>()};
    layout.absorption_efficiency = doc.value("absorption_efficiency", kDefaultAbsorptionEfficiency);
    for (const auto& e : doc.at("elements")) {
      layout.elements.push_back({e.at("id").get<int>(),
                                 {e.at("x_m").get<double>(), e.at("y_m").get<double>()},
                                 e.at("pair_id").get<int>()});
    }
    for (const auto& l : doc.at("lines")) {
      const bool sw = l.at("has_switch").get<bool>();
      layout.lines.push_back({l.at("pair_id").get<int>(), l.at("base_length_m").get<double>(), sw,
                              sw ? layout.wavelength / 2.0 : 0.0});
    }
    return layout;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed layout document: ") + e.what());
  }
}

void save_layout(const SurfaceLayout& layout, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write layout file " + path.string());
  out << export_layout(layout);
}

SurfaceLayout load_layout(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read layout file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return import_layout(buf.str());
}

}  // namespace vanatta::geometry
