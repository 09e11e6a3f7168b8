#include "json.hpp"

#include "circmap/geometry.hpp"

namespace circmap {

namespace {

constexpr std::string_view kModule = "geometry";

std::vector<Complex> read_points(const nlohmann::json& array, const std::string& field) {
  if (!array.is_array()) throw Error(Errc::InvalidInput, kModule, field + ": expected an array");
  std::vector<Complex> out;
  out.reserve(array.size());
  for (const auto& p : array) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw Error(Errc::InvalidInput, kModule, field + ": each entry must be [x, y]");
    }
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return out;
}

}  // namespace

std::vector<ClosedCurve> curves_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::InvalidInput, kModule, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("curves")) {
    throw Error(Errc::InvalidInput, kModule, "curves: field required");
  }
  const auto& curves = doc["curves"];
  if (!curves.is_array() || curves.empty()) {
    throw Error(Errc::InvalidInput, kModule, "curves: expected a non-empty array");
  }
  std::vector<ClosedCurve> out;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i];
    const std::string prefix = "curves[" + std::to_string(i) + "]";
    if (!c.is_object() || !c.contains("points")) {
      throw Error(Errc::InvalidInput, kModule, prefix + ".points: field required");
    }
    auto pts = read_points(c["points"], prefix + ".points");
    std::vector<Complex> der;
    if (c.contains("derivatives")) der = read_points(c["derivatives"], prefix + ".derivatives");
    out.emplace_back(std::move(pts), std::move(der));
  }
  return out;
}

std::string curves_to_json(std::span<const ClosedCurve> curves) {
  nlohmann::json doc;
  doc["curves"] = nlohmann::json::array();
  for (const auto& c : curves) {
    nlohmann::json entry;
    entry["points"] = nlohmann::json::array();
    for (const auto& z : c.samples()) entry["points"].push_back({z.real(), z.imag()});
    if (c.smooth()) {
      entry["derivatives"] = nlohmann::json::array();
      for (const auto& z : c.derivatives()) entry["derivatives"].push_back({z.real(), z.imag()});
    }
    doc["curves"].push_back(std::move(entry));
  }
  return doc.dump();
}

}  // namespace circmap
