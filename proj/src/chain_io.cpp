#include <cmath>

#include "json.hpp"

#include "circmap/conformal.hpp"

namespace circmap {

namespace {

using nlohmann::json;

constexpr std::string_view kModule = "conformal_core";

json pair(Complex z) { return json::array({z.real(), z.imag()}); }

Complex read_pair(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(Errc::InvalidInput, kModule, "expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

MapAtom::Kind kind_from(const std::string& s) {
  for (auto k : {MapAtom::Kind::Mobius, MapAtom::Kind::DiskAutomorphism, MapAtom::Kind::Inversion,
                 MapAtom::Kind::AffineNormalize, MapAtom::Kind::NumericMap}) {
    if (to_string(k) == s) return k;
  }
  throw Error(Errc::InvalidInput, kModule, "unknown atom kind '" + s + "'");
}

}  // namespace

std::string ConformalChain::to_json() const {
  json doc = json::array();
  for (const auto& a : atoms_) {
    json rec;
    rec["kind"] = std::string(to_string(a.kind));
    rec["inverse"] = a.inverse;
    json params = json::array();
    switch (a.kind) {
      case MapAtom::Kind::Mobius:
        for (const auto& z : a.p) params.push_back(pair(z));
        break;
      case MapAtom::Kind::DiskAutomorphism:
        params.push_back(pair(a.p[0]));
        break;
      case MapAtom::Kind::Inversion:
        params.push_back(pair(a.p[0]));
        params.push_back(a.p[1].real());
        break;
      case MapAtom::Kind::AffineNormalize:
        params.push_back(pair(a.p[0]));
        params.push_back(pair(a.p[1]));
        break;
      case MapAtom::Kind::NumericMap: {
        const auto& g = *a.numeric;
        const auto& pr = g.parameters();
        params.push_back(pair(pr.z0));
        params.push_back(pair(pr.z1));
        params.push_back(std::isinf(pr.zeta0) ? json(nullptr) : json(pr.zeta0));
        params.push_back(pr.sign);
        params.push_back(pair(pr.anchor));
        json slits = json::array();
        for (const auto& s : pr.slits) slits.push_back(json::array({s.b_inv, s.c}));
        rec["slits"] = std::move(slits);
        json nodes = json::array(), images = json::array();
        for (const auto& z : g.nodes()) nodes.push_back(pair(z));
        for (const auto& w : g.node_disk()) images.push_back(pair(w));
        rec["nodes"] = std::move(nodes);
        rec["images"] = std::move(images);
        break;
      }
    }
    rec["params"] = std::move(params);
    doc.push_back(std::move(rec));
  }
  return doc.dump();
}

ConformalChain ConformalChain::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::InvalidInput, kModule, std::string("malformed chain JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(Errc::InvalidInput, kModule, "chain JSON must be an array");
  std::vector<MapAtom> atoms;
  try {
    for (const auto& rec : doc) {
      const auto kind = kind_from(rec.at("kind").get<std::string>());
      const auto& p = rec.at("params");
      MapAtom a;
      switch (kind) {
        case MapAtom::Kind::Mobius:
          a = MapAtom::mobius(read_pair(p.at(0)), read_pair(p.at(1)), read_pair(p.at(2)), read_pair(p.at(3)));
          break;
        case MapAtom::Kind::DiskAutomorphism:
          a = MapAtom::disk_automorphism(read_pair(p.at(0)));
          break;
        case MapAtom::Kind::Inversion:
          a = MapAtom::inversion(read_pair(p.at(0)), p.at(1).get<double>());
          break;
        case MapAtom::Kind::AffineNormalize:
          a = MapAtom::affine(read_pair(p.at(0)), read_pair(p.at(1)));
          break;
        case MapAtom::Kind::NumericMap: {
          GeodesicZipper::Parameters pr;
          pr.z0 = read_pair(p.at(0));
          pr.z1 = read_pair(p.at(1));
          pr.zeta0 = p.at(2).is_null() ? INFINITY : p.at(2).get<double>();
          pr.sign = p.at(3).get<double>();
          pr.anchor = read_pair(p.at(4));
          for (const auto& s : rec.at("slits")) pr.slits.push_back({s.at(0).get<double>(), s.at(1).get<double>()});
          std::vector<Complex> nodes, images;
          for (const auto& z : rec.at("nodes")) nodes.push_back(read_pair(z));
          for (const auto& w : rec.at("images")) images.push_back(read_pair(w));
          a = MapAtom::numeric_map(
              std::make_shared<const GeodesicZipper>(std::move(pr), std::move(nodes), std::move(images)));
          break;
        }
      }
      a.inverse = rec.value("inverse", false);
      atoms.push_back(std::move(a));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidInput, kModule, std::string("bad chain record: ") + e.what());
  }
  return ConformalChain(std::move(atoms));
}

}  // namespace circmap
