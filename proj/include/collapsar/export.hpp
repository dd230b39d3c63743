#pragma once

#include <string>

#include "json.hpp"

#include "collapsar/collapse.hpp"
#include "collapsar/diagram.hpp"
#include "collapsar/geometry.hpp"
#include "collapsar/two_complex.hpp"
#include "collapsar/words.hpp"

namespace collapsar {

using Json = nlohmann::ordered_json;

Json to_json(const Presentation& p);
Json to_json(const BranchedPresentation& b);
Json to_json(const TwoComplex& c, const Presentation* names = nullptr);
Json to_json(const DiskDiagram& d, const Presentation* names = nullptr);
Json to_json(const CollapsingVerdict& v, const Presentation* names = nullptr);
Json to_json(const Wall& w);
Json to_json(const DivisiveTree& t);

std::string dot_skeleton(const TwoComplex& c, const Presentation* names = nullptr);
std::string dot_link(const LinkGraph& g);
std::string dot_diagram(const DiskDiagram& d, const Presentation* names = nullptr);
std::string dot_ball_walls(const CayleyBall& ball, const std::vector<Wall>& ws);

// FNV-1a over the canonical serialization; timestamps never enter digests.
std::string digest(const std::string& payload);

}  // namespace collapsar
