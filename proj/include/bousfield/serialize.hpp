#pragma once

// JSON encodings shared by catalog persistence, reports and the CLI.

#include <json.hpp>

#include "bousfield/complexes.hpp"

namespace bousfield {

using Json = nlohmann::ordered_json;

Json ring_to_json(const CoefficientRing& ring);
CoefficientRing ring_from_json(const Json& j);
Json spec_to_json(const AlgebraSpec& spec);
SpecPtr spec_from_json(const Json& j);
Json element_to_json(const AlgebraElement& a);
AlgebraElement element_from_json(const SpecPtr& spec, const Json& j);
Json complex_json(const FreeComplex& x);
FreeComplex complex_from_json_value(const Json& j);
Json window_to_json(const DegreeWindow& w);
DegreeWindow window_from_json(const Json& j);
Json descriptor_to_json(const ModuleDescriptor& d);
ModuleDescriptor descriptor_from_json(const Json& j);
Json table_to_json(const HomologyTable& t);
Json nullity_to_json(const Nullity& n);
Nullity nullity_from_json(const Json& j);

}  // namespace bousfield
