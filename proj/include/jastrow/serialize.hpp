#ifndef JASTROW_SERIALIZE_HPP
#define JASTROW_SERIALIZE_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "jastrow/model.hpp"
#include "jastrow/sampler.hpp"
#include "jastrow/verify.hpp"

namespace jastrow::io {

// Model schema (documented in the README):
//   {"geometry": "line"|"circle", "n": int, "omega": real,
//    "circumference": real (circle only),
//    "family": {"type": "rational"|"trigonometric"|"hyperbolic"|"elliptic",
//               "alpha": real, ...family parameters...}}
// Elliptic lattices are canonically parametrized by periods {"l",
// "im_omega3"}; {"g2", "g3"} is accepted on input and converted.
// Custom phi is a library-level feature and has no JSON form.
ModelSpec model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const ModelSpec& spec);

nlohmann::json to_json(const verify::ResidualReport& r);
nlohmann::json to_json(const verify::SymmetryReport& r);
nlohmann::json to_json(const verify::NormalizabilityReport& r);

/// Shortest round-trip decimal form, locale-independent (std::to_chars).
std::string format_double(double v);

/// Write via a temp file in the same directory plus an atomic rename.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace jastrow::io

#endif
