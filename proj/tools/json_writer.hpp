#pragma once

#include <string>

#include "json.hpp"
#include "wfl/minkowski.hpp"

namespace wfl::cli {

/// Indented JSON with every float printed as %.17g; non-finite floats become null.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

nlohmann::ordered_json complex_json(cplx z);
nlohmann::ordered_json four_vector_json(const ComplexFourVector& z);
nlohmann::ordered_json four_vector_json(const FourVector& v);

/// Writes through a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace wfl::cli
