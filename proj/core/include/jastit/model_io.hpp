#pragma once

#include "jastit/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace jastit
{

/// Reads the JSON model document into its name-level description. Throws
/// model_error on malformed JSON, missing or mistyped fields, and terms or
/// formulas that fail to parse.
[[nodiscard]] ModelDescription parse_model_description( std::string_view json_text );

/// parse_model_description followed by JstitModel::build.
[[nodiscard]] JstitModel load_model( std::string_view json_text );
[[nodiscard]] JstitModel load_model_file( const std::filesystem::path& path );

/// JSON document for a model; load_model on the result gives back an equal
/// description.
[[nodiscard]] std::string write_model( const ModelDescription& d, int indent = 2 );
[[nodiscard]] std::string write_model( const JstitModel& m, int indent = 2 );

} // namespace jastit
