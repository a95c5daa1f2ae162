#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jastit::cli
{

namespace exit_code
{
inline constexpr int ok = 0;
inline constexpr int negative = 1;  // invalid model, rejected proof, false formula, nothing found
inline constexpr int error = 2;     // usage, parse or I/O error
} // namespace exit_code

/// Runs one command line (without the program name). A file argument of
/// "-" reads `in`.
[[nodiscard]] int run( const std::vector< std::string >& args, std::istream& in, std::ostream& out, std::ostream& err );

} // namespace jastit::cli
