#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

namespace jastit::testing
{

inline std::filesystem::path fixture_path( std::string_view relative )
{
    return std::filesystem::path( JASTIT_FIXTURE_DIR ) / relative;
}

inline std::string read_fixture( std::string_view relative )
{
    std::ifstream in( fixture_path( relative ) );
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

} // namespace jastit::testing
