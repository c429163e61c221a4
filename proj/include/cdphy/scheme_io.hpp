#pragma once

#include "cdphy/constellation.hpp"

#include <filesystem>
#include <string>

namespace cdphy {

// Scheme file: JSON object {"label", "order", "points": [[re, im], ...], "key": "i0,i1,..."}.
std::string scheme_to_text(const ConstellationScheme& scheme);
ConstellationScheme scheme_from_text(const std::string& text);

void write_scheme_file(const ConstellationScheme& scheme, const std::filesystem::path& path);
ConstellationScheme read_scheme_file(const std::filesystem::path& path);

} // namespace cdphy
