#pragma once

#include <filesystem>

#include "rocktex/image.hpp"

namespace rocktex {

/// Decodes an 8-bit, 3-channel PNG or binary PPM (P6), chosen by content.
/// Errors name the file.
ColorImage read_image(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const ColorImage& rgb);
void write_ppm(const std::filesystem::path& path, const ColorImage& rgb);

}  // namespace rocktex
