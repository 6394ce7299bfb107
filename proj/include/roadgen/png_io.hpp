#pragma once

#include <filesystem>

#include "roadgen/render.hpp"

namespace roadgen {

void write_png(const std::filesystem::path& path, const RgbImage& image);
void write_png(const std::filesystem::path& path, const Channel& gray);

/// Throws std::runtime_error when the file is missing or not a PNG.
RgbImage read_png_rgb(const std::filesystem::path& path);
Channel read_png_gray(const std::filesystem::path& path);

}  // namespace roadgen
