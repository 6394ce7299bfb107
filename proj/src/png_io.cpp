#include "roadgen/png_io.hpp"

#include <cstring>
#include <stdexcept>
#include <vector>

#include <png.h>

namespace roadgen {

namespace {

void write_buffer(const std::filesystem::path& path, int rows, int cols, png_uint_32 format,
                  const std::vector<std::uint8_t>& pixels) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(cols);
  image.height = static_cast<png_uint_32>(rows);
  image.format = format;
  if (!png_image_write_to_file(&image, path.c_str(), 0, pixels.data(), 0, nullptr)) {
    throw std::runtime_error("cannot write " + path.string() + ": " + image.message);
  }
}

std::vector<std::uint8_t> read_buffer(const std::filesystem::path& path, png_uint_32 format, int& rows, int& cols) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw std::runtime_error("cannot read " + path.string() + ": " + image.message);
  }
  image.format = format;
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    png_image_free(&image);
    throw std::runtime_error("cannot decode " + path.string() + ": " + image.message);
  }
  rows = static_cast<int>(image.height);
  cols = static_cast<int>(image.width);
  return pixels;
}

}  // namespace

void write_png(const std::filesystem::path& path, const RgbImage& image) {
  const int rows = image.rows();
  const int cols = image.cols();
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(rows) * cols * 3);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      for (int ch = 0; ch < 3; ++ch) pixels[(static_cast<std::size_t>(r) * cols + c) * 3 + ch] = image.channels[ch](r, c);
    }
  }
  write_buffer(path, rows, cols, PNG_FORMAT_RGB, pixels);
}

void write_png(const std::filesystem::path& path, const Channel& gray) {
  std::vector<std::uint8_t> pixels(gray.data(), gray.data() + gray.size());
  write_buffer(path, static_cast<int>(gray.rows()), static_cast<int>(gray.cols()), PNG_FORMAT_GRAY, pixels);
}

RgbImage read_png_rgb(const std::filesystem::path& path) {
  int rows = 0;
  int cols = 0;
  const auto pixels = read_buffer(path, PNG_FORMAT_RGB, rows, cols);
  RgbImage image = make_rgb(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      for (int ch = 0; ch < 3; ++ch) image.channels[ch](r, c) = pixels[(static_cast<std::size_t>(r) * cols + c) * 3 + ch];
    }
  }
  return image;
}

Channel read_png_gray(const std::filesystem::path& path) {
  int rows = 0;
  int cols = 0;
  const auto pixels = read_buffer(path, PNG_FORMAT_GRAY, rows, cols);
  Channel gray(rows, cols);
  std::memcpy(gray.data(), pixels.data(), pixels.size());
  return gray;
}

}  // namespace roadgen
