#include <png.h>

#include <cstring>
#include <stdexcept>

#include "visualenv/render.hpp"

namespace visualenv {

namespace {

void write_image(const std::filesystem::path& path, int width, int height, png_uint_32 format,
                 const std::uint8_t* data) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;
  if (!png_image_write_to_file(&image, path.c_str(), 0, data, 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw std::runtime_error("cannot write " + path.string() + ": " + msg);
  }
}

}  // namespace

void write_png(const std::filesystem::path& path, const GrayFrame& frame) {
  write_image(path, frame.width, frame.height, PNG_FORMAT_GRAY, frame.pixels.data());
}

void write_png(const std::filesystem::path& path, const FrameBuffer& frame) {
  write_image(path, frame.width, frame.height, PNG_FORMAT_RGB, frame.rgb.data());
}

GrayFrame read_png_gray(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str()))
    throw std::runtime_error("cannot read " + path.string() + ": " + image.message);
  image.format = PNG_FORMAT_GRAY;
  GrayFrame frame(static_cast<int>(image.width), static_cast<int>(image.height));
  if (!png_image_finish_read(&image, nullptr, frame.pixels.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw std::runtime_error("cannot decode " + path.string() + ": " + msg);
  }
  return frame;
}

}  // namespace visualenv
