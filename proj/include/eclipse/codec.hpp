#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eclipse/tensor.hpp"

namespace eclipse {

// Pixel values map linearly between bytes 0..255 and reals in [0,1].
std::uint8_t quantize_byte(double v);

// Interleaved RGB bytes, row-major. This is also the content key used by
// the caching oracle.
std::vector<std::uint8_t> quantize_rgb(const Image& image);
Image image_from_rgb(int height, int width, const std::uint8_t* rgb);

Image read_png(const std::string& path);
void write_png(const Image& image, const std::string& path);

// 8-bit grayscale plane; RGB input is reduced with the standard luma weights.
Mat2 read_png_gray(const std::string& path);
void write_png_gray(const Mat2& plane, const std::string& path);

std::vector<std::uint8_t> encode_png(const Image& image);
Image decode_png(const std::uint8_t* data, std::size_t size);

// Baseline JPEG encode at the given quality (1..100) followed by decode.
// Deterministic per (input, quality).
Image jpeg_roundtrip(const Image& image, int quality);

std::vector<std::uint8_t> encode_jpeg(const Image& image, int quality);
Image decode_jpeg(const std::uint8_t* data, std::size_t size);

}  // namespace eclipse
