#include "eclipse/codec.hpp"

#include <jpeglib.h>
#include <png.h>

#include <cmath>
#include <csetjmp>
#include <cstring>

#include "eclipse/errors.hpp"

namespace eclipse {

std::uint8_t quantize_byte(double v) {
  const double scaled = std::lround(v * 255.0);
  if (scaled < 0.0) return 0;
  if (scaled > 255.0) return 255;
  return static_cast<std::uint8_t>(scaled);
}

std::vector<std::uint8_t> quantize_rgb(const Image& image) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(image.size());
  for (double v : image.values()) bytes.push_back(quantize_byte(v));
  return bytes;
}

Image image_from_rgb(int height, int width, const std::uint8_t* rgb) {
  Image out(height, width);
  auto& v = out.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = rgb[i] / 255.0;
  return out;
}

namespace {

Image image_from_png_image(png_image& info, std::vector<std::uint8_t>& buf,
                           const char* what) {
  if (PNG_IMAGE_FAILED(info)) {
    throw CodecError(std::string(what) + ": " + info.message);
  }
  return image_from_rgb(static_cast<int>(info.height),
                        static_cast<int>(info.width), buf.data());
}

}  // namespace

Image read_png(const std::string& path) {
  png_image info;
  std::memset(&info, 0, sizeof(info));
  info.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&info, path.c_str())) {
    throw IoError("read_png: cannot open " + path + ": " + info.message);
  }
  info.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(info));
  if (!png_image_finish_read(&info, nullptr, buf.data(), 0, nullptr)) {
    throw CodecError("read_png: decode failed for " + path + ": " + info.message);
  }
  return image_from_png_image(info, buf, "read_png");
}

void write_png(const Image& image, const std::string& path) {
  png_image info;
  std::memset(&info, 0, sizeof(info));
  info.version = PNG_IMAGE_VERSION;
  info.width = static_cast<png_uint_32>(image.width());
  info.height = static_cast<png_uint_32>(image.height());
  info.format = PNG_FORMAT_RGB;
  const auto bytes = quantize_rgb(image);
  if (!png_image_write_to_file(&info, path.c_str(), 0, bytes.data(), 0, nullptr)) {
    throw IoError("write_png: cannot write " + path + ": " + info.message);
  }
}

Mat2 read_png_gray(const std::string& path) {
  png_image info;
  std::memset(&info, 0, sizeof(info));
  info.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&info, path.c_str())) {
    throw IoError("read_png_gray: cannot open " + path + ": " + info.message);
  }
  info.format = PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(info));
  if (!png_image_finish_read(&info, nullptr, buf.data(), 0, nullptr)) {
    throw CodecError("read_png_gray: decode failed for " + path + ": " + info.message);
  }
  Mat2 out(static_cast<int>(info.height), static_cast<int>(info.width));
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = buf[i] / 255.0;
  return out;
}

void write_png_gray(const Mat2& plane, const std::string& path) {
  png_image info;
  std::memset(&info, 0, sizeof(info));
  info.version = PNG_IMAGE_VERSION;
  info.width = static_cast<png_uint_32>(plane.cols);
  info.height = static_cast<png_uint_32>(plane.rows);
  info.format = PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> bytes(plane.v.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = quantize_byte(plane.v[i]);
  if (!png_image_write_to_file(&info, path.c_str(), 0, bytes.data(), 0, nullptr)) {
    throw IoError("write_png_gray: cannot write " + path + ": " + info.message);
  }
}

std::vector<std::uint8_t> encode_png(const Image& image) {
  png_image info;
  std::memset(&info, 0, sizeof(info));
  info.version = PNG_IMAGE_VERSION;
  info.width = static_cast<png_uint_32>(image.width());
  info.height = static_cast<png_uint_32>(image.height());
  info.format = PNG_FORMAT_RGB;
  const auto bytes = quantize_rgb(image);
  png_alloc_size_t out_size = 0;
  if (!png_image_write_to_memory(&info, nullptr, &out_size, 0, bytes.data(), 0,
                                 nullptr)) {
    throw CodecError(std::string("encode_png: sizing failed: ") + info.message);
  }
  std::vector<std::uint8_t> out(out_size);
  if (!png_image_write_to_memory(&info, out.data(), &out_size, 0, bytes.data(),
                                 0, nullptr)) {
    throw CodecError(std::string("encode_png: write failed: ") + info.message);
  }
  out.resize(out_size);
  return out;
}

Image decode_png(const std::uint8_t* data, std::size_t size) {
  png_image info;
  std::memset(&info, 0, sizeof(info));
  info.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&info, data, size)) {
    throw CodecError(std::string("decode_png: not a PNG: ") + info.message);
  }
  info.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(info));
  if (!png_image_finish_read(&info, nullptr, buf.data(), 0, nullptr)) {
    throw CodecError(std::string("decode_png: decode failed: ") + info.message);
  }
  return image_from_png_image(info, buf, "decode_png");
}

namespace {

// libjpeg's default error handler exits the process; route through longjmp
// and rethrow as CodecError instead.
struct JpegErrorMgr {
  jpeg_error_mgr pub;
  jmp_buf setjmp_buffer;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  longjmp(err->setjmp_buffer, 1);
}

}  // namespace

std::vector<std::uint8_t> encode_jpeg(const Image& image, int quality) {
  if (quality < 1 || quality > 100) {
    throw InvalidArgument("encode_jpeg: quality must be in 1..100");
  }
  jpeg_compress_struct cinfo;
  JpegErrorMgr jerr;
  cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = jpeg_error_exit;

  unsigned char* out_buf = nullptr;
  unsigned long out_size = 0;
  if (setjmp(jerr.setjmp_buffer)) {
    jpeg_destroy_compress(&cinfo);
    if (out_buf) free(out_buf);
    throw CodecError(std::string("encode_jpeg: ") + jerr.message);
  }
  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, &out_buf, &out_size);

  cinfo.image_width = static_cast<JDIMENSION>(image.width());
  cinfo.image_height = static_cast<JDIMENSION>(image.height());
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);  // TRUE keeps it baseline
  jpeg_start_compress(&cinfo, TRUE);

  const auto bytes = quantize_rgb(image);
  const std::size_t stride = static_cast<std::size_t>(image.width()) * 3;
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = const_cast<JSAMPROW>(bytes.data() + cinfo.next_scanline * stride);
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);

  std::vector<std::uint8_t> out(out_buf, out_buf + out_size);
  free(out_buf);
  return out;
}

Image decode_jpeg(const std::uint8_t* data, std::size_t size) {
  jpeg_decompress_struct cinfo;
  JpegErrorMgr jerr;
  cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = jpeg_error_exit;
  if (setjmp(jerr.setjmp_buffer)) {
    jpeg_destroy_decompress(&cinfo);
    throw CodecError(std::string("decode_jpeg: ") + jerr.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, data, static_cast<unsigned long>(size));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);

  const int h = static_cast<int>(cinfo.output_height);
  const int w = static_cast<int>(cinfo.output_width);
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(h) * w * 3);
  const std::size_t stride = static_cast<std::size_t>(w) * 3;
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = bytes.data() + cinfo.output_scanline * stride;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return image_from_rgb(h, w, bytes.data());
}

Image jpeg_roundtrip(const Image& image, int quality) {
  const auto encoded = encode_jpeg(image, quality);
  return decode_jpeg(encoded.data(), encoded.size());
}

}  // namespace eclipse
