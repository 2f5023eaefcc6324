/*
 * Copyright 2026 The pdflow Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pdflow/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>

namespace pdflow {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open '" + path + "'");
  return f;
}

double luminance(double r, double g, double b) {
  return 0.299 * r + 0.587 * g + 0.114 * b;
}

bool ends_with_ci(const std::string& s, const std::string& suffix) {
  if (s.size() < suffix.size()) return false;
  return std::equal(suffix.rbegin(), suffix.rend(), s.rbegin(), [](char a, char b) {
    return std::tolower(static_cast<unsigned char>(a)) ==
           std::tolower(static_cast<unsigned char>(b));
  });
}

// ---- PNM (PGM/PPM) ----

int pnm_next_token(std::FILE* f, const std::string& path) {
  int c;
  // Skip whitespace and '#' comment lines between header tokens.
  while ((c = std::fgetc(f)) != EOF) {
    if (c == '#') {
      while ((c = std::fgetc(f)) != EOF && c != '\n') {
      }
    } else if (!std::isspace(c)) {
      break;
    }
  }
  if (c == EOF) throw IoError("'" + path + "': truncated header");
  int value = 0;
  bool any = false;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    any = true;
    c = std::fgetc(f);
  }
  if (!any) throw IoError("'" + path + "': malformed header");
  return value;
}

ScalarField read_pnm(const std::string& path, std::FILE* f, char kind) {
  const bool color = (kind == '6' || kind == '3');
  const bool ascii = (kind == '2' || kind == '3');

  const int w = pnm_next_token(f, path);
  const int h = pnm_next_token(f, path);
  const int maxval = pnm_next_token(f, path);
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535) {
    throw IoError("'" + path + "': malformed PNM header");
  }

  const int channels = color ? 3 : 1;
  const std::size_t n = static_cast<std::size_t>(w) * h * channels;
  std::vector<double> raw(n);

  if (ascii) {
    for (std::size_t i = 0; i < n; ++i) raw[i] = pnm_next_token(f, path);
  } else {
    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<std::uint8_t> buf(n * bytes);
    if (std::fread(buf.data(), 1, buf.size(), f) != buf.size()) {
      throw IoError("'" + path + "': truncated pixel data");
    }
    for (std::size_t i = 0; i < n; ++i) {
      raw[i] = bytes == 1 ? buf[i]
                          : (static_cast<int>(buf[2 * i]) << 8) | buf[2 * i + 1];
    }
  }

  ScalarField img(w, h);
  for (std::size_t i = 0; i < img.size(); ++i) {
    double v;
    if (color) {
      v = luminance(raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]);
    } else {
      v = raw[i];
    }
    img.data()[i] = v / maxval;
  }
  return img;
}

// ---- PNG ----

[[noreturn]] void png_error_handler(png_structp png, png_const_charp msg) {
  throw IoError(std::string("libpng: ") + msg);
}

void png_warning_handler(png_structp, png_const_charp) {}

ScalarField read_png_file(const std::string& path, std::FILE* f) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                           png_error_handler, png_warning_handler);
  if (!png) throw IoError("'" + path + "': png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("'" + path + "': png_create_info_struct failed");
  }

  try {
    png_init_io(png, f);
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int color_type = png_get_color_type(png, info);
    int bit_depth = png_get_bit_depth(png, info);

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    if (bit_depth == 16) png_set_swap(png);  // PNG stores 16-bit big-endian
    png_read_update_info(png, info);

    bit_depth = png_get_bit_depth(png, info);
    const int channels = png_get_channels(png, info);
    if (channels != 1 && channels != 3) {
      throw IoError("'" + path + "': unsupported channel count " + std::to_string(channels));
    }

    const std::size_t row_bytes = png_get_rowbytes(png, info);
    std::vector<std::uint8_t> pixels(row_bytes * h);
    std::vector<png_bytep> rows(h);
    for (png_uint_32 y = 0; y < h; ++y) rows[y] = pixels.data() + y * row_bytes;
    png_read_image(png, rows.data());
    png_destroy_read_struct(&png, &info, nullptr);

    const double maxval = bit_depth == 16 ? 65535.0 : 255.0;
    ScalarField img(static_cast<int>(w), static_cast<int>(h));
    for (png_uint_32 y = 0; y < h; ++y) {
      for (png_uint_32 x = 0; x < w; ++x) {
        const std::size_t base = y * row_bytes + static_cast<std::size_t>(x) * channels *
                                                     (bit_depth == 16 ? 2 : 1);
        double v;
        if (bit_depth == 16) {
          const auto* p16 = reinterpret_cast<const std::uint16_t*>(pixels.data() + base);
          v = channels == 1 ? p16[0] : luminance(p16[0], p16[1], p16[2]);
        } else {
          const std::uint8_t* p = pixels.data() + base;
          v = channels == 1 ? p[0] : luminance(p[0], p[1], p[2]);
        }
        img.at(static_cast<int>(x), static_cast<int>(y)) = v / maxval;
      }
    }
    return img;
  } catch (...) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw;
  }
}

void write_png(const std::string& path, int w, int h, int channels,
               const std::vector<std::uint8_t>& pixels) {
  FilePtr f = open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            png_error_handler, png_warning_handler);
  if (!png) throw IoError("'" + path + "': png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("'" + path + "': png_create_info_struct failed");
  }

  try {
    png_init_io(png, f.get());
    png_set_IHDR(png, info, w, h, 8,
                 channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    const std::size_t row_bytes = static_cast<std::size_t>(w) * channels;
    for (int y = 0; y < h; ++y) {
      png_write_row(png, const_cast<png_bytep>(pixels.data() + y * row_bytes));
    }
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
  } catch (...) {
    png_destroy_write_struct(&png, &info);
    throw;
  }
}

std::uint8_t quantize(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

}  // namespace

ScalarField read_image(const std::string& path) {
  FilePtr f = open_file(path, "rb");

  std::uint8_t sig[8] = {};
  const std::size_t got = std::fread(sig, 1, sizeof(sig), f.get());
  if (got < 2) throw IoError("'" + path + "': file too short");
  std::rewind(f.get());

  if (got >= 8 && png_sig_cmp(sig, 0, 8) == 0) {
    return read_png_file(path, f.get());
  }
  if (sig[0] == 'P' && (sig[1] == '2' || sig[1] == '3' || sig[1] == '5' || sig[1] == '6')) {
    std::fgetc(f.get());
    const char kind = static_cast<char>(std::fgetc(f.get()));
    return read_pnm(path, f.get(), kind);
  }
  throw IoError("'" + path + "': unsupported image format (need PNG, PGM, or PPM)");
}

void write_image(const std::string& path, const ScalarField& img) {
  const int w = img.width(), h = img.height();
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(w) * h);
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = quantize(img.data()[i]);

  if (ends_with_ci(path, ".png")) {
    write_png(path, w, h, 1, bytes);
  } else if (ends_with_ci(path, ".pgm")) {
    FilePtr f = open_file(path, "wb");
    std::fprintf(f.get(), "P5\n%d %d\n255\n", w, h);
    if (std::fwrite(bytes.data(), 1, bytes.size(), f.get()) != bytes.size()) {
      throw IoError("'" + path + "': write failed");
    }
  } else {
    throw IoError("'" + path + "': unsupported output extension (need .png or .pgm)");
  }
}

void write_png_rgb(const std::string& path, const RgbImage& img) {
  if (img.rgb.size() != static_cast<std::size_t>(img.width) * img.height * 3) {
    throw std::invalid_argument("write_png_rgb: buffer size mismatch");
  }
  write_png(path, img.width, img.height, 3, img.rgb);
}

}  // namespace pdflow
