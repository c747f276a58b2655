#pragma once

// Binary Netpbm readers and writers.
//
//   depth  P5, maxval 65535, 16-bit big-endian
//   color  P6, maxval 255
//   mask   P5, maxval 255, samples {0, 255}
//
// Writers emit "P<n>\n<w> <h>\n<maxval>\n" followed by the payload and nothing
// else. Readers accept '#' comment lines anywhere in the header.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "depthfill/image.hpp"

namespace depthfill {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedFormat : public FormatError {
 public:
  using FormatError::FormatError;
};

class TruncatedFile : public FormatError {
 public:
  TruncatedFile(const std::string& what, std::size_t expected, std::size_t actual)
      : FormatError(what), expected_bytes(expected), actual_bytes(actual) {}
  std::size_t expected_bytes;
  std::size_t actual_bytes;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

DepthMap decode_depth_pgm(std::string_view bytes);
ColorImage decode_color_ppm(std::string_view bytes);
std::string encode_depth_pgm(const DepthMap& map);
std::string encode_color_ppm(const ColorImage& img);
std::string encode_mask_pgm(const BinaryMask& mask);
/// 16-bit P5 of arbitrary samples (used for the orientation dump).
std::string encode_gray16_pgm(const Grid<std::uint16_t>& img);

DepthMap load_depth_pgm(const std::filesystem::path& path);
ColorImage load_color_ppm(const std::filesystem::path& path);
void save_depth_pgm(const DepthMap& map, const std::filesystem::path& path);
void save_color_ppm(const ColorImage& img, const std::filesystem::path& path);
void save_mask_pgm(const BinaryMask& mask, const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over `path`, so a
/// failed write never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace depthfill
