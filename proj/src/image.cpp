#include "depthfill/image.hpp"

#include <algorithm>
#include <cmath>

namespace depthfill {

std::string shape_string(int width, int height) {
  return std::to_string(width) + "x" + std::to_string(height);
}

GrayImage to_grayscale(const ColorImage& img) {
  GrayImage out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) {
    const Rgb c = img[i];
    out[i] = 0.299 * c.r + 0.587 * c.g + 0.114 * c.b;
  }
  return out;
}

DepthField to_field(const DepthMap& depth) {
  DepthField out(depth.width(), depth.height());
  for (std::size_t i = 0; i < depth.size(); ++i) out[i] = depth[i];
  return out;
}

DepthMap round_to_depth(const DepthField& field) {
  DepthMap out(field.width(), field.height());
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double v = std::clamp(std::round(field[i]), 0.0, 65535.0);
    out[i] = static_cast<std::uint16_t>(v);
  }
  return out;
}

std::size_t count_set(const BinaryMask& mask) {
  return static_cast<std::size_t>(
      std::count_if(mask.samples().begin(), mask.samples().end(), [](auto b) { return b != 0; }));
}

}  // namespace depthfill
