#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace depthfill {

/// Raised when a caller breaks a documented precondition (shape mismatch,
/// out-of-range parameter, hole pixel handed to a non-hole filter, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Pixel {
  int x = 0;
  int y = 0;
  friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// Dense row-major raster. Every image type in the library is a Grid.
template <typename T>
class Grid {
 public:
  using value_type = T;

  Grid() = default;
  Grid(int width, int height, T fill = T{})
      : width_(checked_dim(width)),
        height_(checked_dim(height)),
        data_(static_cast<std::size_t>(width_) * height_, fill) {}
  Grid(int width, int height, std::vector<T> samples)
      : width_(checked_dim(width)), height_(checked_dim(height)), data_(std::move(samples)) {
    if (data_.size() != static_cast<std::size_t>(width_) * height_) {
      throw ContractViolation("grid: sample count " + std::to_string(data_.size()) +
                              " does not match " + std::to_string(width_) + "x" +
                              std::to_string(height_));
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  T& operator()(int x, int y) noexcept { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const noexcept { return data_[index(x, y)]; }
  T& operator[](std::size_t i) noexcept { return data_[i]; }
  const T& operator[](std::size_t i) const noexcept { return data_[i]; }
  T& at(Pixel p) noexcept { return (*this)(p.x, p.y); }
  const T& at(Pixel p) const noexcept { return (*this)(p.x, p.y); }

  std::span<T> samples() noexcept { return data_; }
  std::span<const T> samples() const noexcept { return data_; }
  std::span<const T> row(int y) const noexcept {
    return std::span<const T>(data_).subspan(index(0, y), width_);
  }
  std::span<T> row(int y) noexcept { return std::span<T>(data_).subspan(index(0, y), width_); }

  template <typename U>
  bool same_shape(const Grid<U>& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  static int checked_dim(int v) {
    if (v < 0) throw ContractViolation("grid: negative dimension " + std::to_string(v));
    return v;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Depth in millimeters; 0 marks a hole (no sensor return).
using DepthMap = Grid<std::uint16_t>;
/// Real-valued depth used between pipeline stages; 0.0 still marks a hole.
using DepthField = Grid<double>;
using ColorImage = Grid<Rgb>;
using GrayImage = Grid<double>;
using RealGrid = Grid<double>;
/// One byte per pixel, 0 or 1.
using BinaryMask = Grid<std::uint8_t>;

inline constexpr std::uint16_t kHoleDepth = 0;

inline bool is_hole(std::uint16_t d) noexcept { return d == kHoleDepth; }
inline bool is_hole(double d) noexcept { return d == 0.0; }

std::string shape_string(int width, int height);

template <typename A, typename B>
void require_same_shape(const Grid<A>& a, const Grid<B>& b, const char* what) {
  if (!a.same_shape(b)) {
    throw ContractViolation(std::string(what) + ": shape mismatch " +
                            shape_string(a.width(), a.height()) + " vs " +
                            shape_string(b.width(), b.height()));
  }
}

/// Luminance 0.299 R + 0.587 G + 0.114 B, not rounded.
GrayImage to_grayscale(const ColorImage& img);

DepthField to_field(const DepthMap& depth);

/// Rounds half away from zero and clamps into [0, 65535].
DepthMap round_to_depth(const DepthField& field);

std::size_t count_set(const BinaryMask& mask);

}  // namespace depthfill
