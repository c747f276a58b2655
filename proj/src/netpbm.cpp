#include "depthfill/netpbm.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <system_error>

namespace depthfill {
namespace {

struct Header {
  std::string magic;
  int width = 0;
  int height = 0;
  int maxval = 0;
  std::size_t payload_offset = 0;
};

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  std::string token() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_])) &&
           bytes_[pos_] != '#') {
      ++pos_;
    }
    return std::string(bytes_.substr(start, pos_ - start));
  }

  int number(const char* field) {
    const std::string tok = token();
    int value = 0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc{} || end != tok.data() + tok.size() || value <= 0) {
      throw FormatError(std::string("netpbm: bad ") + field + " token '" + tok + "'");
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the payload.
  std::size_t payload_start() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw FormatError("netpbm: missing whitespace after maxval");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

Header parse_header(std::string_view bytes, std::string_view expected_magic, int expected_maxval) {
  HeaderReader reader(bytes);
  Header h;
  h.magic = reader.token();
  if (h.magic != expected_magic) {
    throw FormatError("netpbm: bad magic token '" + h.magic + "', expected '" +
                      std::string(expected_magic) + "'");
  }
  h.width = reader.number("width");
  h.height = reader.number("height");
  h.maxval = reader.number("maxval");
  if (h.maxval != expected_maxval) {
    throw UnsupportedFormat("netpbm: unsupported maxval " + std::to_string(h.maxval) +
                            ", expected " + std::to_string(expected_maxval));
  }
  h.payload_offset = reader.payload_start();
  return h;
}

std::string_view payload(std::string_view bytes, const Header& h, std::size_t bytes_per_pixel) {
  const std::size_t expected = static_cast<std::size_t>(h.width) * h.height * bytes_per_pixel;
  const std::size_t actual = bytes.size() - std::min(bytes.size(), h.payload_offset);
  if (actual < expected) {
    throw TruncatedFile("netpbm: truncated payload, expected " + std::to_string(expected) +
                            " bytes, found " + std::to_string(actual),
                        expected, actual);
  }
  return bytes.substr(h.payload_offset, expected);
}

std::string header(std::string_view magic, int width, int height, int maxval) {
  return std::string(magic) + "\n" + std::to_string(width) + " " + std::to_string(height) + "\n" +
         std::to_string(maxval) + "\n";
}

std::string encode_16bit(std::string_view magic, const Grid<std::uint16_t>& img) {
  std::string out = header(magic, img.width(), img.height(), 65535);
  out.reserve(out.size() + img.size() * 2);
  for (const std::uint16_t v : img.samples()) {
    out.push_back(static_cast<char>(v >> 8));
    out.push_back(static_cast<char>(v & 0xFF));
  }
  return out;
}

}  // namespace

DepthMap decode_depth_pgm(std::string_view bytes) {
  const Header h = parse_header(bytes, "P5", 65535);
  const std::string_view data = payload(bytes, h, 2);
  DepthMap map(h.width, h.height);
  for (std::size_t i = 0; i < map.size(); ++i) {
    const auto hi = static_cast<unsigned char>(data[2 * i]);
    const auto lo = static_cast<unsigned char>(data[2 * i + 1]);
    map[i] = static_cast<std::uint16_t>((hi << 8) | lo);
  }
  return map;
}

ColorImage decode_color_ppm(std::string_view bytes) {
  const Header h = parse_header(bytes, "P6", 255);
  const std::string_view data = payload(bytes, h, 3);
  ColorImage img(h.width, h.height);
  for (std::size_t i = 0; i < img.size(); ++i) {
    img[i] = Rgb{static_cast<std::uint8_t>(data[3 * i]), static_cast<std::uint8_t>(data[3 * i + 1]),
                 static_cast<std::uint8_t>(data[3 * i + 2])};
  }
  return img;
}

std::string encode_depth_pgm(const DepthMap& map) { return encode_16bit("P5", map); }

std::string encode_gray16_pgm(const Grid<std::uint16_t>& img) { return encode_16bit("P5", img); }

std::string encode_color_ppm(const ColorImage& img) {
  std::string out = header("P6", img.width(), img.height(), 255);
  out.reserve(out.size() + img.size() * 3);
  for (const Rgb c : img.samples()) {
    out.push_back(static_cast<char>(c.r));
    out.push_back(static_cast<char>(c.g));
    out.push_back(static_cast<char>(c.b));
  }
  return out;
}

std::string encode_mask_pgm(const BinaryMask& mask) {
  std::string out = header("P5", mask.width(), mask.height(), 255);
  for (const auto b : mask.samples()) out.push_back(static_cast<char>(b ? 0xFF : 0x00));
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed on '" + path.string() + "'");
  return bytes;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  std::filesystem::path tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("write failed on '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path.string() + "'");
  }
}

DepthMap load_depth_pgm(const std::filesystem::path& path) {
  return decode_depth_pgm(read_file(path));
}

ColorImage load_color_ppm(const std::filesystem::path& path) {
  return decode_color_ppm(read_file(path));
}

void save_depth_pgm(const DepthMap& map, const std::filesystem::path& path) {
  write_file_atomic(path, encode_depth_pgm(map));
}

void save_color_ppm(const ColorImage& img, const std::filesystem::path& path) {
  write_file_atomic(path, encode_color_ppm(img));
}

void save_mask_pgm(const BinaryMask& mask, const std::filesystem::path& path) {
  write_file_atomic(path, encode_mask_pgm(mask));
}

}  // namespace depthfill
