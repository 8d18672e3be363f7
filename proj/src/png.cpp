#include "multibrot/render.hpp"

#include <zlib.h>

#include <cstring>
#include <stdexcept>
#include <string>

namespace multibrot {

namespace {

void append_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>((v >> 24) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

void append_chunk(std::string& out, const char type[4], const std::string& data) {
  append_u32(out, static_cast<std::uint32_t>(data.size()));
  std::string body(type, 4);
  body += data;
  out += body;
  uLong crc = crc32(0L, reinterpret_cast<const Bytef*>(body.data()),
                    static_cast<uInt>(body.size()));
  append_u32(out, static_cast<std::uint32_t>(crc));
}

}  // namespace

std::string encode_png(const RasterImage& img) {
  if (img.width < 1 || img.height < 1 ||
      img.rgb.size() != static_cast<std::size_t>(img.width) * img.height * 3)
    throw std::invalid_argument("malformed raster image");

  std::string out("\x89PNG\r\n\x1a\n", 8);

  std::string ihdr;
  append_u32(ihdr, static_cast<std::uint32_t>(img.width));
  append_u32(ihdr, static_cast<std::uint32_t>(img.height));
  ihdr += std::string("\x08\x02\x00\x00\x00", 5);  // 8-bit RGB
  append_chunk(out, "IHDR", ihdr);

  for (const auto& [key, value] : img.metadata) {
    std::string text = key;
    text.push_back('\0');
    text += value;
    append_chunk(out, "tEXt", text);
  }

  // Filter byte 0 per scanline, then one deflate stream.
  std::string raw;
  raw.reserve(static_cast<std::size_t>(img.height) * (img.width * 3 + 1));
  for (int y = 0; y < img.height; ++y) {
    raw.push_back('\0');
    raw.append(reinterpret_cast<const char*>(img.rgb.data() +
                                             static_cast<std::size_t>(y) *
                                                 img.width * 3),
               static_cast<std::size_t>(img.width) * 3);
  }
  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::string idat(bound, '\0');
  if (compress2(reinterpret_cast<Bytef*>(idat.data()), &bound,
                reinterpret_cast<const Bytef*>(raw.data()),
                static_cast<uLong>(raw.size()), 9) != Z_OK)
    throw std::runtime_error("png deflate failed");
  idat.resize(bound);
  append_chunk(out, "IDAT", idat);
  append_chunk(out, "IEND", "");
  return out;
}

}  // namespace multibrot
