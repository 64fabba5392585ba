#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>

#include "dptrack/io.hpp"

namespace dptrack {
namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

std::uint32_t get_u32(std::string_view bytes, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + i])) << (8 * i);
  }
  return v;
}

}  // namespace

std::string write_pmseq(const ProbSequence& seq) {
  const std::size_t plane = static_cast<std::size_t>(seq.width()) * seq.height();
  std::string out;
  out.reserve(kPmseqHeaderSize + 4 * plane * seq.size());
  out.append(kPmseqMagic);
  put_u32(out, static_cast<std::uint32_t>(seq.size()));
  put_u32(out, static_cast<std::uint32_t>(seq.height()));
  put_u32(out, static_cast<std::uint32_t>(seq.width()));
  for (const ProbMap& frame : seq.frames()) {
    for (double v : frame.values()) put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  }
  return out;
}

ProbSequence read_pmseq(std::string_view bytes) {
  const std::size_t magic_len = kPmseqMagic.size();
  if (bytes.substr(0, magic_len) != kPmseqMagic.substr(0, std::min(bytes.size(), magic_len))) {
    throw Error(ErrorKind::BadMagic, "missing PMSQ1 magic at byte 0");
  }
  if (bytes.size() < kPmseqHeaderSize) {
    std::ostringstream msg;
    msg << "header needs " << kPmseqHeaderSize << " bytes, file has " << bytes.size();
    throw Error(ErrorKind::TruncatedFile, msg.str());
  }
  const std::uint32_t frames = get_u32(bytes, 5);
  const std::uint32_t height = get_u32(bytes, 9);
  const std::uint32_t width = get_u32(bytes, 13);
  if (frames == 0 || height == 0 || width == 0 || height > INT32_MAX || width > INT32_MAX) {
    std::ostringstream msg;
    msg << "invalid dimensions T=" << frames << " H=" << height << " W=" << width;
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  const std::uint64_t plane = static_cast<std::uint64_t>(height) * width;
  // 2^32 * 2^62 would overflow; anything near that is truncated anyway.
  if (plane > (UINT64_MAX / 4) / frames) {
    throw Error(ErrorKind::TruncatedFile, "declared payload exceeds addressable size");
  }
  const std::uint64_t expected = kPmseqHeaderSize + 4 * plane * frames;
  if (bytes.size() < expected) {
    std::ostringstream msg;
    msg << "expected " << expected << " bytes for T=" << frames << " H=" << height
        << " W=" << width << ", file has " << bytes.size();
    throw Error(ErrorKind::TruncatedFile, msg.str());
  }
  if (bytes.size() > expected) {
    std::ostringstream msg;
    msg << (bytes.size() - expected) << " unexpected bytes after offset " << expected;
    throw Error(ErrorKind::TrailingData, msg.str());
  }

  std::vector<ProbMap> maps;
  maps.reserve(frames);
  std::size_t at = kPmseqHeaderSize;
  for (std::uint32_t t = 0; t < frames; ++t) {
    std::vector<double> values(plane);
    for (std::size_t i = 0; i < plane; ++i, at += 4) {
      const float f = std::bit_cast<float>(get_u32(bytes, at));
      if (!(f >= 0.0f && f <= 1.0f)) {
        std::ostringstream msg;
        msg.precision(9);
        msg << "frame " << t << " byte offset " << at << ": value " << f
            << " is outside [0, 1]";
        throw Error(ErrorKind::ValueOutOfRange, msg.str());
      }
      values[i] = f;
    }
    maps.push_back(ProbMap::create(static_cast<int>(width), static_cast<int>(height),
                                   std::move(values)));
  }
  return ProbSequence(std::move(maps));
}

}  // namespace dptrack
