#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "dptrack/io.hpp"

namespace dptrack {
namespace {

class PgmHeaderReader {
 public:
  PgmHeaderReader(std::string_view bytes, std::string_view name) : bytes_(bytes), name_(name) {}

  // Unsigned decimal field, skipping whitespace and '#' comments before it.
  long next_number(const char* field) {
    skip_space_and_comments();
    const std::size_t begin = pos_;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      ++pos_;
      if (pos_ - begin > 9) fail(ErrorKind::ParseError, std::string(field) + " is too large");
    }
    if (pos_ == begin) {
      if (pos_ >= bytes_.size()) fail(ErrorKind::TruncatedFile, std::string("missing ") + field);
      fail(ErrorKind::ParseError, std::string("expected a number for ") + field);
    }
    return std::stol(std::string(bytes_.substr(begin, pos_ - begin)));
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_start() {
    if (pos_ >= bytes_.size()) fail(ErrorKind::TruncatedFile, "header ends before the raster");
    if (!std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      fail(ErrorKind::ParseError, "maxval must be followed by whitespace");
    }
    return pos_ + 1;
  }

  [[noreturn]] void fail(ErrorKind kind, const std::string& what) const {
    std::ostringstream msg;
    msg << name_ << ": " << what << " (byte " << pos_ << ")";
    throw Error(kind, msg.str());
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
  std::string_view name_;
  std::size_t pos_ = 2;
};

}  // namespace

ProbMap read_pgm(std::string_view bytes, std::string_view name) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw Error(ErrorKind::UnsupportedFormat, std::string(name) + ": not a PNM file");
  }
  if (bytes[1] != '5') {
    throw Error(ErrorKind::UnsupportedFormat,
                std::string(name) + ": only binary PGM (P5) is supported, found P" + bytes[1]);
  }
  PgmHeaderReader header(bytes, name);
  const long width = header.next_number("width");
  const long height = header.next_number("height");
  const long maxval = header.next_number("maxval");
  if (width < 1 || height < 1) header.fail(ErrorKind::DimensionMismatch, "zero dimension");
  if (maxval < 1 || maxval > 65535) header.fail(ErrorKind::ParseError, "maxval outside 1..65535");
  const std::size_t start = header.raster_start();

  const std::size_t sample_bytes = maxval < 256 ? 1 : 2;
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  const std::size_t expected = start + count * sample_bytes;
  if (bytes.size() < expected) {
    std::ostringstream msg;
    msg << name << ": raster needs " << count * sample_bytes << " bytes, "
        << bytes.size() - start << " present";
    throw Error(ErrorKind::TruncatedFile, msg.str());
  }
  if (bytes.size() > expected) {
    std::ostringstream msg;
    msg << name << ": " << bytes.size() - expected << " bytes after the raster";
    throw Error(ErrorKind::TrailingData, msg.str());
  }

  std::vector<double> values(count);
  const auto* raster = reinterpret_cast<const unsigned char*>(bytes.data() + start);
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned sample = sample_bytes == 1
                                ? raster[i]
                                : (static_cast<unsigned>(raster[2 * i]) << 8) | raster[2 * i + 1];
    if (sample > static_cast<unsigned>(maxval)) {
      std::ostringstream msg;
      msg << name << ": sample " << sample << " at pixel " << i << " exceeds maxval " << maxval;
      throw Error(ErrorKind::ValueOutOfRange, msg.str());
    }
    values[i] = static_cast<double>(sample) / static_cast<double>(maxval);
  }
  return ProbMap::create(static_cast<int>(width), static_cast<int>(height), std::move(values));
}

std::string write_pgm(const ProbMap& map, int maxval) {
  if (maxval < 1 || maxval > 65535) {
    throw Error(ErrorKind::InvalidArgument, "maxval must lie in 1..65535");
  }
  std::string out = "P5\n" + std::to_string(map.width()) + " " + std::to_string(map.height()) +
                    "\n" + std::to_string(maxval) + "\n";
  for (double v : map.values()) {
    const auto sample = static_cast<unsigned>(std::lround(v * maxval));
    if (maxval >= 256) out.push_back(static_cast<char>(sample >> 8));
    out.push_back(static_cast<char>(sample & 0xFFu));
  }
  return out;
}

ProbSequence read_pgm_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorKind::IoError, dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".pgm") files.push_back(entry.path());
  }
  if (files.empty()) throw Error(ErrorKind::EmptyDirectory, dir.string() + " holds no .pgm files");
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });

  std::vector<ProbMap> frames;
  frames.reserve(files.size());
  for (const auto& file : files) {
    ProbMap map = read_pgm(read_file(file), file.filename().string());
    if (!frames.empty() &&
        (map.width() != frames.front().width() || map.height() != frames.front().height())) {
      std::ostringstream msg;
      msg << file.filename().string() << " is " << map.width() << "x" << map.height()
          << ", first frame is " << frames.front().width() << "x" << frames.front().height();
      throw Error(ErrorKind::MixedDimensions, msg.str());
    }
    frames.push_back(std::move(map));
  }
  return ProbSequence(std::move(frames));
}

void write_pgm_dir(const std::filesystem::path& dir, const ProbSequence& seq, int maxval) {
  std::filesystem::create_directories(dir);
  for (std::size_t t = 0; t < seq.size(); ++t) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%05zu.pgm", t);
    write_file(dir / name, write_pgm(seq[t], maxval));
  }
}

}  // namespace dptrack
