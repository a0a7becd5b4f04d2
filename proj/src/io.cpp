#include "stdenoise/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <regex>
#include <sstream>

#include "stdenoise/errors.hpp"

namespace stdenoise {

namespace fs = std::filesystem;

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long number(const char* what) {
    skip_space_and_comments();
    const std::size_t begin = pos_;
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000L) throw FormatError(std::string("PGM ") + what + " too large");
      ++pos_;
    }
    if (pos_ == begin) throw FormatError(std::string("PGM header: expected ") + what);
    return value;
  }

  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }
  bool at_space() const { return pos_ < bytes_.size() && std::isspace(bytes_[pos_]); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

Frame read_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw FormatError("not a binary PGM (missing P5 magic)");
  }
  HeaderReader header(bytes);
  const long width = header.number("width");
  const long height = header.number("height");
  const long maxval = header.number("maxval");
  if (width < 1 || height < 1) throw FormatError("PGM dimensions must be positive");
  if (maxval < 1) throw FormatError("PGM maxval must be >= 1");
  if (maxval > 255) throw FormatError("unsupported PGM maxval " + std::to_string(maxval) +
                                      " (16-bit samples are not supported)");
  if (!header.at_space()) throw FormatError("PGM header: missing whitespace after maxval");
  header.advance();

  const std::size_t expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  const std::size_t available = bytes.size() - header.pos();
  if (available < expected) {
    throw FormatError("truncated PGM raster: " + std::to_string(available) + " of " +
                      std::to_string(expected) + " bytes");
  }
  if (available > expected) throw FormatError("trailing data after PGM raster");
  return frame_from_bytes(static_cast<std::size_t>(width), static_cast<std::size_t>(height),
                          bytes.subspan(header.pos()), static_cast<int>(maxval));
}

std::vector<std::uint8_t> write_pgm(const Frame& f) {
  const std::string header =
      "P5\n" + std::to_string(f.width()) + " " + std::to_string(f.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const auto raster = frame_to_bytes(f);
  out.insert(out.end(), raster.begin(), raster.end());
  return out;
}

Frame read_pgm_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  try {
    return read_pgm(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_file_atomic(const fs::path& path, std::span<const std::uint8_t> bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

fs::path frame_path(const fs::path& dir, std::size_t n) {
  char name[32];
  std::snprintf(name, sizeof name, "frame_%04zu.pgm", n);
  return dir / name;
}

Sequence read_sequence(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a directory: " + dir.string());

  static const std::regex pattern(R"(frame_(\d{4,})\.pgm)");
  std::map<std::size_t, fs::path> found;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && std::regex_match(name, m, pattern)) {
      found.emplace(std::stoul(m[1].str()), entry.path());
    }
  }
  if (found.empty()) throw SequenceError("no frame_NNNN.pgm files in " + dir.string());

  std::vector<Frame> frames;
  std::size_t expected = 0;
  for (const auto& [index, path] : found) {
    if (index != expected) {
      throw SequenceError("missing frame index " + std::to_string(expected) + " in " + dir.string());
    }
    frames.push_back(read_pgm_file(path));
    ++expected;
  }
  return Sequence(std::move(frames));
}

void write_sequence(const Sequence& seq, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (std::size_t n = 0; n < seq.length(); ++n) write_file_atomic(frame_path(dir, n), write_pgm(seq[n]));
}

std::string format_number(double v, int precision) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.setf(std::ios::fixed);
  os.precision(precision);
  os << v;
  return os.str();
}

void write_metrics_csv(std::ostream& out, std::span<const MetricsReport> reports) {
  out << "frame,mse,psnr,method\n";
  for (const MetricsReport& r : reports) {
    std::string method = r.method;
    std::replace_if(method.begin(), method.end(),
                    [](char c) { return c == ',' || c == '"' || c == '\n' || c == '\r'; }, '_');
    for (const FrameMetrics& m : r.per_frame) {
      out << m.frame << ',' << format_number(m.mse, 8) << ',' << format_number(m.psnr, 4) << ','
          << method << '\n';
    }
  }
}

}  // namespace stdenoise
