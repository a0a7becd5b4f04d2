#pragma once

// Binary PGM (P5) codec, frame-directory sequences and CSV reports.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "stdenoise/core.hpp"
#include "stdenoise/metrics.hpp"

namespace stdenoise {

/// Parses a P5 image with maxval <= 255. Comments ('#' to end of line) are
/// allowed anywhere whitespace is allowed in the header.
Frame read_pgm(std::span<const std::uint8_t> bytes);

/// "P5\n<w> <h>\n255\n" followed by the quantized raster.
std::vector<std::uint8_t> write_pgm(const Frame& f);

Frame read_pgm_file(const std::filesystem::path& path);

/// Writes to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// dir / "frame_NNNN.pgm"
std::filesystem::path frame_path(const std::filesystem::path& dir, std::size_t n);

/// Reads frame_0000.pgm, frame_0001.pgm, ... Other files are ignored.
/// Throws SequenceError on an empty directory or a missing index.
Sequence read_sequence(const std::filesystem::path& dir);

/// Creates `dir` if needed and writes one PGM per frame.
void write_sequence(const Sequence& seq, const std::filesystem::path& dir);

/// CSV with header `frame,mse,psnr,method`; infinite PSNR is written as "inf".
void write_metrics_csv(std::ostream& out, std::span<const MetricsReport> reports);

/// Fixed-precision rendering used by CSV and summaries ("inf" for infinity).
std::string format_number(double v, int precision = 6);

}  // namespace stdenoise
