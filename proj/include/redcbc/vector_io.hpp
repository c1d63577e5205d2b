#pragma once

#include <cstdint>
#include <string>

#include "redcbc/generating_vector.hpp"

namespace redcbc {

/// Plain-text generating-vector file:
///   # <mode> <b> <m> <alpha>
///   # weights <description>
///   <j> <w_j> <z_j> <effective_j>        (one line per dimension)
/// Decimal integers, single spaces, LF line endings.
struct VectorFileHeader {
  std::string mode;  // "korobov" | "polynomial"
  std::uint64_t b = 0;
  int m = 0;
  double alpha = 0.0;
  std::string weights_desc;
};

std::string format_vector_file(const VectorFileHeader& header, const GeneratingVector& vec);

struct ParsedVectorFile {
  VectorFileHeader header;
  GeneratingVector vector;  // trace empty (not stored in the file)
};

ParsedVectorFile parse_vector_file(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace redcbc
