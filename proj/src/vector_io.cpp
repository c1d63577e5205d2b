#include "redcbc/vector_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "redcbc/errors.hpp"

namespace redcbc {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // trim to the shortest representation that round-trips
  for (int prec = 1; prec < 17; ++prec) {
    char probe[40];
    std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
    if (std::strtod(probe, nullptr) == v) return probe;
  }
  return buf;
}

}  // namespace

std::string format_vector_file(const VectorFileHeader& header, const GeneratingVector& vec) {
  std::ostringstream out;
  out << "# " << header.mode << ' ' << header.b << ' ' << header.m << ' '
      << format_double(header.alpha) << '\n';
  out << "# weights " << header.weights_desc << '\n';
  for (int j = 1; j <= vec.dimension(); ++j) {
    out << j << ' ' << vec.w[j - 1] << ' ' << vec.components[j - 1] << ' '
        << vec.effective[j - 1] << '\n';
  }
  return out.str();
}

ParsedVectorFile parse_vector_file(const std::string& text) {
  std::istringstream in(text);
  std::string line;

  ParsedVectorFile out;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw ValidationError("vector file: missing parameter header");
  }
  {
    std::istringstream h(line.substr(2));
    if (!(h >> out.header.mode >> out.header.b >> out.header.m >> out.header.alpha)) {
      throw ValidationError("vector file: malformed parameter header");
    }
  }
  if (out.header.mode != "korobov" && out.header.mode != "polynomial") {
    throw ValidationError("vector file: unknown mode '" + out.header.mode + "'");
  }
  if (!std::getline(in, line) || line.rfind("# weights ", 0) != 0) {
    throw ValidationError("vector file: missing weights header");
  }
  out.header.weights_desc = line.substr(10);

  out.vector.kind = out.header.mode == "korobov" ? GeneratingVector::Kind::integer
                                                 : GeneratingVector::Kind::polynomial;
  int expected_j = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    int j = 0, w = 0;
    std::uint64_t z = 0, eff = 0;
    if (!(row >> j >> w >> z >> eff)) {
      throw ValidationError("vector file: malformed row '" + line + "'");
    }
    std::string rest;
    if (row >> rest) throw ValidationError("vector file: trailing tokens in row");
    if (j != expected_j) throw ValidationError("vector file: rows out of order");
    ++expected_j;
    out.vector.w.push_back(w);
    out.vector.components.push_back(z);
    out.vector.effective.push_back(eff);
  }
  if (out.vector.dimension() == 0) throw ValidationError("vector file: no rows");
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open for writing: " + path);
  f << content;
  if (!f) throw ValidationError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

}  // namespace redcbc
