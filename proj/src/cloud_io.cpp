#include "esmicp/cloud_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>
#include <vector>

namespace esmicp {

namespace {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& what) {
  std::ostringstream msg;
  msg << "parse error in " << path << " at line " << line << ": " << what;
  throw Error(Error::Code::parse, msg.str());
}

double parse_real(const std::string& token, const std::string& path, std::size_t line) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &consumed);
  } catch (const std::exception&) {
    parse_fail(path, line, "expected a number, got '" + token + "'");
  }
  if (consumed != token.size()) {
    parse_fail(path, line, "trailing characters in number '" + token + "'");
  }
  if (!std::isfinite(value)) {
    parse_fail(path, line, "non-finite coordinate '" + token + "'");
  }
  return value;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

PointCloud read_pcd(std::ifstream& in, const std::string& path) {
  std::size_t line_no = 0;
  std::string line;
  std::vector<int> field_index;  // positions of x, y, z among FIELDS
  long declared_points = -1;
  long width = -1, height = -1;
  bool saw_data = false;
  bool ascii = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '#') continue;
    std::vector<std::string> tokens = split_ws(line);
    if (tokens.empty()) continue;
    const std::string key = tokens[0];

    if (key == "FIELDS") {
      int ix = -1, iy = -1, iz = -1;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (tokens[i] == "x") ix = static_cast<int>(i - 1);
        if (tokens[i] == "y") iy = static_cast<int>(i - 1);
        if (tokens[i] == "z") iz = static_cast<int>(i - 1);
      }
      if (ix < 0 || iy < 0 || iz < 0) {
        parse_fail(path, line_no, "FIELDS must include x y z");
      }
      field_index = {ix, iy, iz};
    } else if (key == "POINTS") {
      if (tokens.size() != 2) parse_fail(path, line_no, "malformed POINTS");
      declared_points = std::lround(parse_real(tokens[1], path, line_no));
    } else if (key == "WIDTH") {
      if (tokens.size() != 2) parse_fail(path, line_no, "malformed WIDTH");
      width = std::lround(parse_real(tokens[1], path, line_no));
    } else if (key == "HEIGHT") {
      if (tokens.size() != 2) parse_fail(path, line_no, "malformed HEIGHT");
      height = std::lround(parse_real(tokens[1], path, line_no));
    } else if (key == "DATA") {
      if (tokens.size() != 2) parse_fail(path, line_no, "malformed DATA");
      if (tokens[1] != "ascii") {
        throw Error(Error::Code::parse,
                    "unsupported encoding '" + tokens[1] + "' in " + path +
                        " (only DATA ascii is supported)");
      }
      ascii = true;
      saw_data = true;
      break;
    }
    // VERSION, SIZE, TYPE, COUNT, VIEWPOINT carry nothing we need.
  }

  if (!saw_data || !ascii) {
    parse_fail(path, line_no, "missing DATA ascii header");
  }
  if (field_index.empty()) {
    parse_fail(path, line_no, "missing FIELDS header");
  }
  if (declared_points < 0) {
    parse_fail(path, line_no, "missing POINTS header");
  }
  if (width >= 0 && height >= 0 && width * height != declared_points) {
    parse_fail(path, line_no, "WIDTH * HEIGHT does not match POINTS");
  }

  PointCloud cloud;
  cloud.reserve(static_cast<std::size_t>(declared_points));
  const int needed = 1 + std::max({field_index[0], field_index[1], field_index[2]});
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (static_cast<int>(tokens.size()) < needed) {
      parse_fail(path, line_no, "data row has too few columns");
    }
    Vec3 p{parse_real(tokens[static_cast<std::size_t>(field_index[0])], path, line_no),
           parse_real(tokens[static_cast<std::size_t>(field_index[1])], path, line_no),
           parse_real(tokens[static_cast<std::size_t>(field_index[2])], path, line_no)};
    cloud.push_back(p);
  }
  if (static_cast<long>(cloud.size()) != declared_points) {
    parse_fail(path, line_no,
               "POINTS declares " + std::to_string(declared_points) + " but file lists " +
                   std::to_string(cloud.size()));
  }
  return cloud;
}

PointCloud read_off(std::ifstream& in, const std::string& path) {
  std::size_t line_no = 0;
  std::string line;
  if (!std::getline(in, line)) parse_fail(path, 1, "empty file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();

  long nv = -1, nf = -1, ne = -1;
  if (line.rfind("OFF", 0) != 0) {
    parse_fail(path, line_no, "first line must start with OFF");
  }
  // ModelNet40 files sometimes put the counts on the OFF line itself.
  std::vector<std::string> first_tokens = split_ws(line.substr(3));
  if (!first_tokens.empty()) {
    if (first_tokens.size() != 3) parse_fail(path, line_no, "expected 'OFF nv nf ne'");
    nv = std::lround(parse_real(first_tokens[0], path, line_no));
    nf = std::lround(parse_real(first_tokens[1], path, line_no));
    ne = std::lround(parse_real(first_tokens[2], path, line_no));
  } else {
    if (!std::getline(in, line)) parse_fail(path, line_no, "missing count line");
    ++line_no;
    std::vector<std::string> tokens = split_ws(line);
    if (tokens.size() != 3) parse_fail(path, line_no, "expected 'nv nf ne'");
    nv = std::lround(parse_real(tokens[0], path, line_no));
    nf = std::lround(parse_real(tokens[1], path, line_no));
    ne = std::lround(parse_real(tokens[2], path, line_no));
  }
  (void)nf;
  (void)ne;
  if (nv < 0) parse_fail(path, line_no, "negative vertex count");

  PointCloud cloud;
  cloud.reserve(static_cast<std::size_t>(nv));
  while (static_cast<long>(cloud.size()) < nv && std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() < 3) parse_fail(path, line_no, "vertex row has fewer than 3 columns");
    cloud.push_back({parse_real(tokens[0], path, line_no),
                     parse_real(tokens[1], path, line_no),
                     parse_real(tokens[2], path, line_no)});
  }
  if (static_cast<long>(cloud.size()) != nv) {
    parse_fail(path, line_no, "file ends before " + std::to_string(nv) + " vertices");
  }
  return cloud;  // faces, if any, are ignored
}

PointCloud read_xyz(std::ifstream& in, const std::string& path) {
  std::size_t line_no = 0;
  std::string line;
  PointCloud cloud;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '#') continue;
    std::vector<std::string> tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 3) {
      parse_fail(path, line_no, "expected 3 columns, got " + std::to_string(tokens.size()));
    }
    cloud.push_back({parse_real(tokens[0], path, line_no),
                     parse_real(tokens[1], path, line_no),
                     parse_real(tokens[2], path, line_no)});
  }
  return cloud;
}

void write_coord_row(std::ofstream& out, const Vec3& p) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", p.x, p.y, p.z);
  out << buf;
}

}  // namespace

CloudFormat format_from_name(const std::string& name) {
  const std::string n = lowercase(name);
  if (n == "pcd" || n == "pcd_ascii") return CloudFormat::pcd_ascii;
  if (n == "off") return CloudFormat::off;
  if (n == "xyz") return CloudFormat::xyz;
  throw Error(Error::Code::invalid_argument, "unknown cloud format '" + name + "'");
}

CloudFormat format_from_path(const std::string& path) {
  const std::size_t dot = path.find_last_of('.');
  if (dot == std::string::npos) {
    throw Error(Error::Code::invalid_argument,
                "cannot infer cloud format from '" + path + "' (no extension)");
  }
  return format_from_name(path.substr(dot + 1));
}

PointCloud read_cloud(const std::string& path, CloudFormat format) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Error::Code::io, "cannot open " + path);
  }
  switch (format) {
    case CloudFormat::pcd_ascii: return read_pcd(in, path);
    case CloudFormat::off: return read_off(in, path);
    default: return read_xyz(in, path);
  }
}

PointCloud read_cloud(const std::string& path) {
  return read_cloud(path, format_from_path(path));
}

void write_cloud(const PointCloud& cloud, const std::string& path, CloudFormat format) {
  std::ofstream out(path);
  if (!out) {
    throw Error(Error::Code::io, "cannot open " + path + " for writing");
  }
  switch (format) {
    case CloudFormat::pcd_ascii:
      out << "# .PCD v0.7 - Point Cloud Data file format\n"
             "VERSION 0.7\n"
             "FIELDS x y z\n"
             "SIZE 8 8 8\n"
             "TYPE F F F\n"
             "COUNT 1 1 1\n"
             "WIDTH "
          << cloud.size()
          << "\nHEIGHT 1\nVIEWPOINT 0 0 0 1 0 0 0\nPOINTS " << cloud.size()
          << "\nDATA ascii\n";
      for (const Vec3& p : cloud) write_coord_row(out, p);
      break;
    case CloudFormat::off:
      out << "OFF\n" << cloud.size() << " 0 0\n";
      for (const Vec3& p : cloud) write_coord_row(out, p);
      break;
    default:
      for (const Vec3& p : cloud) write_coord_row(out, p);
      break;
  }
  if (!out) {
    throw Error(Error::Code::io, "write failed for " + path);
  }
}

void write_cloud(const PointCloud& cloud, const std::string& path) {
  write_cloud(cloud, path, format_from_path(path));
}

PointCloud voxel_downsample(const PointCloud& cloud, const VoxelFilterParams& params) {
  if (params.leaf <= 0.0) {
    throw Error(Error::Code::invalid_argument, "voxel_downsample: leaf must be > 0");
  }
  if (cloud.empty()) return {};

  Vec3 lo = cloud[0];
  for (const Vec3& p : cloud) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
  }

  struct Accumulator {
    Vec3 sum;
    std::size_t count = 0;
  };
  // Key ordered (z, y, x) so iteration is x-fastest.
  std::map<std::tuple<long, long, long>, Accumulator> voxels;
  for (const Vec3& p : cloud) {
    const long ix = static_cast<long>(std::floor((p.x - lo.x) / params.leaf));
    const long iy = static_cast<long>(std::floor((p.y - lo.y) / params.leaf));
    const long iz = static_cast<long>(std::floor((p.z - lo.z) / params.leaf));
    Accumulator& acc = voxels[{iz, iy, ix}];
    acc.sum += p;
    acc.count += 1;
  }

  PointCloud out;
  out.reserve(voxels.size());
  for (const auto& [key, acc] : voxels) {
    out.push_back(acc.sum / static_cast<double>(acc.count));
  }
  return out;
}

}  // namespace esmicp
