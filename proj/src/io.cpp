#include "rhmap/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace rhmap {

namespace {

std::vector<unsigned char> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("cannot open " + path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t load_u32le(const unsigned char* b) {
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void store_u32le(std::uint32_t v, std::array<char, 4>& out) {
  for (int i = 0; i < 4; ++i) {
    out[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xFFU);
  }
}

std::ofstream open_for_write(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) {
    throw FormatError("cannot write " + path.string());
  }
  return out;
}

void check_written(const std::ofstream& out, const std::filesystem::path& path) {
  if (!out) {
    throw FormatError("write failed for " + path.string());
  }
}

}  // namespace

std::set<std::uint32_t> default_moving_classes() {
  std::set<std::uint32_t> ids;
  for (std::uint32_t c = 252; c <= 259; ++c) {
    ids.insert(c);
  }
  return ids;
}

Scan read_kitti_scan(const std::filesystem::path& path) {
  const auto bytes = read_bytes(path);
  const std::size_t whole = bytes.size() / 16 * 16;
  if (whole != bytes.size()) {
    throw FormatError(path.string() + ": truncated point record at byte offset " +
                      std::to_string(whole));
  }
  Scan scan;
  scan.points.reserve(bytes.size() / 16);
  for (std::size_t off = 0; off < bytes.size(); off += 16) {
    const unsigned char* rec = bytes.data() + off;
    scan.points.emplace_back(std::bit_cast<float>(load_u32le(rec)),
                             std::bit_cast<float>(load_u32le(rec + 4)),
                             std::bit_cast<float>(load_u32le(rec + 8)));
  }
  return scan;
}

void write_kitti_scan(const std::filesystem::path& path, const Scan& scan) {
  auto out = open_for_write(path, std::ios::binary);
  std::array<char, 4> word{};
  for (const auto& p : scan.points) {
    for (const float v : {p.x(), p.y(), p.z(), 0.0F}) {
      store_u32le(std::bit_cast<std::uint32_t>(v), word);
      out.write(word.data(), 4);
    }
  }
  check_written(out, path);
}

PoseFile read_poses(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open " + path.string());
  }
  PoseFile file;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::istringstream fields(line);
    std::array<double, 12> v{};
    std::size_t n = 0;
    double x;
    while (fields >> x) {
      if (n == v.size()) {
        ++n;
        break;
      }
      v[n++] = x;
    }
    const bool clean_end = fields.eof() || (fields >> std::ws).eof();
    if (n != 12 || !clean_end) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": expected 12 numeric fields");
    }
    Pose pose;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        pose.rotation(r, c) = v[static_cast<std::size_t>(r * 4 + c)];
      }
      pose.translation(r) = v[static_cast<std::size_t>(r * 4 + 3)];
    }
    if (!pose.rotation.allFinite() || !pose.translation.allFinite()) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": non-finite value");
    }
    if (!pose.is_valid(1e-6)) {
      const Eigen::JacobiSVD<Eigen::Matrix3d> svd(pose.rotation,
                                                  Eigen::ComputeFullU | Eigen::ComputeFullV);
      Eigen::Matrix3d u = svd.matrixU();
      if ((u * svd.matrixV().transpose()).determinant() < 0.0) {
        u.col(2) = -u.col(2);
      }
      pose.rotation = u * svd.matrixV().transpose();
      file.reorthonormalized_lines.push_back(line_no);
    }
    file.poses.push_back(pose);
  }
  return file;
}

void write_poses(const std::filesystem::path& path, const std::vector<Pose>& poses) {
  auto out = open_for_write(path, std::ios::out);
  char buf[32];
  for (const Pose& pose : poses) {
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 4; ++c) {
        const double v = c < 3 ? pose.rotation(r, c) : pose.translation(r);
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf << ((r == 2 && c == 3) ? '\n' : ' ');
      }
    }
  }
  check_written(out, path);
}

std::vector<std::uint32_t> read_label_values(const std::filesystem::path& path) {
  const auto bytes = read_bytes(path);
  if (bytes.size() % 4 != 0) {
    throw FormatError(path.string() + ": truncated label at byte offset " +
                      std::to_string(bytes.size() / 4 * 4));
  }
  std::vector<std::uint32_t> labels(bytes.size() / 4);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    labels[i] = load_u32le(bytes.data() + 4 * i);
  }
  return labels;
}

void write_labels(const std::filesystem::path& path, const std::vector<std::uint32_t>& labels) {
  auto out = open_for_write(path, std::ios::binary);
  std::array<char, 4> word{};
  for (const std::uint32_t v : labels) {
    store_u32le(v, word);
    out.write(word.data(), 4);
  }
  check_written(out, path);
}

std::vector<std::uint8_t> moving_mask(const std::vector<std::uint32_t>& labels,
                                      const std::set<std::uint32_t>& moving_classes) {
  std::vector<std::uint8_t> mask(labels.size());
  std::transform(labels.begin(), labels.end(), mask.begin(), [&](std::uint32_t v) {
    return static_cast<std::uint8_t>(moving_classes.contains(v & 0xFFFFU) ? 1 : 0);
  });
  return mask;
}

std::vector<std::uint8_t> read_labels(const std::filesystem::path& path, std::size_t expected_count,
                                      const std::set<std::uint32_t>& moving_classes) {
  const auto labels = read_label_values(path);
  if (labels.size() != expected_count) {
    throw FormatError(path.string() + ": " + std::to_string(labels.size()) +
                      " labels for a scan of " + std::to_string(expected_count) + " points");
  }
  return moving_mask(labels, moving_classes);
}

void write_ply(const std::filesystem::path& path, const std::vector<MapPoint>& points) {
  auto out = open_for_write(path, std::ios::out);
  out << "ply\nformat ascii 1.0\nelement vertex " << points.size()
      << "\nproperty float x\nproperty float y\nproperty float z\nproperty uchar is_ground\n"
         "end_header\n";
  char buf[96];
  for (const MapPoint& p : points) {
    std::snprintf(buf, sizeof(buf), "%.4f %.4f %.4f %d\n", p.position.x(), p.position.y(),
                  p.position.z(), p.is_ground ? 1 : 0);
    out << buf;
  }
  check_written(out, path);
}

void write_map_ply(const RHMap& map, const std::filesystem::path& path) {
  write_ply(path, map.export_occupied_points());
}

std::vector<MapPoint> read_ply(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open " + path.string());
  }
  const auto fail = [&](std::size_t line_no, const std::string& what) {
    return FormatError(path.string() + ":" + std::to_string(line_no) + ": " + what);
  };
  std::string line;
  std::size_t line_no = 0;
  std::size_t count = 0;
  bool have_count = false;
  std::vector<std::string> properties;
  bool header_done = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line_no == 1) {
      if (line != "ply") throw fail(line_no, "missing ply magic");
      continue;
    }
    std::istringstream words(line);
    std::string keyword;
    words >> keyword;
    if (keyword == "format") {
      std::string kind;
      words >> kind;
      if (kind != "ascii") throw fail(line_no, "only ascii PLY is supported");
    } else if (keyword == "element") {
      std::string name;
      words >> name;
      if (name != "vertex") throw fail(line_no, "unexpected element " + name);
      if (!(words >> count)) throw fail(line_no, "bad vertex count");
      have_count = true;
    } else if (keyword == "property") {
      std::string type;
      std::string name;
      words >> type >> name;
      properties.push_back(name);
    } else if (keyword == "end_header") {
      header_done = true;
      break;
    } else if (keyword != "comment" && !keyword.empty()) {
      throw fail(line_no, "unexpected header line");
    }
  }
  if (!header_done || !have_count) {
    throw fail(line_no, "incomplete header");
  }
  const std::vector<std::string> expected{"x", "y", "z", "is_ground"};
  if (properties != expected) {
    throw fail(line_no, "expected properties x y z is_ground");
  }
  std::vector<MapPoint> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) {
      throw fail(line_no, "expected " + std::to_string(count) + " vertices, found " +
                              std::to_string(i));
    }
    ++line_no;
    std::istringstream fields(line);
    double x, y, z;
    int ground;
    if (!(fields >> x >> y >> z >> ground)) {
      throw fail(line_no, "malformed vertex");
    }
    points.push_back({{x, y, z}, ground != 0});
  }
  return points;
}

std::vector<std::filesystem::path> list_files(const std::filesystem::path& dir,
                                              const std::string& extension) {
  if (!std::filesystem::is_directory(dir)) {
    throw FormatError("not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == extension) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace rhmap
