#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace test_support {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("hyperlasso_" + tag + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

  std::filesystem::path write(const std::string& name, const std::string& text) const {
    const auto file = path_ / name;
    std::ofstream(file) << text;
    return file;
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// The 12 icosahedron vertices, a spherical 5-design.
inline std::string icosahedron_points() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double r = std::sqrt(1.0 + phi * phi);
  std::string out = "# icosahedron\n";
  const auto emit = [&](double x, double y, double z) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", x / r, y / r, z / r);
    out += buf;
  };
  for (double s1 : {-1.0, 1.0}) {
    for (double s2 : {-1.0, 1.0}) {
      emit(0, s1, s2 * phi);
      emit(s1, s2 * phi, 0);
      emit(s2 * phi, 0, s1);
    }
  }
  return out;
}

}  // namespace test_support
