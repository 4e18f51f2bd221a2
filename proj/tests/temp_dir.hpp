#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace testutil {

// Unique scratch directory removed on scope exit.
struct TempDir {
  std::filesystem::path path;

  TempDir() {
    static std::atomic<std::uint64_t> counter{0};
    std::random_device rd;
    auto tag = std::to_string(rd()) + "_" + std::to_string(counter.fetch_add(1));
    path = std::filesystem::temp_directory_path() / ("groupdyn_test_" + tag);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path file(const std::string& name, const std::string& content) const {
    auto p = path / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }
};

inline std::string read_all(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace testutil
