#include "io_util.hpp"

#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <system_error>
#include <unistd.h>

#include "error.hpp"

namespace emdalign {

void atomic_write(const std::string& path,
                  const std::function<void(std::ostream&)>& writer) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    try {
      writer(out);
      out.flush();
      if (!out) throw IoError("write to '" + tmp.string() + "' failed");
    } catch (...) {
      out.close();
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw;
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot rename into '" + path + "': " + ec.message());
  }
}

namespace {

template <typename T>
std::string to_chars_shortest(T value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), end);
}

}  // namespace

std::string shortest_repr(double value) { return to_chars_shortest(value); }
std::string shortest_repr(float value) { return to_chars_shortest(value); }

}  // namespace emdalign
