#pragma once

#include <functional>
#include <iosfwd>
#include <string>

namespace emdalign {

// Writes through a sibling temporary file and renames it into place, so a
// failed write never leaves a partial file at `path`.
void atomic_write(const std::string& path,
                  const std::function<void(std::ostream&)>& writer);

// Shortest decimal form that parses back to the same value.
std::string shortest_repr(double value);
std::string shortest_repr(float value);

}  // namespace emdalign
