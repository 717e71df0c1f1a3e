#pragma once

#include "conefaces/matrix.hpp"

#include <string>
#include <vector>

namespace conefaces::fixtures {

struct Fixture {
  std::string name;
  std::string description;
  ratmath::RatMatrix matrix;
};

inline ratmath::RatMatrix from_ints(const std::vector<std::vector<long>>& rows) {
  ratmath::RatMatrix m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

inline const std::vector<Fixture>& all() {
  static const std::vector<Fixture> list = {
      {"sec7-3x3", "rank-one idempotent: N(I-P) is a ray but the 1-faces are not a chain",
       from_ints({{1, 1, 1}, {0, 0, 0}, {0, 0, 0}})},
      {"sec7-4x4-nilpotent", "nilpotent of index 3 with a two-dimensional kernel",
       from_ints({{0, 1, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 1}, {0, 0, 0, 0}})},
      {"ex7.3", "three classes forming a chain, middle class basic",
       from_ints({{0, 0, 0, 0}, {1, 1, 1, 0}, {1, 1, 2, 0}, {1, 1, 1, 0}})},
      {"sec4-2x2", "idempotent [[1,1],[0,0]]", from_ints({{1, 1}, {0, 0}})},
  };
  return list;
}

inline const Fixture& by_name(const std::string& name) {
  for (const auto& f : all())
    if (f.name == name) return f;
  std::string known;
  for (const auto& f : all()) known += (known.empty() ? "" : ", ") + f.name;
  throw InputError("unknown fixture '" + name + "' (known: " + known + ")");
}

} // namespace conefaces::fixtures
