#pragma once

#include <cstdint>
#include <vector>

#include "charsum/cyclotomic.hpp"
#include "charsum/field_tower.hpp"

namespace charsum {

// Function F_{q^d}^k -> Z[zeta_M].  Coordinate index 0 is the zero element and
// index 1 + j is g_d^j; points are stored row-major, first coordinate slowest.
struct GridFunction {
  int degree = 1;
  int k = 0;
  std::uint64_t side = 0;   // q^d
  std::uint64_t order = 1;  // common order of all values
  std::vector<CycloValue> values;

  std::size_t size() const { return values.size(); }
  const CycloValue& at(std::size_t i) const { return values[i]; }
};

GridFunction make_grid(const FieldTower& t, int degree, int k, std::uint64_t order);
FieldElement grid_coordinate(const FieldTower& t, int degree, std::uint64_t idx);
std::uint64_t grid_index(const FieldTower& t, FieldElement x);
std::vector<std::uint64_t> grid_unpack(const GridFunction& f, std::size_t point);
std::size_t grid_pack(const GridFunction& f, const std::vector<std::uint64_t>& coords);
std::vector<FieldElement> grid_point(const FieldTower& t, const GridFunction& f, std::size_t point);

}  // namespace charsum
