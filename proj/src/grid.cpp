#include "charsum/grid.hpp"

namespace charsum {

GridFunction make_grid(const FieldTower& t, int degree, int k, std::uint64_t order) {
  GridFunction f;
  f.degree = degree;
  f.k = k;
  f.side = t.field_size(degree);
  f.order = order;
  std::size_t n = 1;
  for (int i = 0; i < k; ++i) n *= f.side;
  f.values.assign(n, CycloValue::integer(0, order));
  return f;
}

FieldElement grid_coordinate(const FieldTower& t, int degree, std::uint64_t idx) {
  return idx == 0 ? t.zero(degree) : t.exp(degree, idx - 1);
}

std::uint64_t grid_index(const FieldTower& t, FieldElement x) {
  return x.is_zero() ? 0 : t.discrete_log(x) + 1;
}

std::vector<std::uint64_t> grid_unpack(const GridFunction& f, std::size_t point) {
  std::vector<std::uint64_t> c(static_cast<std::size_t>(f.k));
  for (int i = f.k - 1; i >= 0; --i) {
    c[static_cast<std::size_t>(i)] = point % f.side;
    point /= f.side;
  }
  return c;
}

std::size_t grid_pack(const GridFunction& f, const std::vector<std::uint64_t>& coords) {
  std::size_t idx = 0;
  for (auto c : coords) idx = idx * f.side + c;
  return idx;
}

std::vector<FieldElement> grid_point(const FieldTower& t, const GridFunction& f, std::size_t point) {
  std::vector<FieldElement> out;
  for (auto c : grid_unpack(f, point)) out.push_back(grid_coordinate(t, f.degree, c));
  return out;
}

}  // namespace charsum
