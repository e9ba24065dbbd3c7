#include "speclat/examples.hpp"

#include <string>

#include "speclat/errors.hpp"

namespace speclat {

namespace {

IntVector point(std::initializer_list<long> coords) {
  IntVector v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (long c : coords) v(i++) = c;
  return v;
}

}  // namespace

WeightedPointSet chebyshev_points() {
  return WeightedPointSet(1, {{point({-1}), 1}, {point({1}), 1}});
}

WeightedPointSet honeycomb_points() {
  return WeightedPointSet(2, {{point({1, 0}), 1}, {point({0, 1}), 1}, {point({-1, -1}), 1}});
}

IntMatrix honeycomb_symmetric_basis() {
  IntMatrix b(2, 2);
  b << 2, 1, 1, 2;
  return b;
}

WeightedPointSet builtin_example(std::string_view id) {
  if (id == "chebyshev") return chebyshev_points();
  if (id == "honeycomb") return honeycomb_points();
  throw InvalidInput("unknown example id '" + std::string(id) + "'");
}

}  // namespace speclat
