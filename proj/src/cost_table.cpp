#include "deadline_bcast/cost_table.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dbc {

CostToGoTable::CostToGoTable(int l1max, int l2max, int tmax, std::vector<double> values)
    : l1max_(l1max), l2max_(l2max), tmax_(tmax), values_(std::move(values)) {
  const auto expected = static_cast<std::size_t>(l1max_ + 1) *
                        static_cast<std::size_t>(l2max_ + 1) *
                        static_cast<std::size_t>(tmax_ + 1);
  if (l1max_ < 0 || l2max_ < 0 || tmax_ < 0 || values_.size() != expected) {
    throw std::invalid_argument("cost table: value count does not match bounds");
  }
}

double CostToGoTable::at(int l1, int l2, int t) const {
  l1 = std::max(0, l1);  // "max{0, lambda - 1}" clamp
  l2 = std::max(0, l2);
  if (l1 > l1max_ || l2 > l2max_ || t < 0 || t > tmax_) {
    throw std::out_of_range("cost table: lookup (" + std::to_string(l1) + ", " +
                            std::to_string(l2) + ", " + std::to_string(t) + ") out of bounds");
  }
  return values_[(static_cast<std::size_t>(l1) * static_cast<std::size_t>(l2max_ + 1) +
                  static_cast<std::size_t>(l2)) *
                     static_cast<std::size_t>(tmax_ + 1) +
                 static_cast<std::size_t>(t)];
}

}  // namespace dbc
