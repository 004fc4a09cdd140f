#include "korteweg/report.hpp"

#include <algorithm>

namespace korteweg {

double ResidualReport::max_l2() const {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, r.l2);
  return m;
}

double ResidualReport::max_max_abs() const {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, r.max_abs);
  return m;
}

double ResidualReport::worst_relative() const {
  return data_norm > 0.0 ? max_l2() / data_norm : max_l2();
}

}  // namespace korteweg
