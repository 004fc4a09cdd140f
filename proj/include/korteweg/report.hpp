#pragma once

#include <string>
#include <vector>

namespace korteweg {

struct ResidualRow {
  std::string name;
  double max_abs = 0.0;
  double l2 = 0.0;
};

struct ResidualReport {
  std::vector<ResidualRow> rows;
  double data_norm = 0.0;  // discrete L2 norm of the data the rows are compared against

  double max_l2() const;
  double max_max_abs() const;
  // max row L2 / data_norm (the absolute value when data_norm is 0)
  double worst_relative() const;
};

}  // namespace korteweg
