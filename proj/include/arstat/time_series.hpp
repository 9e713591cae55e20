#pragma once

#include <string>
#include <vector>

namespace arstat {

struct TimeSeries {
  std::vector<double> values;
  std::vector<std::string> labels;  // optional time index; empty or same length as values

  int size() const { return static_cast<int>(values.size()); }
  bool empty() const { return values.empty(); }
};

}  // namespace arstat
