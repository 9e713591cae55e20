// Regenerates data/synthetic_sensex.csv: four trading years of a drifting
// random-walk index series shaped like a daily equity close (levels are
// integrated of order one, so the first differences are stationary).

#include <cstdio>
#include <fstream>
#include <iostream>

#include "arstat/rng.hpp"

int main(int argc, char** argv) {
  const char* path = argc > 1 ? argv[1] : "data/synthetic_sensex.csv";
  const int n_days = 1008;          // ~252 trading days x 4 years
  const double start_level = 30000.0;
  const double daily_drift = 8.0;
  const double daily_sd = 150.0;
  const std::uint64_t seed = 20170102;

  std::ofstream out(path);
  if (!out) {
    std::cerr << "make_fixture: cannot open " << path << " for writing\n";
    return 1;
  }
  arstat::NoiseGenerator noise(seed);
  out << "day,close\n";
  double level = start_level;
  char buffer[40];
  for (int t = 0; t < n_days; ++t) {
    level += daily_drift + daily_sd * noise.standard_normal();
    std::snprintf(buffer, sizeof buffer, "%.17g", level);
    out << t << ',' << buffer << '\n';
  }
  std::cout << "wrote " << n_days << " rows to " << path << " (seed " << seed << ")\n";
  return 0;
}
