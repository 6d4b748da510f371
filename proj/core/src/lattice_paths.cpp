#include "hilbert/lattice_paths.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hilbert {

Integer lattice_path_count(int n, int s) {
  if (s < 1) throw std::invalid_argument("s must be positive");
  const int width = n + 2 - 2 * s;
  if (width < 0) return 0;
  std::vector<Integer> ways(static_cast<std::size_t>(width) + 1);
  ways[0] = 1;
  for (int step = 0; step < n + 2; ++step) {
    std::vector<Integer> next(ways.size());
    for (int x = 0; x <= width; ++x) {
      const auto& w = ways[static_cast<std::size_t>(x)];
      if (w == 0) continue;
      if (x + 1 <= width) next[static_cast<std::size_t>(x) + 1] += w;
      if (x - 1 >= 0) next[static_cast<std::size_t>(x) - 1] += w;
    }
    ways = std::move(next);
  }
  return ways[static_cast<std::size_t>(width)];
}

Integer lattice_path_count_brute_force(int n, int s) {
  if (s < 1) throw std::invalid_argument("s must be positive");
  if (n > 24) throw std::invalid_argument("brute force is limited to n <= 24");
  const int width = n + 2 - 2 * s;
  if (width < 0) return 0;
  const int steps = n + 2;
  unsigned long count = 0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << steps); ++mask) {
    int x = 0;
    bool inside = true;
    for (int i = 0; i < steps && inside; ++i) {
      x += (mask >> i) & 1u ? 1 : -1;
      inside = x >= 0 && x <= width;
    }
    if (inside && x == width) ++count;
  }
  return Integer(count);
}

TruncatedSeries paths_conjecture_series(int n, int precision) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  const int last = (n + 2) / 2;
  if (precision < 0) precision = last + 1;
  std::vector<Integer> coeffs(static_cast<std::size_t>(precision) + 1);
  coeffs[0] = 1;
  for (int s = 1; s <= std::min(last, precision); ++s) coeffs[static_cast<std::size_t>(s)] = lattice_path_count(n, s);
  return TruncatedSeries(std::move(coeffs));
}

}  // namespace hilbert
