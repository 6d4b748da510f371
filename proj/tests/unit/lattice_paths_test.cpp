#include <gtest/gtest.h>

#include "hilbert/lattice_paths.hpp"

using namespace hilbert;

TEST(LatticePaths, DynamicProgrammingMatchesEnumeration) {
  for (int n = 1; n <= 12; ++n) {
    for (int s = 1; 2 * s <= n + 2; ++s) {
      EXPECT_EQ(lattice_path_count(n, s), lattice_path_count_brute_force(n, s)) << n << " " << s;
    }
  }
}

TEST(LatticePaths, HandCounts) {
  // s = 1: a single left step, anywhere but first.
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(lattice_path_count(n, 1), n);
  // Width 0 leaves no room to move.
  EXPECT_EQ(lattice_path_count(4, 3), 0);
  // Negative width: no paths.
  EXPECT_EQ(lattice_path_count(2, 3), 0);
  EXPECT_THROW(lattice_path_count(3, 0), std::invalid_argument);
}

TEST(LatticePaths, SeriesForFiveVariables) {
  EXPECT_EQ(paths_conjecture_series(5).to_longs(), (std::vector<long>{1, 5, 8, 1, 0}));
  EXPECT_EQ(paths_conjecture_series(5, 5).to_longs(), (std::vector<long>{1, 5, 8, 1, 0, 0}));
}
