#pragma once

// Lattice paths in a (n + 2 - 2s) x (n + 2) rectangle and the series they
// predict for an exterior algebra modulo two generic quadrics.

#include "hilbert/series.hpp"

namespace hilbert {

/// Paths of n + 2 steps (x, y) -> (x +- 1, y + 1) from (0, 0) to
/// (n + 2 - 2s, n + 2) that stay in 0 <= x <= n + 2 - 2s (walls included).
/// Zero when the width is negative. Requires s >= 1.
Integer lattice_path_count(int n, int s);

/// Same count by enumerating all 2^{n+2} step sequences; n <= 24.
Integer lattice_path_count_brute_force(int n, int s);

/// 1 + a(n,1) z + a(n,2) z^2 + ...; the default precision is the last degree
/// with a nonnegative width plus one.
TruncatedSeries paths_conjecture_series(int n, int precision = -1);

}  // namespace hilbert
