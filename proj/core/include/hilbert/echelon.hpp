#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hilbert/field.hpp"

namespace hilbert {

struct MatrixEntry {
  std::uint32_t column;
  std::uint32_t value;
};

/// Incremental row echelon form over F_p.
///
/// Rows are inserted one at a time and reduced against the pivots found so
/// far; a row that survives becomes a new pivot row whose pivot is its
/// leftmost nonzero column. The pivot column set is therefore the set of
/// leading positions of the row space, independent of insertion order.
///
/// Pivot rows are stored sparse or as a dense segment, whichever is smaller.
/// Reduction accumulates into 64-bit lanes and only reduces modulo p when a
/// value is inspected.
class RowEchelon {
 public:
  enum class Tail {
    /// Reduce a new row against every known pivot (needed for reduce_fully).
    reduce,
    /// Stop reducing once the leading column is found; enough for ranks and pivots.
    keep,
  };

  RowEchelon(const PrimeField& field, std::size_t columns, Tail tail = Tail::reduce);

  std::size_t columns() const { return pivot_of_column_.size(); }
  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(std::uint32_t column) const { return pivot_of_column_[column] >= 0; }
  /// Pivot columns in increasing order.
  std::vector<std::uint32_t> pivot_columns() const;

  /// Duplicate columns in `row` are summed. Returns true when the rank grows.
  bool insert(std::span<const MatrixEntry> row);

  /// Brings the stored rows to reduced row echelon form (every pivot column is
  /// zero in all other rows, pivot entries are 1).
  void reduce_fully();

  /// Entries of the pivot row whose pivot sits in `column`, pivot included,
  /// in increasing column order.
  std::vector<MatrixEntry> row_with_pivot(std::uint32_t column) const;

 private:
  struct StoredRow {
    std::uint32_t pivot = 0;
    bool dense = false;
    std::uint32_t start = 0;             // first column of a dense segment
    std::vector<std::uint32_t> columns;  // sparse only
    std::vector<std::uint32_t> values;
  };

  // Reduces the accumulator (already scattered, nonzero lanes between
  // `first` and max_touched_) and returns the surviving entries. With
  // `stop_after_lead`, lanes after the first surviving one are not reduced.
  std::vector<MatrixEntry> reduce_accumulator(std::uint32_t first, bool stop_after_lead);
  void touch(std::uint32_t column);
  void subtract_row(const StoredRow& row, std::uint32_t multiplier);
  StoredRow make_row(std::vector<MatrixEntry> entries) const;

  PrimeField field_;
  Tail tail_;
  std::vector<StoredRow> rows_;
  std::vector<std::int32_t> pivot_of_column_;

  // Scratch state for reduce_accumulator.
  std::vector<std::uint64_t> acc_;
  std::vector<std::uint8_t> queued_;
  std::vector<std::uint32_t> heap_;
  std::uint32_t max_touched_ = 0;
  bool linear_ = false;
  std::uint64_t adds_since_reduce_ = 0;
  std::uint64_t max_adds_;
};

}  // namespace hilbert
