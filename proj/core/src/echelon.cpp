#include "hilbert/echelon.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hilbert/errors.hpp"

namespace hilbert {

namespace {

// Once this many lanes are queued, a linear sweep beats the heap.
std::size_t heap_limit(std::size_t columns) { return std::max<std::size_t>(64, columns / 16); }

}  // namespace

RowEchelon::RowEchelon(const PrimeField& field, std::size_t columns, Tail tail)
    : field_(field), tail_(tail), pivot_of_column_(columns, -1), acc_(columns, 0), queued_(columns, 0) {
  if (columns >= std::numeric_limits<std::uint32_t>::max()) {
    throw ResourceError("matrix has too many columns");
  }
  const std::uint64_t pm1 = field_.prime() - 1;
  const std::uint64_t square = std::max<std::uint64_t>(pm1 * pm1, 1);
  max_adds_ = (std::numeric_limits<std::uint64_t>::max() - (std::uint64_t{1} << 40)) / square;
}

std::vector<std::uint32_t> RowEchelon::pivot_columns() const {
  std::vector<std::uint32_t> out;
  out.reserve(rows_.size());
  for (std::size_t c = 0; c < pivot_of_column_.size(); ++c) {
    if (pivot_of_column_[c] >= 0) out.push_back(static_cast<std::uint32_t>(c));
  }
  return out;
}

void RowEchelon::touch(std::uint32_t column) {
  max_touched_ = std::max(max_touched_, column);
  if (linear_ || queued_[column]) return;
  queued_[column] = 1;
  heap_.push_back(column);
  std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
}

void RowEchelon::subtract_row(const StoredRow& row, std::uint32_t multiplier) {
  const std::uint64_t m = multiplier;
  if (row.dense) {
    const std::size_t len = row.values.size();
    std::uint64_t* lane = acc_.data() + row.start;
    const std::uint32_t* v = row.values.data();
    // Entry 0 is the pivot, which the caller has already cleared.
    for (std::size_t k = 1; k < len; ++k) lane[k] += m * v[k];
    max_touched_ = std::max(max_touched_, static_cast<std::uint32_t>(row.start + len - 1));
    if (!linear_) {
      linear_ = true;
      for (auto c : heap_) queued_[c] = 0;
      heap_.clear();
    }
  } else {
    for (std::size_t k = 1; k < row.columns.size(); ++k) {
      const std::uint32_t c = row.columns[k];
      if (acc_[c] == 0) touch(c);
      acc_[c] += m * row.values[k];
    }
    if (!linear_ && heap_.size() > heap_limit(acc_.size())) {
      linear_ = true;
      for (auto c : heap_) queued_[c] = 0;
      heap_.clear();
    }
  }
  if (++adds_since_reduce_ >= max_adds_) {
    const std::uint32_t p = field_.prime();
    for (std::size_t c = row.pivot; c <= max_touched_; ++c) acc_[c] %= p;
    adds_since_reduce_ = 0;
  }
}

std::vector<MatrixEntry> RowEchelon::reduce_accumulator(std::uint32_t first, bool stop_after_lead) {
  const std::uint32_t p = field_.prime();
  std::vector<MatrixEntry> out;
  bool have_lead = false;
  std::uint64_t linear_from = first;

  auto process = [&](std::uint32_t c) {
    const std::uint64_t raw = acc_[c];
    if (raw == 0) return;
    acc_[c] = 0;
    const auto v = static_cast<std::uint32_t>(raw % p);
    if (v == 0) return;
    const std::int32_t r = pivot_of_column_[c];
    if (r >= 0 && !(stop_after_lead && have_lead)) {
      const bool was_linear = linear_;
      subtract_row(rows_[static_cast<std::size_t>(r)], p - v);
      if (!was_linear && linear_) linear_from = static_cast<std::uint64_t>(c) + 1;
      return;
    }
    have_lead = true;
    out.push_back({c, v});
  };

  while (!linear_ && !heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>());
    const std::uint32_t c = heap_.back();
    heap_.pop_back();
    queued_[c] = 0;
    process(c);
  }
  if (linear_) {
    for (std::uint64_t c = linear_from; c <= max_touched_; ++c) process(static_cast<std::uint32_t>(c));
  }
  linear_ = false;
  max_touched_ = 0;
  adds_since_reduce_ = 0;
  return out;
}

RowEchelon::StoredRow RowEchelon::make_row(std::vector<MatrixEntry> entries) const {
  StoredRow row;
  row.pivot = entries.front().column;
  const std::uint32_t scale = field_.inv(entries.front().value);
  const std::size_t span = entries.back().column - row.pivot + 1;
  if (entries.size() * 4 > span) {
    row.dense = true;
    row.start = row.pivot;
    row.values.assign(span, 0);
    for (const auto& e : entries) row.values[e.column - row.pivot] = field_.mul(e.value, scale);
  } else {
    row.columns.reserve(entries.size());
    row.values.reserve(entries.size());
    for (const auto& e : entries) {
      row.columns.push_back(e.column);
      row.values.push_back(field_.mul(e.value, scale));
    }
  }
  return row;
}

bool RowEchelon::insert(std::span<const MatrixEntry> row) {
  const std::uint32_t p = field_.prime();
  std::uint32_t first = std::numeric_limits<std::uint32_t>::max();
  for (const auto& e : row) {
    if (e.column >= acc_.size()) throw std::out_of_range("matrix entry column out of range");
    const std::uint32_t v = e.value % p;
    if (v == 0) continue;
    if (acc_[e.column] == 0) touch(e.column);
    acc_[e.column] += v;
    first = std::min(first, e.column);
  }
  if (first == std::numeric_limits<std::uint32_t>::max()) return false;
  if (!linear_ && heap_.size() > heap_limit(acc_.size())) {
    linear_ = true;
    for (auto c : heap_) queued_[c] = 0;
    heap_.clear();
  }
  auto entries = reduce_accumulator(first, tail_ == Tail::keep);
  if (entries.empty()) return false;
  rows_.push_back(make_row(std::move(entries)));
  pivot_of_column_[rows_.back().pivot] = static_cast<std::int32_t>(rows_.size() - 1);
  return true;
}

std::vector<MatrixEntry> RowEchelon::row_with_pivot(std::uint32_t column) const {
  const std::int32_t r = pivot_of_column_.at(column);
  if (r < 0) throw std::invalid_argument("column is not a pivot column");
  const StoredRow& row = rows_[static_cast<std::size_t>(r)];
  std::vector<MatrixEntry> out;
  if (row.dense) {
    for (std::size_t k = 0; k < row.values.size(); ++k) {
      if (row.values[k] != 0) out.push_back({static_cast<std::uint32_t>(row.start + k), row.values[k]});
    }
  } else {
    for (std::size_t k = 0; k < row.columns.size(); ++k) out.push_back({row.columns[k], row.values[k]});
  }
  return out;
}

void RowEchelon::reduce_fully() {
  std::vector<std::size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rows_[a].pivot > rows_[b].pivot; });
  for (std::size_t idx : order) {
    const StoredRow& row = rows_[idx];
    const std::uint32_t pivot = row.pivot;
    auto entries = row_with_pivot(pivot);
    if (entries.size() == 1) continue;
    bool any_pivot = false;
    for (std::size_t k = 1; k < entries.size() && !any_pivot; ++k) any_pivot = is_pivot(entries[k].column);
    if (!any_pivot) continue;
    for (std::size_t k = 1; k < entries.size(); ++k) {
      if (acc_[entries[k].column] == 0) touch(entries[k].column);
      acc_[entries[k].column] += entries[k].value;
    }
    if (!linear_ && heap_.size() > heap_limit(acc_.size())) {
      linear_ = true;
      for (auto c : heap_) queued_[c] = 0;
      heap_.clear();
    }
    auto tail = reduce_accumulator(pivot + 1, false);
    std::vector<MatrixEntry> rebuilt;
    rebuilt.reserve(tail.size() + 1);
    rebuilt.push_back({pivot, 1});
    rebuilt.insert(rebuilt.end(), tail.begin(), tail.end());
    rows_[idx] = make_row(std::move(rebuilt));
  }
}

}  // namespace hilbert
