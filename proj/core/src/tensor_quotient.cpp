// Quotients of the tensor algebra T = k<x_1..x_n> by a two-sided ideal I.
//
// Since I_k = I_{k-1} V + sum_i T_{k-d_i} f_i, the degree-k piece of A = T/I
// is the cokernel
//
//   A_k = (A_{k-1} (x) V) / span{ u f_i : u a basis element of A_{k-d_i} },
//
// where u f_i is pushed into A_{k-1} (x) V through the right multiplication
// maps R_a : A_j -> A_{j+1}. Each level keeps the normal form of every column
// (u, a) of A_{j-1} (x) V in the basis of A_j, which is exactly R_a(e_u).

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "hilbert/echelon.hpp"
#include "hilbert/engine.hpp"
#include "hilbert/errors.hpp"

namespace hilbert {

namespace {

using SparseVector = std::vector<MatrixEntry>;  // column = basis index

struct Level {
  std::size_t dim = 0;
  // Normal form of column u * n + a of A_{j-1} (x) V.
  std::vector<std::int32_t> unit;  // basis index, or -1 for pivot columns
  std::vector<std::int32_t> slot;  // index into combos for pivot columns
  std::vector<SparseVector> combos;
};

// Words of a form arranged as a trie so shared prefixes are pushed once.
struct TrieNode {
  std::map<std::uint8_t, TrieNode> children;
  std::vector<std::pair<std::uint8_t, std::uint32_t>> finals;  // last letter, coefficient
};

class TensorQuotient {
 public:
  TensorQuotient(int n, const PrimeField& field, std::size_t cap) : n_(static_cast<std::uint32_t>(n)), field_(field), cap_(cap) {
    Level zero;
    zero.dim = 1;
    levels_.push_back(std::move(zero));
  }

  std::size_t add_level(std::span<const Form> generators, std::span<const TrieNode> tries, bool last) {
    const std::size_t k = levels_.size();
    const std::size_t prev = levels_.back().dim;
    const std::size_t columns = prev * n_;
    if (columns > cap_) {
      throw ResourceError("tensor quotient in degree " + std::to_string(k) + " needs " + std::to_string(columns) +
                          " columns, above the cap of " + std::to_string(cap_));
    }
    if (columns == 0) {
      levels_.push_back(Level{});
      return 0;
    }

    // Relation rows, cheapest first.
    struct Job {
      std::size_t estimate;
      std::size_t generator;
      std::uint32_t u;
    };
    std::vector<Job> jobs;
    for (std::size_t g = 0; g < generators.size(); ++g) {
      const int d = generators[g].grade[0];
      if (generators[g].is_zero() || static_cast<std::size_t>(d) > k) continue;
      const Level& source = levels_[k - static_cast<std::size_t>(d)];
      for (std::uint32_t u = 0; u < source.dim; ++u) {
        std::size_t estimate = 0;
        if (d == 1) {
          estimate = tries[g].finals.size();
        } else {
          const Level& next = levels_[k - static_cast<std::size_t>(d) + 1];
          for (const auto& [a, child] : tries[g].children) {
            const std::size_t col = static_cast<std::size_t>(u) * n_ + a;
            estimate += next.unit[col] >= 0 ? 1 : next.combos[static_cast<std::size_t>(next.slot[col])].size();
          }
        }
        jobs.push_back({estimate, g, u});
      }
    }
    std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.estimate < b.estimate; });

    RowEchelon echelon(field_, columns, last ? RowEchelon::Tail::keep : RowEchelon::Tail::reduce);
    SparseVector row;
    for (const auto& job : jobs) {
      if (echelon.rank() == columns) break;
      const int d = generators[job.generator].grade[0];
      const std::size_t start = k - static_cast<std::size_t>(d);
      build_row(tries[job.generator], start, SparseVector{{job.u, 1}}, row);
      if (!row.empty()) echelon.insert(row);
    }

    Level level;
    level.dim = columns - echelon.rank();
    if (!last) {
      echelon.reduce_fully();
      level.unit.assign(columns, -1);
      level.slot.assign(columns, -1);
      std::vector<std::int32_t> basis_of(columns, -1);
      std::int32_t next = 0;
      for (std::size_t c = 0; c < columns; ++c) {
        if (!echelon.is_pivot(static_cast<std::uint32_t>(c))) basis_of[c] = next++;
      }
      for (std::size_t c = 0; c < columns; ++c) {
        if (basis_of[c] >= 0) {
          level.unit[c] = basis_of[c];
          continue;
        }
        // x_c = -(rest of its reduced row), written in basis coordinates.
        SparseVector combo;
        const auto entries = echelon.row_with_pivot(static_cast<std::uint32_t>(c));
        for (std::size_t e = 1; e < entries.size(); ++e) {
          combo.push_back({static_cast<std::uint32_t>(basis_of[entries[e].column]), field_.neg(entries[e].value)});
        }
        level.slot[c] = static_cast<std::int32_t>(level.combos.size());
        level.combos.push_back(std::move(combo));
      }
    }
    levels_.push_back(std::move(level));
    return levels_.back().dim;
  }

 private:
  struct Accumulator {
    std::vector<std::uint64_t> lanes;
    std::vector<std::uint32_t> touched;
  };

  // R_a on a vector of A_j, result in A_{j+1}.
  SparseVector right_multiply(const SparseVector& v, std::size_t j, std::uint8_t a) {
    const Level& next = levels_[j + 1];
    SparseVector out;
    for (const auto& e : v) {
      const std::size_t col = static_cast<std::size_t>(e.column) * n_ + a;
      if (next.unit[col] >= 0) {
        accumulate(vector_, static_cast<std::uint32_t>(next.unit[col]), e.value);
      } else {
        for (const auto& t : next.combos[static_cast<std::size_t>(next.slot[col])]) {
          accumulate(vector_, t.column, field_.mul(e.value, t.value));
        }
      }
    }
    drain(vector_, out);
    return out;
  }

  // Pushes e_u * f into A_{k-1} (x) V, with e_u in A_j, j = k - deg f.
  void build_row(const TrieNode& root, std::size_t j, const SparseVector& start, SparseVector& row) {
    row.clear();
    collect(root, j, start);
    drain(row_, row);
  }

  void collect(const TrieNode& node, std::size_t j, const SparseVector& v) {
    for (const auto& [a, c] : node.finals) {
      for (const auto& e : v) accumulate(row_, e.column * n_ + a, field_.mul(e.value, c));
    }
    for (const auto& [a, child] : node.children) collect(child, j + 1, right_multiply(v, j, a));
  }

  void accumulate(Accumulator& acc, std::uint32_t c, std::uint32_t value) {
    if (acc.lanes.size() <= c) acc.lanes.resize(static_cast<std::size_t>(c) + 1, 0);
    std::uint64_t& lane = acc.lanes[c];
    if (lane == 0) acc.touched.push_back(c);
    // Stored as residue + p so a touched lane is never zero.
    lane = (lane + value) % field_.prime() + field_.prime();
  }

  void drain(Accumulator& acc, SparseVector& out) {
    std::sort(acc.touched.begin(), acc.touched.end());
    for (auto c : acc.touched) {
      const auto v = static_cast<std::uint32_t>(acc.lanes[c] % field_.prime());
      acc.lanes[c] = 0;
      if (v != 0) out.push_back({c, v});
    }
    acc.touched.clear();
  }

  std::uint32_t n_;
  PrimeField field_;
  std::size_t cap_;
  std::vector<Level> levels_;
  Accumulator row_;
  Accumulator vector_;
};

TrieNode build_trie(const Form& f) {
  TrieNode root;
  for (const auto& [word, c] : f.terms) {
    TrieNode* node = &root;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) node = &node->children[word[i]];
    node->finals.emplace_back(word.back(), c);
  }
  return root;
}

}  // namespace

std::vector<std::size_t> tensor_quotient_dimensions(int n, std::span<const Form> generators, int max_degree,
                                                    const PrimeField& field, std::size_t column_cap) {
  if (n < 1) throw std::invalid_argument("tensor algebra needs n >= 1");
  std::vector<TrieNode> tries;
  for (const auto& f : generators) {
    if (f.grade.size() != 1 || (!f.is_zero() && f.grade[0] < 1)) {
      throw std::invalid_argument("tensor generators must have positive degree");
    }
    tries.push_back(f.is_zero() ? TrieNode{} : build_trie(f));
  }
  TensorQuotient quotient(n, field, column_cap);
  std::vector<std::size_t> dims{1};
  for (int k = 1; k <= max_degree; ++k) {
    if (dims.back() == 0) {
      dims.push_back(0);
      continue;
    }
    dims.push_back(quotient.add_level(generators, tries, k == max_degree));
  }
  return dims;
}

}  // namespace hilbert
