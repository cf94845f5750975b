#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "spencer/core/sparse.hpp"

namespace spencer {

/* Incremental column reduction over the rationals.
 *
 * Columns are fed in a fixed order; each is reduced against the stored
 * pivot columns.  A pivot is always the topmost nonzero row of the
 * reduced column (the column-side mirror of leftmost-nonzero row
 * echelon), so the whole process is a pure function of the input order:
 * ranks, kernel vectors and the choice of quotient representatives are
 * reproducible down to the byte.
 *
 * Stored pivot columns have their pivot at the topmost entry, hence
 * eliminating row r only ever introduces entries below r and every
 * reduction terminates in one descending sweep.
 */
class ColumnReducer {
 public:
  explicit ColumnReducer(int rows, bool track = false)
      : rows_(rows), track_(track) {}

  struct Outcome {
    bool independent = false;
    /* When tracking and dependent: coefficients c (over the columns
     * added so far, by add-index) with sum_i c_i * column_i == 0 and
     * c_last == 1.  This is a kernel vector of the fed column set. */
    SparseVec dependency;
  };

  Outcome add(SparseVec v) {
    SparseVec combo;
    if (track_) combo.emplace_back(n_added_, Rat(1));
    reduce(v, track_ ? &combo : nullptr);
    ++n_added_;
    Outcome out;
    if (v.empty()) {
      out.independent = false;
      out.dependency = std::move(combo);
      return out;
    }
    /* normalize so the pivot entry is 1 */
    Rat inv = Rat(1) / v.front().second;
    sv_scale(v, inv);
    if (track_) sv_scale(combo, inv);
    const int prow = v.front().first;
    row_to_slot_[prow] = static_cast<int>(slots_.size());
    slots_.push_back(Slot{prow, std::move(v), std::move(combo)});
    out.independent = true;
    return out;
  }

  /* Residue of v after elimination; v itself is not added. */
  SparseVec residue(SparseVec v) const {
    reduce(v, nullptr);
    return v;
  }

  bool in_span(SparseVec v) const { return residue(std::move(v)).empty(); }

  int rank() const { return static_cast<int>(slots_.size()); }
  int added() const { return n_added_; }
  int rows() const { return rows_; }

 private:
  struct Slot {
    int pivot_row;
    SparseVec col;    /* pivot value 1, pivot at front */
    SparseVec combo;  /* col as combination of original added columns */
  };

  void reduce(SparseVec& v, SparseVec* combo) const {
    std::size_t i = 0;
    while (i < v.size()) {
      auto it = row_to_slot_.find(v[i].first);
      if (it == row_to_slot_.end()) {
        ++i;
        continue;
      }
      const Slot& s = slots_[it->second];
      Rat f = -v[i].second; /* pivot of s.col is 1 */
      sv_axpy(v, f, s.col);
      if (combo) sv_axpy(*combo, f, s.combo);
      /* entries above the eliminated pivot row are untouched; resume
       * scanning just below it */
      i = std::lower_bound(v.begin(), v.end(), s.pivot_row + 1,
                           [](const auto& e, int k) { return e.first < k; }) -
          v.begin();
    }
  }

  int rows_;
  bool track_;
  int n_added_ = 0;
  std::vector<Slot> slots_;
  std::unordered_map<int, int> row_to_slot_;
};

inline int sparse_rank(const SparseMat& m) {
  ColumnReducer red(m.rows());
  for (int j = 0; j < m.cols(); ++j) red.add(m.col(j));
  return red.rank();
}

/* Kernel basis as columns, deterministic (reduced against earlier
 * columns in index order). */
inline std::vector<SparseVec> sparse_kernel(const SparseMat& m) {
  ColumnReducer red(m.rows(), /*track=*/true);
  std::vector<SparseVec> kernel;
  for (int j = 0; j < m.cols(); ++j) {
    auto out = red.add(m.col(j));
    if (!out.independent) kernel.push_back(std::move(out.dependency));
  }
  return kernel;
}

}  // namespace spencer
