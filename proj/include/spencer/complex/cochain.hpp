#pragma once

#include <string>
#include <vector>

#include "spencer/core/reduce.hpp"
#include "spencer/core/sparse.hpp"

namespace spencer::complex {

/* A finite cochain complex of finite-dimensional rational spaces:
 * C^0 -> C^1 -> ... -> C^top, with d[q] : C^q -> C^{q+1}. */
struct CochainComplex {
  std::string name;
  std::vector<int> dims;
  std::vector<SparseMat> d; /* size dims.size()-1 */

  int top() const { return static_cast<int>(dims.size()) - 1; }

  void validate() const {
    if (dims.empty()) throw invariant_violation("complex: empty");
    if (d.size() + 1 != dims.size())
      throw invariant_violation("complex: differential count mismatch");
    for (std::size_t q = 0; q + 1 < dims.size(); ++q)
      if (d[q].cols() != dims[q] || d[q].rows() != dims[q + 1])
        throw invariant_violation("complex: differential shape mismatch at degree " +
                                  std::to_string(q));
  }

  bool is_nilpotent(int* fail_degree = nullptr) const {
    for (std::size_t q = 0; q + 1 < d.size(); ++q)
      if (!d[q + 1].compose(d[q]).is_zero()) {
        if (fail_degree) *fail_degree = static_cast<int>(q);
        return false;
      }
    return true;
  }
};

struct CohomologyResult {
  std::vector<int> betti;
  std::vector<int> rank_d; /* rank of d[q], q = 0..top-1 */
  std::vector<std::vector<SparseVec>> representatives;
  long long euler = 0; /* alternating sum, equal for dims and betti */
};

/* Kernel/image quotients degree by degree.  Representatives are fully
 * reduced against the image columns, pivot normalized to 1, so the
 * output is deterministic. */
inline CohomologyResult cohomology(const CochainComplex& C) {
  C.validate();
  int bad = -1;
  if (!C.is_nilpotent(&bad))
    throw input_error("cohomology: complex is not nilpotent, d.d != 0 at degree " +
                      std::to_string(bad));

  const int top = C.top();
  CohomologyResult res;
  res.betti.assign(top + 1, 0);
  res.rank_d.assign(top, 0);
  res.representatives.assign(top + 1, {});

  for (int q = 0; q <= top; ++q) {
    /* cocycles */
    std::vector<SparseVec> kernel;
    if (q < top) {
      kernel = sparse_kernel(C.d[q]);
    } else {
      for (int j = 0; j < C.dims[q]; ++j) kernel.push_back({{j, Rat(1)}});
    }
    /* coboundaries */
    ColumnReducer red(C.dims[q]);
    if (q > 0) {
      for (int j = 0; j < C.d[q - 1].cols(); ++j) red.add(C.d[q - 1].col(j));
      res.rank_d[q - 1] = red.rank();
    }
    for (auto& kv : kernel) {
      SparseVec r = red.residue(kv);
      if (r.empty()) continue;
      sv_scale(r, Rat(1) / r.front().second);
      red.add(r);
      res.representatives[q].push_back(std::move(r));
    }
    res.betti[q] = static_cast<int>(res.representatives[q].size());
  }

  long long ed = 0, eb = 0;
  for (int q = 0; q <= top; ++q) {
    ed += (q % 2 ? -1 : 1) * static_cast<long long>(C.dims[q]);
    eb += (q % 2 ? -1 : 1) * static_cast<long long>(res.betti[q]);
  }
  if (ed != eb)
    throw invariant_violation("cohomology: Euler characteristic mismatch");
  res.euler = eb;
  return res;
}

}  // namespace spencer::complex
