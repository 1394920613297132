#pragma once

#include <optional>
#include <vector>

#include "stokesdd/decomposition.hpp"
#include "stokesdd/pcg.hpp"
#include "stokesdd/rgdsw.hpp"
#include "stokesdd/sparse_ldlt.hpp"
#include "stokesdd/sparse_matrix.hpp"

namespace stokesdd {

/// Additive overlapping Schwarz preconditioner
///   M^{-1} = phi A0^{-1} phi^T + sum_i R_i^T A_i^{-1} R_i
/// with exact subdomain and coarse solves. Passing no coarse basis drops the
/// first term (one-level method). Summation order is fixed: coarse first,
/// then subdomains ascending, so apply is reproducible for any thread count.
class SchwarzPreconditioner {
 public:
  /// Factors A restricted to every overlap set (and A0 when given). Subdomain
  /// factorizations run in parallel. `free_coords` (one point per free dof)
  /// enables the nested-dissection ordering for the local solves.
  SchwarzPreconditioner(const SparseMatrix& A_free, const Decomposition& dec,
                        const CoarseBasis* coarse, int nthreads,
                        const std::vector<Vec3>* free_coords = nullptr);

  /// Upgrades a one-level instance in place: factors A0 and enables the
  /// coarse term, reusing the existing subdomain factors.
  void attach_coarse(const CoarseBasis& coarse);

  /// z = M^{-1} r. One caller at a time per instance (shared scratch).
  void apply(const std::vector<double>& r, std::vector<double>& z) const;
  std::vector<double> apply(const std::vector<double>& r) const;
  PrecondApply callback() const;  // binds this; keep the instance alive

  bool two_level() const { return coarse_factor_.has_value(); }
  index_t coarse_dim() const { return phi_.ncols; }
  index_t dim() const { return n_; }

 private:
  index_t n_ = 0;
  int nthreads_ = 1;
  std::vector<std::vector<index_t>> sets_;
  std::vector<SparseLdlt> local_factors_;
  SparseMatrix phi_;
  std::optional<SparseLdlt> coarse_factor_;
  mutable std::vector<std::vector<double>> scratch_;
};

}  // namespace stokesdd
