#include "stokesdd/schwarz.hpp"

#include <stdexcept>
#include <string>

#include "stokesdd/orderings.hpp"
#include "stokesdd/parallel.hpp"

namespace stokesdd {

SchwarzPreconditioner::SchwarzPreconditioner(
    const SparseMatrix& A_free, const Decomposition& dec,
    const CoarseBasis* coarse, int nthreads,
    const std::vector<Vec3>* free_coords) {
  if (A_free.nrows != A_free.ncols)
    throw std::invalid_argument("SchwarzPreconditioner: matrix not square");
  n_ = A_free.nrows;
  nthreads_ = nthreads;
  sets_ = dec.overlap;
  const index_t n_sub = static_cast<index_t>(sets_.size());

  // Factor in parallel into a slot per subdomain, then collect in order.
  std::vector<std::optional<SparseLdlt>> slots(n_sub);
  parallel_for_ranges(n_sub, nthreads, [&](index_t lo, index_t hi) {
    for (index_t s = lo; s < hi; ++s) {
      const SparseMatrix A_s = principal_submatrix(A_free, sets_[s]);
      std::vector<index_t> perm;
      if (free_coords) {
        std::vector<Vec3> coords(sets_[s].size());
        for (std::size_t k = 0; k < sets_[s].size(); ++k)
          coords[k] = (*free_coords)[sets_[s][k]];
        perm = nested_dissection_ordering(A_s, coords);
      }
      try {
        slots[s].emplace(A_s, std::move(perm));
      } catch (const NotSpdError& e) {
        throw std::runtime_error("subdomain " + std::to_string(s) +
                                 " matrix is not positive definite: " +
                                 e.what());
      }
    }
  });
  local_factors_.reserve(n_sub);
  for (index_t s = 0; s < n_sub; ++s)
    local_factors_.push_back(std::move(*slots[s]));

  if (coarse) attach_coarse(*coarse);

  scratch_.resize(n_sub);
  for (index_t s = 0; s < n_sub; ++s)
    scratch_[s].resize(2 * sets_[s].size());
}

void SchwarzPreconditioner::attach_coarse(const CoarseBasis& coarse) {
  if (coarse.phi.nrows != n_)
    throw std::invalid_argument("SchwarzPreconditioner: basis row mismatch");
  phi_ = coarse.phi;
  try {
    coarse_factor_.emplace(coarse.a0);
  } catch (const NotSpdError& e) {
    throw std::runtime_error(
        std::string("coarse matrix is not positive definite: ") + e.what());
  }
}

void SchwarzPreconditioner::apply(const std::vector<double>& r,
                                  std::vector<double>& z) const {
  if (static_cast<index_t>(r.size()) != n_)
    throw std::invalid_argument("SchwarzPreconditioner::apply: size mismatch");
  z.assign(n_, 0.0);

  if (coarse_factor_) {
    const std::vector<double> rc = spmv_transpose(phi_, r);
    const std::vector<double> yc = coarse_factor_->solve(rc);
    std::vector<double> zc(n_);
    spmv(phi_, yc.data(), zc.data());
    for (index_t i = 0; i < n_; ++i) z[i] += zc[i];
  }

  const index_t n_sub = static_cast<index_t>(sets_.size());
  parallel_for_ranges(n_sub, nthreads_, [&](index_t lo, index_t hi) {
    for (index_t s = lo; s < hi; ++s) {
      const std::vector<index_t>& set = sets_[s];
      double* rs = scratch_[s].data();
      double* xs = rs + set.size();
      for (std::size_t k = 0; k < set.size(); ++k) rs[k] = r[set[k]];
      local_factors_[s].solve(rs, xs);
    }
  });
  for (index_t s = 0; s < n_sub; ++s) {
    const std::vector<index_t>& set = sets_[s];
    const double* xs = scratch_[s].data() + set.size();
    for (std::size_t k = 0; k < set.size(); ++k) z[set[k]] += xs[k];
  }
}

std::vector<double> SchwarzPreconditioner::apply(
    const std::vector<double>& r) const {
  std::vector<double> z;
  apply(r, z);
  return z;
}

PrecondApply SchwarzPreconditioner::callback() const {
  return [this](const std::vector<double>& r, std::vector<double>& z) {
    apply(r, z);
  };
}

}  // namespace stokesdd
