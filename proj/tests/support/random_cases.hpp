#ifndef SEBOOST_TESTS_RANDOM_CASES_HPP
#define SEBOOST_TESTS_RANDOM_CASES_HPP

// Shared generators for randomized tests.

#include <random>
#include <vector>

#include "seboost/core.hpp"
#include "seboost/mlp.hpp"

namespace testgen {

using seboost::Batch;
using seboost::Index;
using seboost::Mat;
using seboost::MlpSpec;
using seboost::Vec;

inline Mat<double> random_matrix(Index rows, Index cols,
                                 std::mt19937_64& gen, double scale = 1.0) {
  Mat<double> m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      m(i, j) = scale * seboost::rng::symmetric(gen);
    }
  }
  return m;
}

inline Vec<double> random_vector(Index n, std::mt19937_64& gen,
                                 double scale = 1.0) {
  Vec<double> v(n);
  for (Index i = 0; i < n; ++i) v[i] = scale * seboost::rng::symmetric(gen);
  return v;
}

/// Random narrow MLP spec with parameter count <= max_params.
inline MlpSpec random_spec(std::mt19937_64& gen, Index max_params = 300) {
  for (;;) {
    const int depth = 2 + static_cast<int>(seboost::rng::bounded(gen, 3));
    std::vector<int> sizes;
    for (int i = 0; i <= depth; ++i) {
      sizes.push_back(1 + static_cast<int>(seboost::rng::bounded(gen, 8)));
    }
    MlpSpec spec{sizes, seboost::rng::bounded(gen, 2) == 0
                            ? seboost::FinalActivation::kTanh
                            : seboost::FinalActivation::kLinear};
    if (seboost::param_count(spec) <= max_params) return spec;
  }
}

inline Batch<double> random_batch(const MlpSpec& spec, Index rows,
                                  std::mt19937_64& gen) {
  return {random_matrix(rows, spec.input_dim(), gen),
          random_matrix(rows, spec.output_dim(), gen)};
}

/// Symmetric positive definite matrix with eigenvalues in [lo, hi].
inline Mat<double> random_spd(Index d, std::mt19937_64& gen, double lo = 0.5,
                              double hi = 5.0) {
  Mat<double> a = random_matrix(d, d, gen);
  Eigen::HouseholderQR<Mat<double>> qr(a);
  Mat<double> q = qr.householderQ();
  Vec<double> eigs(d);
  for (Index i = 0; i < d; ++i) {
    eigs[i] = lo + (hi - lo) * seboost::rng::canonical(gen);
  }
  return q * eigs.asDiagonal() * q.transpose();
}

}  // namespace testgen

#endif  // SEBOOST_TESTS_RANDOM_CASES_HPP
