#ifndef SEBOOST_TESTS_SUPPORT_QUADRATIC_HPP
#define SEBOOST_TESTS_SUPPORT_QUADRATIC_HPP

#include <limits>

#include "seboost/mlp.hpp"

namespace testsupport {

/// f(x) = 0.5 * x'Ax - b'x with A symmetric positive definite; the batch is
/// ignored, which makes restricted solves deterministic by construction.
struct QuadraticObjective : seboost::Objective<double> {
  seboost::Mat<double> A;
  seboost::Vec<double> b;

  QuadraticObjective(seboost::Mat<double> a, seboost::Vec<double> rhs)
      : A(std::move(a)), b(std::move(rhs)) {}

  double loss(const seboost::Vec<double>& x,
              const seboost::Batch<double>&) const override {
    return 0.5 * x.dot(A * x) - b.dot(x);
  }
  seboost::Vec<double> grad(const seboost::Vec<double>& x,
                            const seboost::Batch<double>&) const override {
    return A * x - b;
  }
  double weight_decay() const override { return 0.0; }
};

/// f(x) = 0.5 * (x - xstar)'A(x - xstar): the same convex quadratic family
/// in factored form, minimum value exactly zero at xstar. The factored
/// evaluation has no large-term cancellation, so values keep full relative
/// precision arbitrarily close to the minimizer; exactness tests are not
/// limited by the ulp of a large constant the way 0.5 x'Ax - b'x is.
struct CenteredQuadratic : seboost::Objective<double> {
  seboost::Mat<double> A;
  seboost::Vec<double> xstar;

  CenteredQuadratic(seboost::Mat<double> a, seboost::Vec<double> center)
      : A(std::move(a)), xstar(std::move(center)) {}

  double loss(const seboost::Vec<double>& x,
              const seboost::Batch<double>&) const override {
    const seboost::Vec<double> d = x - xstar;
    return 0.5 * d.dot(A * d);
  }
  seboost::Vec<double> grad(const seboost::Vec<double>& x,
                            const seboost::Batch<double>&) const override {
    return A * (x - xstar);
  }
  double weight_decay() const override { return 0.0; }
};

/// Delegates to an inner objective until a set number of loss calls have
/// happened, then returns NaN forever.
struct PoisonAfter : seboost::Objective<double> {
  const seboost::Objective<double>* inner;
  int healthy_calls;
  mutable int calls = 0;

  PoisonAfter(const seboost::Objective<double>* obj, int healthy)
      : inner(obj), healthy_calls(healthy) {}

  double loss(const seboost::Vec<double>& x,
              const seboost::Batch<double>& batch) const override {
    if (++calls > healthy_calls) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    return inner->loss(x, batch);
  }
  seboost::Vec<double> grad(const seboost::Vec<double>& x,
                            const seboost::Batch<double>& batch) const override {
    return inner->grad(x, batch);
  }
  double weight_decay() const override { return inner->weight_decay(); }
};

inline seboost::Batch<double> dummy_batch() {
  seboost::Batch<double> batch;
  batch.inputs = seboost::Mat<double>::Zero(1, 1);
  batch.targets = seboost::Mat<double>::Zero(1, 1);
  return batch;
}

}  // namespace testsupport

#endif
