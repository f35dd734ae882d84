#include "ctxkit/inequality.hpp"

#include <stdexcept>

namespace ctxkit {

Rational algebraic_bound(const Scenario& scenario, const RationalVector& coefficients) {
  const LocalIndex index(scenario);
  if (static_cast<std::size_t>(coefficients.size()) != index.size()) {
    throw std::invalid_argument("inequality has " + std::to_string(coefficients.size()) + " coefficients, expected " +
                                std::to_string(index.size()));
  }
  Rational total(0);
  for (std::size_t c = 0; c < index.context_count(); ++c) {
    const auto block = coefficients.segment(static_cast<Eigen::Index>(index.context_offset(c)),
                                            static_cast<Eigen::Index>(index.context_size(c)));
    Rational best = block(0);
    for (Eigen::Index i = 1; i < block.size(); ++i) {
      if (block(i) > best) best = block(i);
    }
    total += best;
  }
  return total;
}

BellInequality::BellInequality(Scenario scenario, RationalVector coefficients, Rational bound)
    : scenario_(std::move(scenario)), coefficients_(std::move(coefficients)), bound_(std::move(bound)) {
  const Rational norm = algebraic_bound(scenario_, coefficients_);
  if (!(bound_ < norm)) {
    throw std::invalid_argument("trivial inequality: bound " + bound_.str() + " is not below the algebraic bound " +
                                norm.str());
  }
  if (bound_.sign() < 0) {
    // Every model puts total weight 1 on the first context.
    const LocalIndex index(scenario_);
    const Rational shift = -bound_;
    for (std::size_t i = 0; i < index.context_size(0); ++i) coefficients_(static_cast<Eigen::Index>(i)) += shift;
    bound_ = Rational(0);
  }
  Rational largest(0);
  for (Eigen::Index i = 0; i < coefficients_.size(); ++i) {
    const Rational m = abs(coefficients_(i));
    if (m > largest) largest = m;
  }
  // largest > 0 since bound < norm rules out the zero vector.
  for (Eigen::Index i = 0; i < coefficients_.size(); ++i) coefficients_(i) /= largest;
  bound_ /= largest;
}

}  // namespace ctxkit
