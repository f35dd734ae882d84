#pragma once

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace ctxkit::lp {

enum class RowSense { less_equal, equal };
enum class Status { optimal, infeasible, unbounded };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
  }
  return "?";
}

/// maximise c.x subject to A_i.x <= b_i or A_i.x = b_i (per row), x >= 0.
template <typename Scalar>
struct Problem {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Vector objective;
  Matrix constraints;
  Vector rhs;
  std::vector<RowSense> senses;
};

/// On optimal, `dual` solves min b.y s.t. A^T y >= c with y_i >= 0 on
/// inequality rows and y_i free on equality rows, and b.y == value.
template <typename Scalar>
struct Solution {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Status status = Status::infeasible;
  Vector primal;
  Vector dual;
  Scalar value = Scalar(0);
};

struct SolveOptions {
  /// When set, the final tableau is written here.
  std::ostream* trace = nullptr;
};

namespace detail {

/// Dense simplex tableau over an exact field.
///
/// Column layout: [structural | one slack per <= row | one auxiliary unit
/// column per row]. The auxiliary block starts as the identity, so after any
/// sequence of pivots it holds B^{-1}; auxiliary columns never enter the
/// basis, and those basic at the start act as phase-one artificials.
template <typename Scalar>
class Tableau {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  explicit Tableau(const Problem<Scalar>& p)
      : rows_(static_cast<std::size_t>(p.constraints.rows())),
        structural_(static_cast<std::size_t>(p.constraints.cols())) {
    slack_of_row_.assign(rows_, npos);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (p.senses[i] == RowSense::less_equal) slack_of_row_[i] = structural_ + slacks_++;
    }
    aux_begin_ = structural_ + slacks_;
    cols_ = aux_begin_ + rows_;

    table_ = Matrix::Constant(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_), Scalar(0));
    rhs_ = Vector(static_cast<Eigen::Index>(rows_));
    sign_.assign(rows_, 1);
    basis_.assign(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      if (p.rhs(r) < Scalar(0)) sign_[i] = -1;
      const Scalar s(sign_[i]);
      for (std::size_t j = 0; j < structural_; ++j) {
        const auto& a = p.constraints(r, static_cast<Eigen::Index>(j));
        if (a != Scalar(0)) table_(r, static_cast<Eigen::Index>(j)) = s * a;
      }
      if (slack_of_row_[i] != npos) table_(r, static_cast<Eigen::Index>(slack_of_row_[i])) = s;
      table_(r, static_cast<Eigen::Index>(aux_begin_ + i)) = Scalar(1);
      rhs_(r) = s * p.rhs(r);
      basis_[i] = (slack_of_row_[i] != npos && sign_[i] > 0) ? slack_of_row_[i] : aux_begin_ + i;
    }
  }

  Solution<Scalar> run(const Problem<Scalar>& p, const SolveOptions& options) {
    Solution<Scalar> out;
    // Phase one: drive the artificial columns to zero.
    std::vector<bool> artificial(rows_, false);
    bool need_phase_one = false;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] == aux_begin_ + i) {
        artificial[i] = true;
        need_phase_one = true;
      }
    }
    if (need_phase_one) {
      Vector cost = Vector::Constant(static_cast<Eigen::Index>(cols_), Scalar(0));
      for (std::size_t i = 0; i < rows_; ++i) {
        if (artificial[i]) cost(static_cast<Eigen::Index>(aux_begin_ + i)) = Scalar(-1);
      }
      price(cost);
      iterate();  // bounded: the phase-one objective is at most 0
      if (objective_value(cost) < Scalar(0)) {
        out.status = Status::infeasible;
        trace(options);
        return out;
      }
      for (std::size_t k = 0; k < rows_; ++k) {
        if (basis_[k] < aux_begin_) continue;
        const auto r = static_cast<Eigen::Index>(k);
        for (std::size_t j = 0; j < aux_begin_; ++j) {
          if (table_(r, static_cast<Eigen::Index>(j)) != Scalar(0)) {
            pivot(k, j);
            break;
          }
        }
        // An all-zero row here is a redundant equality; its auxiliary column
        // stays basic at level zero and never limits a ratio test.
      }
    }

    Vector cost = Vector::Constant(static_cast<Eigen::Index>(cols_), Scalar(0));
    for (std::size_t j = 0; j < structural_; ++j) {
      cost(static_cast<Eigen::Index>(j)) = p.objective(static_cast<Eigen::Index>(j));
    }
    price(cost);
    if (!iterate()) {
      out.status = Status::unbounded;
      trace(options);
      return out;
    }

    out.status = Status::optimal;
    out.primal = Vector::Constant(static_cast<Eigen::Index>(structural_), Scalar(0));
    for (std::size_t k = 0; k < rows_; ++k) {
      if (basis_[k] < structural_) out.primal(static_cast<Eigen::Index>(basis_[k])) = rhs_(static_cast<Eigen::Index>(k));
    }
    out.dual = Vector(static_cast<Eigen::Index>(rows_));
    for (std::size_t i = 0; i < rows_; ++i) {
      // reduced cost of the auxiliary column = -(c_B B^{-1})_i
      const Scalar y = -reduced_(static_cast<Eigen::Index>(aux_begin_ + i));
      out.dual(static_cast<Eigen::Index>(i)) = sign_[i] > 0 ? y : Scalar(-y);
    }
    out.value = Scalar(0);
    for (std::size_t j = 0; j < structural_; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      if (out.primal(jj) != Scalar(0)) out.value += p.objective(jj) * out.primal(jj);
    }
    trace(options);
    return out;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void price(const Vector& cost) {
    reduced_ = cost;
    for (std::size_t k = 0; k < rows_; ++k) {
      const Scalar& cb = cost(static_cast<Eigen::Index>(basis_[k]));
      if (cb == Scalar(0)) continue;
      const auto r = static_cast<Eigen::Index>(k);
      for (std::size_t j = 0; j < cols_; ++j) {
        const auto& t = table_(r, static_cast<Eigen::Index>(j));
        if (t != Scalar(0)) reduced_(static_cast<Eigen::Index>(j)) -= cb * t;
      }
    }
  }

  Scalar objective_value(const Vector& cost) const {
    Scalar z(0);
    for (std::size_t k = 0; k < rows_; ++k) {
      const Scalar& cb = cost(static_cast<Eigen::Index>(basis_[k]));
      if (cb != Scalar(0)) z += cb * rhs_(static_cast<Eigen::Index>(k));
    }
    return z;
  }

  /// Bland's rule pivoting until optimal (true) or unbounded (false).
  bool iterate() {
    while (true) {
      std::size_t entering = npos;
      for (std::size_t j = 0; j < aux_begin_; ++j) {
        if (reduced_(static_cast<Eigen::Index>(j)) > Scalar(0)) {
          entering = j;
          break;
        }
      }
      if (entering == npos) return true;

      const auto col = static_cast<Eigen::Index>(entering);
      std::size_t leaving = npos;
      Scalar best_ratio(0);
      for (std::size_t k = 0; k < rows_; ++k) {
        const auto r = static_cast<Eigen::Index>(k);
        const auto& t = table_(r, col);
        if (!(t > Scalar(0))) continue;
        Scalar ratio = rhs_(r) / t;
        if (leaving == npos || ratio < best_ratio || (ratio == best_ratio && basis_[k] < basis_[leaving])) {
          leaving = k;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving == npos) return false;
      pivot(leaving, entering);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const auto pr = static_cast<Eigen::Index>(row);
    const auto pc = static_cast<Eigen::Index>(col);
    const Scalar inv = Scalar(1) / table_(pr, pc);

    std::vector<Eigen::Index> support;
    for (std::size_t j = 0; j < cols_; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      if (table_(pr, jj) != Scalar(0)) {
        table_(pr, jj) *= inv;
        support.push_back(jj);
      }
    }
    rhs_(pr) *= inv;

    for (std::size_t k = 0; k < rows_; ++k) {
      if (k == row) continue;
      const auto r = static_cast<Eigen::Index>(k);
      if (table_(r, pc) == Scalar(0)) continue;
      const Scalar factor = table_(r, pc);
      for (auto jj : support) table_(r, jj) -= factor * table_(pr, jj);
      if (rhs_(pr) != Scalar(0)) rhs_(r) -= factor * rhs_(pr);
    }
    if (reduced_(pc) != Scalar(0)) {
      const Scalar factor = reduced_(pc);
      for (auto jj : support) reduced_(jj) -= factor * table_(pr, jj);
    }
    basis_[row] = col;
  }

  void trace(const SolveOptions& options) const {
    if (options.trace == nullptr) return;
    auto& os = *options.trace;
    os << "tableau " << rows_ << "x" << cols_ << " (structural " << structural_ << ", slack " << slacks_
       << ", auxiliary " << rows_ << ")\n";
    for (std::size_t k = 0; k < rows_; ++k) {
      os << "x" << basis_[k] << " |";
      for (std::size_t j = 0; j < cols_; ++j) os << ' ' << table_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
      os << " | " << rhs_(static_cast<Eigen::Index>(k)) << '\n';
    }
    os << "z  |";
    for (std::size_t j = 0; j < cols_; ++j) os << ' ' << reduced_(static_cast<Eigen::Index>(j));
    os << '\n';
  }

  std::size_t rows_;
  std::size_t structural_;
  std::size_t slacks_ = 0;
  std::size_t aux_begin_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> slack_of_row_;
  std::vector<int> sign_;
  std::vector<std::size_t> basis_;
  Matrix table_;
  Vector rhs_;
  Vector reduced_;
};

}  // namespace detail

/// Throws std::invalid_argument when dimensions disagree.
template <typename Scalar>
void validate(const Problem<Scalar>& p) {
  const auto rows = p.constraints.rows();
  const auto cols = p.constraints.cols();
  if (p.objective.size() != cols) {
    throw std::invalid_argument("lp: objective has " + std::to_string(p.objective.size()) + " entries, expected " +
                                std::to_string(cols));
  }
  if (p.rhs.size() != rows) {
    throw std::invalid_argument("lp: rhs has " + std::to_string(p.rhs.size()) + " entries, expected " +
                                std::to_string(rows));
  }
  if (static_cast<Eigen::Index>(p.senses.size()) != rows) {
    throw std::invalid_argument("lp: need one sense per constraint row");
  }
}

/// Exact two-phase primal simplex with Bland's anti-cycling rule. The
/// result is a deterministic function of the input.
template <typename Scalar>
Solution<Scalar> solve(const Problem<Scalar>& p, const SolveOptions& options = {}) {
  validate(p);
  detail::Tableau<Scalar> tableau(p);
  return tableau.run(p, options);
}

}  // namespace ctxkit::lp
