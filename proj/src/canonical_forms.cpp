#include "fmw/canonical_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "fmw/errors.hpp"

namespace fmw {

namespace {

void require_even_square(const Matrix& m) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << "matrix must be square, got " << m.rows() << "x" << m.cols();
    throw InvalidInput(msg.str());
  }
  if (m.rows() == 0 || m.rows() % 2 != 0) {
    std::ostringstream msg;
    msg << "matrix dimension must be even and positive, got " << m.rows();
    throw InvalidInput(msg.str());
  }
}

}  // namespace

AntisymmetricMatrix::AntisymmetricMatrix(const Matrix& entries) {
  require_even_square(entries);
  const double scale = std::max(1.0, max_abs(entries));
  const double asym = max_abs(entries + entries.transpose());
  if (asym > kSymmetryTolerance * scale) {
    std::ostringstream msg;
    msg << "matrix is not antisymmetric: max |X + X^T| = " << asym;
    throw InvalidInput(msg.str());
  }
  entries_ = 0.5 * (entries - entries.transpose());
}

AntisymmetricMatrix::AntisymmetricMatrix(const Matrix& entries, Unchecked)
    : entries_(0.5 * (entries - entries.transpose())) {}

AntisymmetricMatrix AntisymmetricMatrix::from_rounded(const Matrix& entries) {
  require_even_square(entries);
  return AntisymmetricMatrix(entries, Unchecked{});
}

Matrix WilliamsonForm::canonical() const { return block_diagonal_j2(lambdas); }

Matrix j2() {
  Matrix j(2, 2);
  j << 0.0, -1.0, 1.0, 0.0;
  return j;
}

Matrix symplectic_unit(Eigen::Index g) {
  return block_diagonal_j2(std::vector<double>(static_cast<std::size_t>(g), 1.0));
}

Matrix pair_swap(Eigen::Index g) {
  Matrix b = Matrix::Zero(2 * g, 2 * g);
  for (Eigen::Index i = 0; i < g; ++i) {
    b(2 * i, 2 * i + 1) = 1.0;
    b(2 * i + 1, 2 * i) = 1.0;
  }
  return b;
}

Matrix block_diagonal_j2(const std::vector<double>& values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  Matrix w = Matrix::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    w(2 * i, 2 * i + 1) = -values[static_cast<std::size_t>(i)];
    w(2 * i + 1, 2 * i) = values[static_cast<std::size_t>(i)];
  }
  return w;
}

WilliamsonForm williamson_form(const Matrix& m) { return williamson_form(AntisymmetricMatrix(m)); }

WilliamsonForm williamson_form(const AntisymmetricMatrix& m) {
  const Matrix& a = m.entries();
  const Eigen::Index dim = a.rows();

  // A = U T U^T with T quasi-triangular; for antisymmetric A, T is block
  // diagonal with 2x2 antisymmetric blocks and 1x1 zero blocks.
  Eigen::RealSchur<Matrix> schur(a, /*computeU=*/true);
  if (schur.info() != Eigen::Success) {
    throw NumericalConsistency("real Schur decomposition did not converge");
  }
  const Matrix& t = schur.matrixT();
  const Matrix& u = schur.matrixU();

  struct Block {
    Eigen::Index first;
    Eigen::Index second;
    double lambda;
  };
  std::vector<Block> blocks;
  std::vector<Eigen::Index> singles;
  for (Eigen::Index i = 0; i < dim;) {
    const bool two_by_two = i + 1 < dim && t(i + 1, i) != 0.0;
    if (two_by_two) {
      // Block reads [[0, b], [-b, 0]]; lambda J2 needs b = -lambda.
      const double b = 0.5 * (t(i, i + 1) - t(i + 1, i));
      if (b <= 0.0) {
        blocks.push_back({i, i + 1, -b});
      } else {
        blocks.push_back({i + 1, i, b});
      }
      i += 2;
    } else {
      singles.push_back(i);
      i += 1;
    }
  }
  // Real eigenvalues of an antisymmetric matrix are zero and come in an even
  // count; pair them in Schur order. Their residual coupling is rounding noise.
  for (std::size_t k = 0; k + 1 < singles.size(); k += 2) {
    const Eigen::Index p = singles[k];
    const Eigen::Index q = singles[k + 1];
    const double b = 0.5 * (t(p, q) - t(q, p));
    if (b <= 0.0) {
      blocks.push_back({p, q, -b});
    } else {
      blocks.push_back({q, p, b});
    }
  }
  if (singles.size() % 2 != 0) {
    throw NumericalConsistency("real Schur form has an odd number of real eigenvalues");
  }

  // Stable sort keeps Schur order for ties, except that paired singles (always
  // zero) were appended last.
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const Block& x, const Block& y) { return x.lambda > y.lambda; });

  WilliamsonForm form;
  form.O.resize(dim, dim);
  form.lambdas.reserve(blocks.size());
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(2 * k);
    form.O.row(row) = u.col(blocks[k].first).transpose();
    form.O.row(row + 1) = u.col(blocks[k].second).transpose();
    form.lambdas.push_back(blocks[k].lambda);
  }
  return form;
}

bool is_orthogonal(const Matrix& o, double tol) {
  if (o.rows() != o.cols()) return false;
  return max_abs(o * o.transpose() - Matrix::Identity(o.rows(), o.cols())) <= tol;
}

bool is_orthogonal_symplectic(const Matrix& q, double tol) {
  if (q.rows() != q.cols() || q.rows() % 2 != 0) {
    throw InvalidInput("orthogonal-symplectic check needs an even-dimensional square matrix");
  }
  if (!is_orthogonal(q, tol)) return false;
  const Matrix j = symplectic_unit(q.rows() / 2);
  return max_abs(q * j - j * q) <= tol;
}

}  // namespace fmw
