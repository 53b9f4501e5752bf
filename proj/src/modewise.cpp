#include "fmw/modewise.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "fmw/errors.hpp"

namespace fmw {

namespace {

struct LocalForm {
  Matrix O;
  std::vector<double> lambdas;
};

LocalForm local_williamson(const CovarianceMatrix& s, const std::vector<int>& modes) {
  if (modes.empty()) return {Matrix(0, 0), {}};
  WilliamsonForm form = williamson_form(restrict(s, modes).antisymmetric());
  return {std::move(form.O), std::move(form.lambdas)};
}

// Rows 2i, 2i+1 for each listed mode.
std::vector<Eigen::Index> quadrature_rows(const std::vector<int>& modes) {
  std::vector<Eigen::Index> rows;
  rows.reserve(2 * modes.size());
  for (int m : modes) {
    rows.push_back(2 * m);
    rows.push_back(2 * m + 1);
  }
  return rows;
}

Matrix gather(const Matrix& src, const std::vector<Eigen::Index>& rows,
              const std::vector<Eigen::Index>& cols) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = src(rows[r], cols[c]);
    }
  }
  return out;
}

// Nearest orthogonal matrix in Frobenius norm.
Matrix polar_orthogonal(const Matrix& q) {
  Eigen::JacobiSVD<Matrix> svd(q, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

struct EigenClass {
  double lambda = 0.0;
  std::vector<int> a;  // local Williamson mode indices
  std::vector<int> b;
};

// Single-linkage grouping of the merged A and B spectra with bucket width
// `width`.
std::vector<EigenClass> group_classes(const std::vector<double>& la, const std::vector<double>& lb,
                                      double width) {
  struct Tagged {
    double lambda;
    bool on_a;
    int mode;
  };
  std::vector<Tagged> all;
  for (std::size_t i = 0; i < la.size(); ++i) all.push_back({la[i], true, static_cast<int>(i)});
  for (std::size_t i = 0; i < lb.size(); ++i) all.push_back({lb[i], false, static_cast<int>(i)});
  std::stable_sort(all.begin(), all.end(),
                   [](const Tagged& x, const Tagged& y) { return x.lambda > y.lambda; });

  std::vector<EigenClass> classes;
  double previous = 0.0;
  std::vector<double> members;
  for (const Tagged& t : all) {
    if (classes.empty() || previous - t.lambda > width) {
      if (!classes.empty()) {
        double sum = 0.0;
        for (double v : members) sum += v;
        classes.back().lambda = sum / static_cast<double>(members.size());
      }
      classes.emplace_back();
      members.clear();
    }
    (t.on_a ? classes.back().a : classes.back().b).push_back(t.mode);
    members.push_back(t.lambda);
    previous = t.lambda;
  }
  if (!classes.empty()) {
    double sum = 0.0;
    for (double v : members) sum += v;
    classes.back().lambda = sum / static_cast<double>(members.size());
  }
  for (EigenClass& c : classes) {
    std::sort(c.a.begin(), c.a.end());
    std::sort(c.b.begin(), c.b.end());
  }
  return classes;
}

}  // namespace

double squeezing_angle(double lambda, double kappa) {
  return 0.5 * std::atan2(std::max(kappa, 0.0), std::max(lambda, 0.0));
}

ModewiseDecomposition modewise_decompose(const CovarianceMatrix& s, const Bipartition& partition,
                                         const DecompositionTolerances& tol) {
  partition.validate(s.n_modes());

  const std::optional<double> lambda0 = isotropy_parameter(s, tol.isotropy);
  if (!lambda0) {
    const double dev = isotropy_deviation(s);
    std::ostringstream msg;
    msg << "covariance matrix is not isotropic: max |M^2 + lambda0^2| = " << dev
        << " exceeds " << tol.isotropy;
    throw NotIsotropic(msg.str(), dev);
  }
  const double l0 = *lambda0;

  LocalForm fa = local_williamson(s, partition.a_modes);
  LocalForm fb = local_williamson(s, partition.b_modes);

  // Cross block K~ = O_A K O_B^T between the locally canonical frames.
  const Matrix k = gather(s.matrix(), quadrature_rows(partition.a_modes),
                          quadrature_rows(partition.b_modes));
  const Matrix kt = (fa.O.size() && fb.O.size()) ? Matrix(fa.O * k * fb.O.transpose())
                                                  : Matrix::Zero(k.rows(), k.cols());

  const double width = tol.degeneracy * l0;
  const std::vector<EigenClass> classes = group_classes(fa.lambdas, fb.lambdas, width);

  // Modes with different local eigenvalues must decouple.
  {
    std::vector<int> class_of_a(fa.lambdas.size()), class_of_b(fb.lambdas.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (int i : classes[c].a) class_of_a[static_cast<std::size_t>(i)] = static_cast<int>(c);
      for (int j : classes[c].b) class_of_b[static_cast<std::size_t>(j)] = static_cast<int>(c);
    }
    for (std::size_t i = 0; i < class_of_a.size(); ++i) {
      for (std::size_t j = 0; j < class_of_b.size(); ++j) {
        if (class_of_a[i] == class_of_b[j]) continue;
        const double norm = max_abs(kt.block<2, 2>(static_cast<Eigen::Index>(2 * i),
                                                   static_cast<Eigen::Index>(2 * j)));
        if (norm > tol.cross) {
          const auto& ca = classes[static_cast<std::size_t>(class_of_a[i])];
          const auto& cb = classes[static_cast<std::size_t>(class_of_b[j])];
          std::ostringstream msg;
          msg << "cross-correlation " << norm << " between local eigenvalue classes "
              << ca.lambda << " (A) and " << cb.lambda << " (B) exceeds " << tol.cross;
          throw NumericalConsistency(msg.str());
        }
      }
    }
  }

  struct RawPair {
    double lambda;
    double kappa;
    int a_local;
    int b_local;
  };
  std::vector<RawPair> raw_pairs;
  std::vector<int> residual_a_local, residual_b_local;

  for (const EigenClass& c : classes) {
    const std::vector<Eigen::Index> ra = quadrature_rows(c.a);
    const std::vector<Eigen::Index> rb = quadrature_rows(c.b);
    const Matrix kc = gather(kt, ra, rb);
    const double kc_max = max_abs(kc);
    const bool at_lambda0 = c.lambda >= l0 * (1.0 - tol.degeneracy);
    const bool equal_sides = c.a.size() == c.b.size() && !c.a.empty();

    auto decouple = [&] {
      if (kc_max > tol.cross) {
        std::ostringstream msg;
        msg << "local eigenvalue class " << c.lambda << " (g_A=" << c.a.size()
            << ", g_B=" << c.b.size() << ") should decouple but has cross-correlation " << kc_max;
        throw NumericalConsistency(msg.str());
      }
      residual_a_local.insert(residual_a_local.end(), c.a.begin(), c.a.end());
      residual_b_local.insert(residual_b_local.end(), c.b.begin(), c.b.end());
    };

    if (at_lambda0 && !(equal_sides && kc_max > tol.cross)) {
      decouple();
      continue;
    }
    if (!equal_sides) {
      std::ostringstream msg;
      msg << "local eigenvalue " << c.lambda << " has unequal degeneracies g_A=" << c.a.size()
          << ", g_B=" << c.b.size() << " with cross-correlation " << kc_max;
      throw NumericalConsistency(msg.str());
    }

    const auto g = static_cast<Eigen::Index>(c.a.size());
    const double kappa = kc.norm() / std::sqrt(static_cast<double>(2 * g));
    if (kappa <= tol.pair) {
      decouple();
      continue;
    }

    // K~_lambda = kappa Q beta; Q^T applied on the A side leaves lambda J
    // intact and turns the cross block into kappa beta.
    const Matrix q_raw = kc * pair_swap(g) / kappa;
    const Matrix q = polar_orthogonal(q_raw);
    const double orth_dev = max_abs(q_raw - q);
    if (orth_dev > tol.cross / kappa) {
      std::ostringstream msg;
      msg << "cross block of class " << c.lambda << " is not kappa times an orthogonal matrix"
          << " (deviation " << orth_dev << ")";
      throw NumericalConsistency(msg.str());
    }
    // J-commutation is implied only for lambda > 0; the noise it carries
    // scales like 1 / (lambda kappa).
    if (c.lambda > width) {
      const double sym_tol = std::max(tol.cross, tol.cross / std::min({1.0, c.lambda, kappa}));
      if (!is_orthogonal_symplectic(q, sym_tol)) {
        const Matrix j = symplectic_unit(g);
        std::ostringstream msg;
        msg << "class " << c.lambda << ": Q is not orthogonal symplectic, max |QJ - JQ| = "
            << max_abs(q * j - j * q);
        throw NumericalConsistency(msg.str());
      }
    }
    Matrix class_rows(static_cast<Eigen::Index>(ra.size()), fa.O.cols());
    for (std::size_t r = 0; r < ra.size(); ++r) class_rows.row(static_cast<Eigen::Index>(r)) = fa.O.row(ra[r]);
    class_rows = q.transpose() * class_rows;
    for (std::size_t r = 0; r < ra.size(); ++r) fa.O.row(ra[r]) = class_rows.row(static_cast<Eigen::Index>(r));
    for (Eigen::Index i = 0; i < g; ++i) {
      raw_pairs.push_back({c.lambda, kappa, c.a[static_cast<std::size_t>(i)], c.b[static_cast<std::size_t>(i)]});
    }
  }

  std::stable_sort(raw_pairs.begin(), raw_pairs.end(), [](const RawPair& x, const RawPair& y) {
    const double tx = squeezing_angle(x.lambda, x.kappa);
    const double ty = squeezing_angle(y.lambda, y.kappa);
    if (tx != ty) return tx > ty;
    return x.a_local < y.a_local;
  });
  std::sort(residual_a_local.begin(), residual_a_local.end());
  std::sort(residual_b_local.begin(), residual_b_local.end());

  ModewiseDecomposition d;
  d.partition = partition;
  d.lambda0 = l0;
  d.O_A.resize(fa.O.rows(), fa.O.cols());
  d.O_B.resize(fb.O.rows(), fb.O.cols());
  int next_a = 0;
  int next_b = 0;
  for (const RawPair& p : raw_pairs) {
    d.O_A.middleRows(2 * next_a, 2) = fa.O.middleRows(2 * p.a_local, 2);
    d.O_B.middleRows(2 * next_b, 2) = fb.O.middleRows(2 * p.b_local, 2);
    d.pairs.push_back({p.lambda, p.kappa, squeezing_angle(p.lambda, p.kappa), next_a, next_b});
    ++next_a;
    ++next_b;
  }
  for (int i : residual_a_local) {
    d.O_A.middleRows(2 * next_a, 2) = fa.O.middleRows(2 * i, 2);
    d.residual_a.push_back({next_a, fa.lambdas[static_cast<std::size_t>(i)]});
    ++next_a;
  }
  for (int j : residual_b_local) {
    d.O_B.middleRows(2 * next_b, 2) = fb.O.middleRows(2 * j, 2);
    d.residual_b.push_back({next_b, fb.lambdas[static_cast<std::size_t>(j)]});
    ++next_b;
  }

  const double residual = reconstruction_residual(s, d);
  if (residual > tol.reconstruction) {
    std::ostringstream msg;
    msg << "block reconstruction residual " << residual << " exceeds " << tol.reconstruction;
    throw NumericalConsistency(msg.str());
  }
  return d;
}

CovarianceMatrix assemble_block_fcm(const ModewiseDecomposition& d) {
  const Eigen::Index n = d.n_modes();
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  Eigen::Index at = 0;
  for (const EntangledPair& p : d.pairs) {
    const double l = p.lambda;
    const double k = p.kappa;
    Matrix block(4, 4);
    block << 0, -l, 0, k,
             l, 0, k, 0,
             0, -k, 0, -l,
             -k, 0, l, 0;
    m.block<4, 4>(at, at) = block;
    at += 4;
  }
  for (const auto* side : {&d.residual_a, &d.residual_b}) {
    for (const ResidualMode& r : *side) {
      m(at, at + 1) = -r.lambda;
      m(at + 1, at) = r.lambda;
      at += 2;
    }
  }
  return CovarianceMatrix(AntisymmetricMatrix::from_rounded(m));
}

Matrix layout_transform(const ModewiseDecomposition& d) {
  const Eigen::Index n = d.n_modes();
  Matrix t = Matrix::Zero(2 * n, 2 * n);
  const std::vector<Eigen::Index> cols_a = quadrature_rows(d.partition.a_modes);
  const std::vector<Eigen::Index> cols_b = quadrature_rows(d.partition.b_modes);

  auto place = [&](Eigen::Index target_row, const Matrix& local, Eigen::Index local_mode,
                   const std::vector<Eigen::Index>& cols) {
    for (Eigen::Index r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        t(target_row + r, cols[c]) = local(2 * local_mode + r, static_cast<Eigen::Index>(c));
      }
    }
  };

  Eigen::Index row = 0;
  for (const EntangledPair& p : d.pairs) {
    place(row, d.O_A, p.a_mode, cols_a);
    place(row + 2, d.O_B, p.b_mode, cols_b);
    row += 4;
  }
  for (const ResidualMode& r : d.residual_a) {
    place(row, d.O_A, r.mode, cols_a);
    row += 2;
  }
  for (const ResidualMode& r : d.residual_b) {
    place(row, d.O_B, r.mode, cols_b);
    row += 2;
  }
  return t;
}

Matrix transformed_fcm(const CovarianceMatrix& s, const ModewiseDecomposition& d) {
  const Matrix t = layout_transform(d);
  return t * s.matrix() * t.transpose();
}

double reconstruction_residual(const CovarianceMatrix& s, const ModewiseDecomposition& d) {
  return max_abs(transformed_fcm(s, d) - assemble_block_fcm(d).matrix());
}

}  // namespace fmw
