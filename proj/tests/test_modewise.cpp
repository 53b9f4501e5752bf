#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fmw/errors.hpp"
#include "fmw/modewise.hpp"
#include "fmw/models.hpp"
#include "test_support.hpp"

using namespace fmw;
using fmw::testing::contiguous_cut;

namespace {

std::size_t min_side(const Bipartition& p) { return std::min(p.a_modes.size(), p.b_modes.size()); }

void check_structure(const CovarianceMatrix& s, const ModewiseDecomposition& d, double lambda0) {
  CHECK(reconstruction_residual(s, d) <= 1e-8);
  CHECK(is_orthogonal(d.O_A, 1e-10));
  CHECK(is_orthogonal(d.O_B, 1e-10));
  CHECK(d.pairs.size() <= min_side(d.partition));
  CHECK(d.pairs.size() + d.residual_a.size() == d.partition.a_modes.size());
  CHECK(d.pairs.size() + d.residual_b.size() == d.partition.b_modes.size());
  for (std::size_t k = 0; k < d.pairs.size(); ++k) {
    const EntangledPair& p = d.pairs[k];
    CHECK(std::abs(p.kappa * p.kappa + p.lambda * p.lambda - lambda0 * lambda0) <= 1e-9);
    CHECK(p.theta >= 0.0);
    CHECK(p.theta <= std::numbers::pi / 4 + 1e-12);
    if (k > 0) CHECK(d.pairs[k - 1].theta >= p.theta);
  }
  for (const ResidualMode& r : d.residual_a) CHECK(std::abs(r.lambda - lambda0) <= 1e-8);
  for (const ResidualMode& r : d.residual_b) CHECK(std::abs(r.lambda - lambda0) <= 1e-8);
}

}  // namespace

TEST_CASE("squeezing_angle") {
  CHECK(squeezing_angle(1.0, 0.0) == 0.0);
  CHECK(squeezing_angle(0.0, 1.0) == doctest::Approx(std::numbers::pi / 4));
  CHECK(squeezing_angle(std::cos(0.6), std::sin(0.6)) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("vacuum has no pairs") {
  const CovarianceMatrix s = vacuum_fcm(4);
  const ModewiseDecomposition d = modewise_decompose(s, contiguous_cut(4, 2));
  CHECK(d.pairs.empty());
  CHECK(d.residual_a.size() == 2);
  CHECK(d.residual_b.size() == 2);
  CHECK(d.lambda0 == doctest::Approx(1.0));
  CHECK(reconstruction_residual(s, d) <= 1e-14);
}

TEST_CASE("single pure pair recovers its angle") {
  const double theta = 0.41;
  const CovarianceMatrix s = bcs_fcm({theta});
  const ModewiseDecomposition d = modewise_decompose(s, contiguous_cut(2, 1));
  REQUIRE(d.pairs.size() == 1);
  CHECK(std::abs(d.pairs[0].theta - theta) <= 1e-12);
  CHECK(std::abs(d.pairs[0].lambda - std::cos(2 * theta)) <= 1e-12);
  CHECK(std::abs(d.pairs[0].kappa - std::sin(2 * theta)) <= 1e-12);
  check_structure(s, d, 1.0);
}

TEST_CASE("angle above pi/4 folds to its complement") {
  const CovarianceMatrix s = bcs_fcm({1.2});
  const ModewiseDecomposition d = modewise_decompose(s, contiguous_cut(2, 1));
  REQUIRE(d.pairs.size() == 1);
  CHECK(std::abs(d.pairs[0].theta - (std::numbers::pi / 2 - 1.2)) <= 1e-12);
}

TEST_CASE("random 6-mode pure state across a 2|4 cut") {
  const CovarianceMatrix s = random_pure_fcm(6, 17);
  const ModewiseDecomposition d = modewise_decompose(s, contiguous_cut(6, 2));
  CHECK(d.pairs.size() == 2);
  CHECK(d.residual_b.size() == 2);
  check_structure(s, d, 1.0);
}

TEST_CASE("non-contiguous partition") {
  const CovarianceMatrix s = random_pure_fcm(5, 8);
  const Bipartition p{{4, 1}, {0, 2, 3}};
  const ModewiseDecomposition d = modewise_decompose(s, p);
  CHECK(d.partition.a_modes == p.a_modes);
  check_structure(s, d, 1.0);
}

TEST_CASE("assemble_block_fcm layout") {
  ModewiseDecomposition d;
  d.partition = contiguous_cut(3, 2);
  d.lambda0 = 1.0;
  d.pairs.push_back({0.6, 0.8, squeezing_angle(0.6, 0.8), 0, 0});
  d.residual_a.push_back({1, 1.0});
  const Matrix m = assemble_block_fcm(d).matrix();
  Matrix expected = Matrix::Zero(6, 6);
  expected.topLeftCorner(4, 4) << 0, -0.6, 0, 0.8,  //
      0.6, 0, 0.8, 0,                               //
      0, -0.8, 0, -0.6,                             //
      -0.8, 0, 0.6, 0;
  expected.bottomRightCorner(2, 2) = j2();
  CHECK(max_abs(m - expected) <= 1e-15);
  CHECK(is_pure(assemble_block_fcm(d), 1e-12));
  // Same block as the two-mode state cos(theta)|00> - sin(theta)|11>.
  CHECK(max_abs(m.topLeftCorner(4, 4) - bcs_fcm({d.pairs[0].theta}).matrix()) <= 1e-15);
}

TEST_CASE("pure state property sweep") {
  int cases = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    const int m = 1 + static_cast<int>(seed / 7) % (n - 1);
    const CovarianceMatrix s = random_pure_fcm(n, 1000 + seed);
    const ModewiseDecomposition d = modewise_decompose(s, contiguous_cut(n, m));
    check_structure(s, d, 1.0);
    ++cases;
  }
  CHECK(cases == 100);
}

TEST_CASE("isotropic state property sweep") {
  const double lambda0s[] = {0.2, 0.5, 0.75, 0.95};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const int m = 1 + static_cast<int>(seed / 5) % (n - 1);
    const double lambda0 = lambda0s[seed % 4];
    const CovarianceMatrix s = isotropic_fcm(n, lambda0, 5000 + seed);
    const ModewiseDecomposition d = modewise_decompose(s, contiguous_cut(n, m));
    CHECK(d.lambda0 == doctest::Approx(lambda0).epsilon(1e-12));
    check_structure(s, d, lambda0);
  }
}

TEST_CASE("angles are invariant under local rotations") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CovarianceMatrix s = random_pure_fcm(5, 300 + seed);
    const Bipartition cut = contiguous_cut(5, 2);
    const CovarianceMatrix r = fmw::testing::locally_rotated(s, 2, 400 + seed);
    const ModewiseDecomposition a = modewise_decompose(s, cut);
    const ModewiseDecomposition b = modewise_decompose(r, cut);
    REQUIRE(a.pairs.size() == b.pairs.size());
    for (std::size_t k = 0; k < a.pairs.size(); ++k) CHECK(std::abs(a.pairs[k].theta - b.pairs[k].theta) <= 1e-9);
  }
}

TEST_CASE("degenerate angles form a two-dimensional class") {
  const CovarianceMatrix bcs = bcs_fcm({0.3, 0.3, 0.55});
  // Modes (0,1), (2,3), (4,5) are pairs; put the even modes in A, rotated.
  const Bipartition p{{0, 2, 4}, {1, 3, 5}};
  const ModewiseDecomposition d = modewise_decompose(bcs, p);
  REQUIRE(d.pairs.size() == 3);
  CHECK(std::abs(d.pairs[0].theta - 0.55) <= 1e-12);
  CHECK(std::abs(d.pairs[1].theta - 0.3) <= 1e-12);
  CHECK(std::abs(d.pairs[2].theta - 0.3) <= 1e-12);
  check_structure(bcs, d, 1.0);

  Matrix r = Matrix::Identity(12, 12);
  const Matrix local = fmw::testing::random_orthogonal(6, 77);
  // Mix the quadratures of the degenerate A modes (global modes 0 and 2).
  const int rows[] = {0, 1, 4, 5, 8, 9};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) r(rows[i], rows[j]) = local(i, j);
  const CovarianceMatrix mixed(AntisymmetricMatrix::from_rounded(r * bcs.matrix() * r.transpose()));
  const ModewiseDecomposition dm = modewise_decompose(mixed, p);
  REQUIRE(dm.pairs.size() == 3);
  CHECK(std::abs(dm.pairs[2].theta - 0.3) <= 1e-10);
  check_structure(mixed, dm, 1.0);
}

TEST_CASE("maximally entangled pairs have lambda = 0") {
  const double q = std::numbers::pi / 4;
  const CovarianceMatrix s = bcs_fcm({q, q});
  const ModewiseDecomposition d = modewise_decompose(s, Bipartition{{0, 2}, {1, 3}});
  REQUIRE(d.pairs.size() == 2);
  for (const EntangledPair& p : d.pairs) {
    CHECK(std::abs(p.lambda) <= 1e-12);
    CHECK(std::abs(p.theta - q) <= 1e-12);
  }
  check_structure(s, d, 1.0);
}

TEST_CASE("non-isotropic input is rejected") {
  CHECK_THROWS_AS(modewise_decompose(diagonal_fcm({0.9, 0.3}), contiguous_cut(2, 1)), NotIsotropic);
  try {
    modewise_decompose(diagonal_fcm({0.9, 0.3}), contiguous_cut(2, 1));
  } catch (const NotIsotropic& e) {
    CHECK(e.deviation() == doctest::Approx(0.36).epsilon(1e-12));
  }
}

TEST_CASE("structure failures raise NumericalConsistency") {
  // A slightly perturbed pure state accepted by a loose isotropy tolerance
  // cannot satisfy the strict cross-class check.
  Matrix m = random_pure_fcm(4, 3).matrix();
  const Matrix bump = fmw::testing::random_antisymmetric(8, 5);
  m += 1e-4 * bump;
  const CovarianceMatrix s(AntisymmetricMatrix::from_rounded(m / 1.01));
  DecompositionTolerances loose;
  loose.isotropy = 1.0;
  CHECK_THROWS_AS(modewise_decompose(s, contiguous_cut(4, 2), loose), NumericalConsistency);
}

TEST_CASE("empty side leaves every mode residual") {
  const CovarianceMatrix s = random_pure_fcm(3, 2);
  const ModewiseDecomposition d = modewise_decompose(s, Bipartition{{}, {0, 1, 2}});
  CHECK(d.pairs.empty());
  CHECK(d.residual_a.empty());
  CHECK(d.residual_b.size() == 3);
  CHECK(reconstruction_residual(s, d) <= 1e-9);
}

TEST_CASE("bad partitions are rejected") {
  const Bipartition incomplete{{0}, {1}};
  const Bipartition overlapping{{0, 1}, {1, 2}};
  CHECK_THROWS_AS(modewise_decompose(vacuum_fcm(3), incomplete), InvalidInput);
  CHECK_THROWS_AS(modewise_decompose(vacuum_fcm(3), overlapping), InvalidInput);
}

TEST_CASE("layout_transform is orthogonal and maps M to the block form") {
  const CovarianceMatrix s = isotropic_fcm(5, 0.7, 12);
  const ModewiseDecomposition d = modewise_decompose(s, Bipartition{{3, 0}, {1, 2, 4}});
  const Matrix t = layout_transform(d);
  CHECK(is_orthogonal(t, 1e-10));
  CHECK(max_abs(transformed_fcm(s, d) - assemble_block_fcm(d).matrix()) <= 1e-8);
}
