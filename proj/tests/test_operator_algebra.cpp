#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "fwlab/operator_algebra.hpp"
#include "fwlab/tolerances.hpp"

using namespace fwlab;

namespace {

const cxd kI(0.0, 1.0);

ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = cxd(dist(gen), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const cxd z(dist(gen), dist(gen));
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

/// ||A v_k - lambda_k v_k|| maximized over all eigenpairs.
double eigenpair_residual(const ComplexMatrix& a, const EigenDecomposition& e) {
  double worst = 0.0;
  for (std::size_t k = 0; k < e.values.size(); ++k) {
    std::vector<cxd> v(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) v[i] = e.vectors(i, k);
    const std::vector<cxd> av = a.apply(v);
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
      s += std::norm(av[i] - e.values[k] * v[i]);
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

}  // namespace

TEST_SUITE("operator_algebra") {

TEST_CASE("pauli and dirac matrices have the textbook entries") {
  const ComplexMatrix sx = pauli_matrix(Axis::x);
  const ComplexMatrix sy = pauli_matrix(Axis::y);
  const ComplexMatrix sz = pauli_matrix(Axis::z);
  CHECK(sx(0, 1) == cxd(1.0, 0.0));
  CHECK(sx(0, 0) == cxd(0.0, 0.0));
  CHECK(sy(0, 1) == -kI);
  CHECK(sy(1, 0) == kI);
  CHECK(sz(0, 0) == cxd(1.0, 0.0));
  CHECK(sz(1, 1) == cxd(-1.0, 0.0));
  // sigma_x sigma_y = i sigma_z, exactly (entries are 0 and +-1, +-i).
  CHECK((sx * sy - kI * sz).max_abs() == 0.0);

  const ComplexMatrix beta = dirac_beta();
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(beta(i, i) == cxd(i < 2 ? 1.0 : -1.0, 0.0));

  for (Axis ax : {Axis::x, Axis::y, Axis::z}) {
    CAPTURE(static_cast<int>(ax));
    const ComplexMatrix alpha = dirac_alpha(ax);
    const ComplexMatrix sigma = dirac_sigma(ax);
    const ComplexMatrix pol = dirac_polarization(ax);
    // alpha anticommutes with beta, Sigma and Pi commute with it - exactly.
    CHECK(anticommutator(beta, alpha).max_abs() == 0.0);
    CHECK(commutator(beta, sigma).max_abs() == 0.0);
    CHECK(commutator(beta, pol).max_abs() == 0.0);
    // Pi_k = beta Sigma_k with +-1 diagonal beta: exact entry products.
    CHECK((pol - beta * sigma).max_abs() == 0.0);
    // Involutions: alpha^2 = Sigma^2 = I.
    CHECK((alpha * alpha - ComplexMatrix::identity(4)).max_abs() == 0.0);
    CHECK((sigma * sigma - ComplexMatrix::identity(4)).max_abs() == 0.0);
    CHECK(alpha.hermiticity_residual() == 0.0);
    CHECK(sigma.hermiticity_residual() == 0.0);
  }

  // Pi_z is the diag(1, -1, -1, 1) polarization used throughout the model.
  const ComplexMatrix pz = dirac_polarization(Axis::z);
  CHECK(pz(0, 0) == cxd(1.0, 0.0));
  CHECK(pz(1, 1) == cxd(-1.0, 0.0));
  CHECK(pz(2, 2) == cxd(-1.0, 0.0));
  CHECK(pz(3, 3) == cxd(1.0, 0.0));
}

TEST_CASE("level_kron places spinor blocks by level indices") {
  ComplexMatrix level(2);
  level(0, 1) = cxd(2.0, -1.0);
  const ComplexMatrix beta = dirac_beta();
  const ComplexMatrix k = level_kron(level, beta);
  REQUIRE(k.dim() == 8);
  for (std::size_t s = 0; s < 4; ++s)
    for (std::size_t t = 0; t < 4; ++t)
      CHECK(k(s, 4 + t) == level(0, 1) * beta(s, t));
  // Everything outside the (0,1) level block is zero.
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(k(i, j) == cxd(0.0, 0.0));

  CHECK_THROWS_AS(level_kron(level, ComplexMatrix(3)), std::invalid_argument);
  CHECK_THROWS_AS(lift(beta, 0), std::invalid_argument);

  const ComplexMatrix lifted = lift(beta, 3);
  REQUIRE(lifted.dim() == 12);
  for (std::size_t n = 0; n < 3; ++n)
    for (std::size_t s = 0; s < 4; ++s)
      CHECK(lifted(4 * n + s, 4 * n + s) == beta(s, s));
}

TEST_CASE("even-odd split is exact and respects the beta grading") {
  const std::size_t n_levels = 2;
  const ComplexMatrix beta = lift(dirac_beta(), n_levels);
  const ComplexMatrix x = random_hermitian(4 * n_levels, 42);
  const EvenOddParts parts = even_odd_split(x, beta);
  // beta x beta flips signs entrywise, so the two halves recombine without
  // rounding: every entry of E + O is bitwise an entry of x or an exact sum.
  CHECK((parts.even + parts.odd - x).max_abs() == 0.0);
  CHECK(commutator(beta, parts.even).max_abs() == 0.0);
  CHECK(anticommutator(beta, parts.odd).max_abs() == 0.0);

  // An operator that is already even splits into (itself, 0).
  const ComplexMatrix pol = lift(dirac_polarization(Axis::z), n_levels);
  const EvenOddParts again = even_odd_split(pol, beta);
  CHECK((again.even - pol).max_abs() == 0.0);
  CHECK(again.odd.max_abs() == 0.0);

  CHECK_THROWS_AS(even_odd_split(x, dirac_beta()), std::invalid_argument);
}

TEST_CASE("split Hamiltonian construction validates its algebra") {
  const ComplexMatrix beta = dirac_beta();
  const ComplexMatrix odd = cxd(0.75, 0.0) * dirac_alpha(Axis::x);
  const ComplexMatrix even = cxd(0.3, 0.0) * dirac_polarization(Axis::z);

  const SplitHamiltonian h(1.0, even, odd, beta);
  CHECK(h.dim() == 4);
  CHECK((h.total() - (beta + even + odd)).max_abs() == 0.0);

  CHECK_THROWS_AS(SplitHamiltonian(0.0, even, odd, beta),
                  std::invalid_argument);
  CHECK_THROWS_AS(SplitHamiltonian(-1.0, even, odd, beta),
                  std::invalid_argument);
  // Swapping the parts breaks the grading: alpha_x does not commute with
  // beta and Pi_z does not anticommute with it.
  CHECK_THROWS_AS(SplitHamiltonian(1.0, odd, even, beta),
                  std::invalid_argument);
  // Non-Hermitian part.
  ComplexMatrix bad = even;
  bad(0, 1) = cxd(0.5, 0.0);
  CHECK_THROWS_AS(SplitHamiltonian(1.0, bad, odd, beta),
                  std::invalid_argument);
  // Dimension mismatch.
  CHECK_THROWS_AS(SplitHamiltonian(1.0, ComplexMatrix(8), odd, beta),
                  std::invalid_argument);
}

TEST_CASE("hermitian_eig solves a hand-checked 2x2") {
  const ComplexMatrix a =
      ComplexMatrix::from_rows({{2.0, 1.0}, {1.0, 2.0}});
  const EigenDecomposition e = hermitian_eig(a);
  REQUIRE(e.values.size() == 2);
  CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(eigenpair_residual(a, e) <= 1e-14);
  CHECK((e.vectors.adjoint() * e.vectors - ComplexMatrix::identity(2))
            .max_abs() <= 1e-14);
}

TEST_CASE("hermitian_eig keeps exactly diagonal input exact") {
  ComplexMatrix d(4);
  d(0, 0) = 3.5;
  d(1, 1) = -1.25;
  d(2, 2) = 0.5;
  d(3, 3) = -1.25;
  const EigenDecomposition e = hermitian_eig(d);
  // Values are the sorted diagonal, bitwise; ties keep input order.
  CHECK(e.values[0] == -1.25);
  CHECK(e.values[1] == -1.25);
  CHECK(e.values[2] == 0.5);
  CHECK(e.values[3] == 3.5);
  // Eigenvectors are exact permutation columns.
  CHECK(e.vectors(1, 0) == cxd(1.0, 0.0));
  CHECK(e.vectors(3, 1) == cxd(1.0, 0.0));
  CHECK(e.vectors(2, 2) == cxd(1.0, 0.0));
  CHECK(e.vectors(0, 3) == cxd(1.0, 0.0));
  CHECK(eigenpair_residual(d, e) == 0.0);
}

TEST_CASE("hermitian_eig rejects bad input") {
  CHECK_THROWS_AS(hermitian_eig(ComplexMatrix()), std::invalid_argument);
  const ComplexMatrix upper =
      ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
  CHECK_THROWS_AS(hermitian_eig(upper), std::invalid_argument);
  ComplexMatrix inf_mat(2);
  inf_mat(0, 0) = cxd(std::numeric_limits<double>::infinity(), 0.0);
  CHECK_THROWS_AS(hermitian_eig(inf_mat), std::invalid_argument);
}

TEST_CASE("hermitian_eig is accurate on dense random input") {
  const std::size_t n = 24;
  const ComplexMatrix a = random_hermitian(n, 7);
  const EigenDecomposition e = hermitian_eig(a);
  CHECK(std::is_sorted(e.values.begin(), e.values.end()));
  CHECK(eigenpair_residual(a, e) <= 1e-12 * a.max_abs() * n);
  CHECK((e.vectors.adjoint() * e.vectors - ComplexMatrix::identity(n))
            .max_abs() <= 1e-13);
}

TEST_CASE("matrix_sqrt_psd") {
  SUBCASE("diagonal input stays exactly diagonal") {
    ComplexMatrix d(3);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    d(2, 2) = 0.0;
    const ComplexMatrix r = matrix_sqrt_psd(d);
    CHECK(r.is_exactly_diagonal());
    CHECK(r(0, 0) == cxd(2.0, 0.0));
    CHECK(r(1, 1) == cxd(3.0, 0.0));
    CHECK(r(2, 2) == cxd(0.0, 0.0));
  }
  SUBCASE("dense PSD square root squares back") {
    const ComplexMatrix g = random_hermitian(10, 99);
    const ComplexMatrix b = g * g;  // PSD by construction
    const ComplexMatrix r = matrix_sqrt_psd(b);
    CHECK((r * r - b).max_abs() <= 1e-12 * std::max(1.0, b.max_abs()));
    CHECK(r.hermiticity_residual() <= 1e-13);
  }
  SUBCASE("tiny negative eigenvalues clamp to zero") {
    ComplexMatrix d(2);
    d(0, 0) = 1.0;
    d(1, 1) = -1e-14;
    const ComplexMatrix r = matrix_sqrt_psd(d);
    CHECK(r(1, 1) == cxd(0.0, 0.0));
  }
  SUBCASE("genuinely negative input is rejected") {
    ComplexMatrix d(2);
    d(0, 0) = 1.0;
    d(1, 1) = -0.5;
    CHECK_THROWS_AS(matrix_sqrt_psd(d), std::domain_error);
  }
}

TEST_CASE("free-particle FW operator matches the closed form") {
  // H = beta m + 0.75 alpha_x with m = 1: O^2 = 0.5625 I exactly, so
  // eps = 1.25 I exactly and U = (2.25 I + 0.75 beta alpha_x)/sqrt(5.625)
  // has entries 3/sqrt(10) and +-1/sqrt(10).
  const ComplexMatrix beta = dirac_beta();
  const ComplexMatrix odd = cxd(0.75, 0.0) * dirac_alpha(Axis::x);
  const SplitHamiltonian h(1.0, ComplexMatrix::zero(4), odd, beta);

  const ComplexMatrix eps = epsilon_of(h);
  CHECK(eps.is_exactly_diagonal());
  for (std::size_t i = 0; i < 4; ++i) CHECK(eps(i, i) == cxd(1.25, 0.0));

  const ComplexMatrix u = fw_unitary(h, FwSign::plus);
  const ComplexMatrix u_inv = fw_unitary(h, FwSign::minus);
  const double diag = 0.9486832980505138;   // 3/sqrt(10)
  const double off = 0.31622776601683794;   // 1/sqrt(10)
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(u(i, i).real() == doctest::Approx(diag).epsilon(1e-15));
  CHECK(u(0, 3).real() == doctest::Approx(off).epsilon(1e-15));
  CHECK(u(1, 2).real() == doctest::Approx(off).epsilon(1e-15));
  CHECK(u(3, 0).real() == doctest::Approx(-off).epsilon(1e-15));
  CHECK(u(2, 1).real() == doctest::Approx(-off).epsilon(1e-15));

  // With O^2 exactly diagonal the inverse is the adjoint bitwise.
  CHECK((u_inv - u.adjoint()).max_abs() == 0.0);
  CHECK((u * u_inv - ComplexMatrix::identity(4)).max_abs() <= 1e-15);
  CHECK((u.adjoint() * u - ComplexMatrix::identity(4)).max_abs() <= 1e-15);

  // Conjugation lands on beta*eps + E with E = 0.
  const ComplexMatrix conj_h = u * h.total() * u_inv;
  CHECK((conj_h - beta * eps).max_abs() <= 1e-15);
  CHECK((fw_hamiltonian(h) - beta * eps).max_abs() == 0.0);
}

TEST_CASE("fw_unitary is the identity when the odd part vanishes") {
  const SplitHamiltonian h(2.0, ComplexMatrix::zero(4),
                           ComplexMatrix::zero(4), dirac_beta());
  const ComplexMatrix u = fw_unitary(h, FwSign::plus);
  CHECK((u - ComplexMatrix::identity(4)).max_abs() == 0.0);
}

TEST_CASE("fw_unitary stays unitary when exactness is violated") {
  // E with unequal diagonal entries no longer commutes with O; the
  // transformation is then only approximate but U itself is still unitary.
  ComplexMatrix uneven(4);
  uneven(0, 0) = 0.1;
  uneven(1, 1) = 0.2;
  uneven(2, 2) = 0.3;
  uneven(3, 3) = 0.4;
  const ComplexMatrix odd = cxd(0.75, 0.0) * dirac_alpha(Axis::x);
  const SplitHamiltonian h(1.0, uneven, odd, dirac_beta());
  CHECK(commutator(h.even, h.odd).max_abs() > 1e-3);
  const ComplexMatrix u = fw_unitary(h, FwSign::plus);
  CHECK((u.adjoint() * u - ComplexMatrix::identity(4)).max_abs() <= 1e-14);
}

TEST_CASE("invariance_check reports near-zero residuals for an exact model") {
  // E proportional to Pi_z commutes exactly with O = 0.75 alpha_x.
  const ComplexMatrix even = cxd(0.3, 0.0) * dirac_polarization(Axis::z);
  const ComplexMatrix odd = cxd(0.75, 0.0) * dirac_alpha(Axis::x);
  const SplitHamiltonian h(1.0, even, odd, dirac_beta());
  CHECK(commutator(h.even, h.odd).max_abs() == 0.0);
  const InvarianceReport rep = invariance_check(h);
  CHECK(rep.even_residual <= 1e-15);
  CHECK(rep.epsilon_residual <= 1e-15);
}

}  // TEST_SUITE
