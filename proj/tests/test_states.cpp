#include <functional>
#include <numbers>

#include "helpers.hpp"

using namespace entanglekit;
using namespace testing;

namespace {

ComplexVector vec(std::initializer_list<cplx> v) {
  ComplexVector out(v.size());
  int i = 0;
  for (auto x : v) out(i++) = x;
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::MalformedInput;
}

}  // namespace

TEST_CASE("pure states from amplitudes") {
  const auto phi = PureState::from_amplitudes({2, 2}, vec({1, 0, 0, 1}));
  CHECK_NEAR(phi.amplitudes()(0).real(), 1 / std::sqrt(2.0), 1e-15);
  CHECK_NEAR(phi.amplitudes()(3).real(), 1 / std::sqrt(2.0), 1e-15);

  const auto zero = PureState::from_amplitudes({2, 2}, vec({1, 0, 0, 0}));
  CHECK(schmidt(zero).rank == 1);

  Rng rng(201);
  const auto psi = PureState::from_amplitudes({2, 3}, ginibre(6, 1, rng));
  CHECK_NEAR(psi.amplitudes().norm(), 1.0, 1e-14);
  CHECK(psi.amplitude_matrix().rows() == 2);
  CHECK(psi.amplitude_matrix().cols() == 3);

  CHECK(kind_of([] { PureState::from_amplitudes({2, 2}, ComplexVector::Zero(4)); }) == ErrorKind::ZeroVector);
  CHECK(kind_of([] { PureState::from_amplitudes({2, 2}, ComplexVector::Ones(5)); }) == ErrorKind::DimensionMismatch);
  CHECK_THROWS_AS(BipartiteDims(1, 3), Error);
}

TEST_CASE("density matrix validation names the failed invariant") {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4) / 4.0;
  m(0, 1) = 0.1;
  try {
    DensityMatrix::from_matrix({2, 2}, m);
    FAIL("expected InvalidState");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidState);
    CHECK(std::string(e.what()).find("hermiticity") != std::string::npos);
  }
  try {
    DensityMatrix::from_matrix({2, 2}, ComplexMatrix::Identity(4, 4) / 3.0);
    FAIL("expected InvalidState");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("trace") != std::string::npos);
  }
  try {
    DensityMatrix::from_matrix({2, 2}, diag({0.6, 0.6, 0.0, -0.2}));
    FAIL("expected InvalidState");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("positivity") != std::string::npos);
  }
  // tiny negative eigenvalues are clamped
  const auto rho = DensityMatrix::from_matrix({2, 2}, diag({0.5, 0.5 + 5e-11, 0.0, -5e-11}));
  CHECK(rho.spectrum().back() >= 0.0);
  CHECK_NEAR(rho.matrix().trace().real(), 1.0, 1e-15);
  CHECK(kind_of([] { DensityMatrix::from_matrix({2, 2}, ComplexMatrix::Identity(3, 3) / 3.0); }) ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("schmidt decomposition") {
  const double chi = 0.4;
  const auto psi = PureState::from_amplitudes({2, 2}, vec({std::cos(chi), 0, 0, std::sin(chi)}));
  const auto s = schmidt(psi);
  check_close(s.coefficients, {std::pow(std::cos(chi), 2), std::pow(std::sin(chi), 2)}, 1e-14);
  REQUIRE(s.angle_chi);
  CHECK_NEAR(*s.angle_chi, chi, 1e-12);
  const ComplexMatrix ra = partial_trace(dm(psi), Side::B);
  CHECK((ra - diag({std::pow(std::cos(chi), 2), std::pow(std::sin(chi), 2)})).norm() < 1e-14);

  const auto s01 = schmidt(PureState::from_amplitudes({2, 2}, vec({0, 1, 0, 0})));
  check_close(s01.coefficients, {1, 0}, 1e-15);
  CHECK(s01.rank == 1);

  const auto sb = schmidt(bell(BellKind::PsiPlus));
  check_close(sb.coefficients, {0.5, 0.5}, 1e-14);
  CHECK_NEAR(*sb.angle_chi, std::numbers::pi / 4, 1e-7);
  CHECK(sb.multiplicities == std::vector<int>{0, 2});

  CHECK(!schmidt(max_entangled(3)).angle_chi);
}

TEST_CASE("schmidt reconstruction and profiles") {
  Rng rng(202);
  for (auto dims : {BipartiteDims{2, 3}, BipartiteDims{3, 2}, BipartiteDims{4, 4}}) {
    const auto psi = random_pure(dims, rng);
    const auto s = schmidt(psi);
    ComplexVector back = ComplexVector::Zero(dims.total());
    for (std::size_t i = 0; i < s.coefficients.size(); ++i) {
      back += std::sqrt(s.coefficients[i]) * kron(s.left_vectors.col(i), s.right_vectors.col(i));
    }
    CHECK(std::abs(std::abs(back.dot(psi.amplitudes())) - 1.0) < 1e-8);
    double sum = 0;
    for (double l : s.coefficients) sum += l;
    CHECK_NEAR(sum, 1.0, 1e-9);
    int total = 0;
    for (int m : s.multiplicities) total += m;
    CHECK(total == std::min(dims.n_a, dims.n_b));
  }
  CHECK(schmidt(from_schmidt({0.5, 0.25, 0.25})).multiplicities == std::vector<int>{0, 2, 1});
  CHECK(schmidt(from_schmidt({0.5, 0.5, 0.0})).multiplicities == std::vector<int>{1, 2});
  CHECK(schmidt(from_schmidt({1.0, 0.0, 0.0})).multiplicities == std::vector<int>{2, 1});
}

TEST_CASE("schmidt coefficients are local-unitary invariant") {
  Rng rng(203);
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 3;
    const auto psi = random_pure({n, n + 1}, rng);
    const auto moved = apply_local(psi, random_unitary(n, rng), random_unitary(n + 1, rng));
    check_close(schmidt(psi).coefficients, schmidt(moved).coefficients, 1e-9);
  }
}

TEST_CASE("partial trace") {
  CHECK((partial_trace(dm(bell(BellKind::PhiPlus)), Side::B) - ComplexMatrix::Identity(2, 2) / 2.0).norm() < 1e-15);
  Rng rng(204);
  const auto a = random_density_hs({2, 2}, rng);
  const ComplexMatrix sa = partial_trace(a, Side::B);
  const ComplexMatrix sb = partial_trace(random_density_hs({3, 3}, rng), Side::A);
  const ComplexMatrix prod = kron(sa, sb);
  CHECK((partial_trace(prod, {2, 3}, Side::B) - sa).norm() < 1e-14);
  CHECK((partial_trace(prod, {2, 3}, Side::A) - sb).norm() < 1e-14);
  CHECK((partial_trace(DensityMatrix::maximally_mixed({2, 3}), Side::A) - ComplexMatrix::Identity(3, 3) / 3.0).norm() <
        1e-15);

  for (int k = 0; k < 20; ++k) {
    const auto psi = random_pure({2, 4}, rng);
    auto la = hermitian_eigenvalues(partial_trace(dm(psi), Side::B));
    auto lb = hermitian_eigenvalues(partial_trace(dm(psi), Side::A));
    la.resize(4, 0.0);
    check_close(la, lb, 1e-12);
  }
}

TEST_CASE("partial transpose") {
  const double x = 0.6;
  auto pt = hermitian_eigenvalues(partial_transpose(werner(2, x), Side::A));
  check_close(pt, {(1 + x) / 4, (1 + x) / 4, (1 + x) / 4, (1 - 3 * x) / 4}, 1e-14);
  check_close(hermitian_eigenvalues(partial_transpose(dm(bell(BellKind::PhiPlus)), Side::B)), {0.5, 0.5, 0.5, -0.5},
              1e-14);

  Rng rng(205);
  for (int k = 0; k < 20; ++k) {
    const auto rho = random_density_hs({2, 3}, rng);
    const ComplexMatrix ta = partial_transpose(rho, Side::A), tb = partial_transpose(rho, Side::B);
    CHECK(hermiticity_defect(ta) < 1e-14);
    CHECK_NEAR(ta.trace().real(), 1.0, 1e-14);
    CHECK_NEAR(ta.norm(), rho.matrix().norm(), 1e-13);
    check_close(hermitian_eigenvalues(ta), hermitian_eigenvalues(tb), 1e-10);
    CHECK((partial_transpose(ta, rho.dims(), Side::A) - rho.matrix()).norm() < 1e-15);
    CHECK((partial_transpose(ta, rho.dims(), Side::B) - rho.matrix().transpose()).norm() < 1e-15);
  }
  const auto q = product(ginibre(2, 1, rng).col(0).normalized(), ginibre(3, 1, rng).col(0).normalized());
  CHECK(hermitian_eigenvalues(partial_transpose(dm(q), Side::A)).back() > -1e-12);
}

TEST_CASE("reshuffle") {
  Rng rng(206);
  const ComplexMatrix sa = partial_trace(random_density_hs({2, 2}, rng), Side::B);
  const ComplexMatrix sb = partial_trace(random_density_hs({3, 3}, rng), Side::A);
  const ComplexMatrix r = reshuffle(kron(sa, sb), {2, 3});
  CHECK(r.rows() == 4);
  CHECK(r.cols() == 9);
  const auto sv = singular_values(r);
  CHECK(sv[1] < 1e-14);
  CHECK_NEAR(trace_norm(r), std::sqrt((sa * sa).trace().real() * (sb * sb).trace().real()), 1e-14);
  CHECK(trace_norm(r) <= 1.0);

  CHECK_NEAR(trace_norm(reshuffle(DensityMatrix::maximally_mixed({2, 2}))), 0.5, 1e-15);
  CHECK_NEAR(trace_norm(reshuffle(dm(bell(BellKind::PhiPlus)))), 2.0, 1e-14);

  // index convention: R[(i,j),(mu,nu)] = rho[(i,mu),(j,nu)]
  const auto rho = random_density_hs({2, 3}, rng);
  const ComplexMatrix rr = reshuffle(rho);
  CHECK(rr(1 * 2 + 0, 2 * 3 + 1) == rho.matrix()(1 * 3 + 2, 0 * 3 + 1));

  const auto s2 = random_density_hs({2, 3}, rng);
  const ComplexMatrix lin = reshuffle(0.3 * rho.matrix() + 0.7 * s2.matrix(), {2, 3});
  CHECK((lin - 0.3 * reshuffle(rho) - 0.7 * reshuffle(s2)).norm() < 1e-12);
}

TEST_CASE("generator basis") {
  for (int n = 2; n <= 5; ++n) {
    const auto g = generator_basis(n);
    REQUIRE(int(g.generators.size()) == n * n - 1);
    for (int i = 0; i < n * n - 1; ++i) {
      CHECK(std::abs(g.generators[i].trace()) < 1e-12);
      CHECK(hermiticity_defect(g.generators[i]) < 1e-12);
      for (int j = 0; j < n * n - 1; ++j) {
        const cplx t = (g.generators[i] * g.generators[j]).trace();
        CHECK(std::abs(t - cplx(i == j ? 2.0 : 0.0)) < 1e-12);
      }
    }
  }
  const auto p = generator_basis(2);
  CHECK(p.generators[0](0, 1) == cplx(1));
  CHECK(p.generators[1](0, 1) == cplx(0, -1));
  CHECK(p.generators[2](1, 1) == cplx(-1));
}

TEST_CASE("Fano form") {
  const auto mixed = fano_form(DensityMatrix::maximally_mixed({2, 3}));
  for (double t : mixed.tau_a) CHECK(std::abs(t) < 1e-15);
  for (double t : mixed.tau_b) CHECK(std::abs(t) < 1e-15);
  CHECK(mixed.beta.norm() < 1e-15);

  const auto f = fano_form(dm(bell(BellKind::PhiPlus)));
  for (double t : f.tau_a) CHECK(std::abs(t) < 1e-15);
  CHECK((f.beta - Eigen::Vector3d(1, -1, 1).asDiagonal().toDenseMatrix()).norm() < 1e-14);

  const auto up = fano_form(dm(PureState::from_amplitudes({2, 2}, vec({1, 0, 0, 0}))));
  check_close(up.tau_a, {0, 0, 1}, 1e-15);
  check_close(up.tau_b, {0, 0, 1}, 1e-15);
  CHECK(std::abs(up.beta(2, 2) - 1.0) < 1e-15);
  CHECK(std::abs(up.beta(0, 0)) < 1e-15);

  Rng rng(207);
  for (auto dims : {BipartiteDims{2, 2}, BipartiteDims{2, 3}, BipartiteDims{3, 3}}) {
    const auto rho = random_density_hs(dims, rng);
    CHECK((fano_reconstruct(fano_form(rho)).matrix() - rho.matrix()).norm() < 1e-9);
  }
}

TEST_CASE("Fano flips and spin flip") {
  CHECK((fano_flip(DensityMatrix::maximally_mixed({2, 2}), FlipSide::B) - ComplexMatrix::Identity(4, 4) / 4.0).norm() <
        1e-15);
  const double x = 0.7;
  check_close(hermitian_eigenvalues(fano_flip(werner(2, x), FlipSide::B)),
              {(1 + x) / 4, (1 + x) / 4, (1 + x) / 4, (1 - 3 * x) / 4}, 1e-12);
  Rng rng(208);
  for (int k = 0; k < 20; ++k) {
    const auto rho = random_density_hs({2, 2}, rng);
    CHECK((fano_flip(rho, FlipSide::Both) - spin_flip_2q(rho).matrix()).norm() < 1e-12);
    check_close(hermitian_eigenvalues(fano_flip(rho, FlipSide::B)),
                hermitian_eigenvalues(partial_transpose(rho, Side::A)), 1e-9);
    CHECK((spin_flip_2q(spin_flip_2q(rho)).matrix() - rho.matrix()).norm() < 1e-12);
  }
  CHECK_THROWS_AS(fano_flip(DensityMatrix::maximally_mixed({2, 3}), FlipSide::B), Error);

  const auto phi = dm(bell(BellKind::PhiPlus));
  CHECK((spin_flip_2q(phi).matrix() - phi.matrix()).norm() < 1e-15);
  const auto z = dm(PureState::from_amplitudes({2, 2}, vec({1, 0, 0, 0})));
  CHECK(std::abs(spin_flip_2q(z).matrix()(3, 3) - 1.0) < 1e-15);
  CHECK_THROWS_AS(spin_flip_2q(DensityMatrix::maximally_mixed({2, 3})), Error);
}

TEST_CASE("entropies") {
  const auto mixed = DensityMatrix::maximally_mixed({2, 2});
  CHECK_NEAR(entropy(mixed), std::log(4.0), 1e-14);
  CHECK_NEAR(entropy(mixed, 2.0), std::log(4.0), 1e-14);
  CHECK_NEAR(entropy(mixed, kInfiniteOrder), std::log(4.0), 1e-14);
  Rng rng(209);
  const auto pure = dm(random_pure({3, 3}, rng));
  for (double q : {0.5, 1.0, 2.0, 3.0, kInfiniteOrder}) CHECK(std::abs(entropy(pure, q)) < 1e-10);
  CHECK(entropy(pure, 0.0) == 0.0);
  CHECK_NEAR(conditional_entropy(dm(bell(BellKind::PhiPlus))), -std::log(2.0), 1e-14);

  const std::vector<double> p{0.5, 0.3, 0.2};
  const double shannon = -(0.5 * std::log(0.5) + 0.3 * std::log(0.3) + 0.2 * std::log(0.2));
  CHECK_NEAR(renyi_entropy(p, 1.0), shannon, 1e-15);
  CHECK_NEAR(renyi_entropy(p, 1.0 + 5e-5), renyi_entropy(p, 1.0), 1e-5);
  CHECK_NEAR(renyi_entropy(p, 1.0 + 5e-5), std::log(std::pow(0.5, 1.00005) + std::pow(0.3, 1.00005) + std::pow(0.2, 1.00005)) / -5e-5, 1e-9);
  CHECK_NEAR(renyi_entropy(p, 2.0), -std::log(0.25 + 0.09 + 0.04), 1e-15);
  CHECK_NEAR(renyi_entropy(p, 0.0), std::log(3.0), 1e-15);
  CHECK_NEAR(renyi_entropy(p, kInfiniteOrder), -std::log(0.5), 1e-15);
  CHECK_THROWS_AS(renyi_entropy(p, -1.0), Error);
}

TEST_CASE("state families") {
  for (int n : {2, 3, 4}) {
    const double x = 0.3;
    const auto spec = werner(n, x).spectrum();
    const double n2 = n * n;
    CHECK_NEAR(spec[0], (1 + (n2 - 1) * x) / n2, 1e-14);
    for (int i = 1; i < n * n; ++i) CHECK_NEAR(spec[i], (1 - x) / n2, 1e-14);
  }
  ComplexMatrix wern2(4, 4);
  const double x = 0.4;
  wern2 << (1 + x) / 4, 0, 0, x / 2, 0, (1 - x) / 4, 0, 0, 0, 0, (1 - x) / 4, 0, x / 2, 0, 0, (1 + x) / 4;
  CHECK((werner(2, x).matrix() - wern2).norm() < 1e-15);

  const auto tiles = tiles_upb_state();
  CHECK(tiles.dims() == BipartiteDims(3, 3));
  CHECK_NEAR(tiles.matrix().trace().real(), 1.0, 1e-14);
  int rank = 0;
  for (double v : tiles.spectrum()) rank += v > 1e-10;
  CHECK(rank == 4);
  const auto upb = tiles_upb_vectors();
  REQUIRE(upb.size() == 5);
  for (std::size_t i = 0; i < upb.size(); ++i) {
    CHECK_NEAR(upb[i].norm(), 1.0, 1e-14);
    CHECK(std::abs((upb[i].adjoint() * tiles.matrix() * upb[i])(0)) < 1e-14);
    for (std::size_t j = i + 1; j < upb.size(); ++j) CHECK(std::abs(upb[i].dot(upb[j])) < 1e-14);
  }

  CHECK((pseudo_pure(max_entangled(3), 0.0).matrix() - ComplexMatrix::Identity(9, 9) / 9.0).norm() < 1e-15);
  CHECK_NEAR(psi_theta(1.3).amplitudes().norm(), 1.0, 1e-15);
  for (auto k : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus}) {
    check_close(schmidt(bell(k)).coefficients, {0.5, 0.5}, 1e-14);
  }
  Rng rng(210);
  check_close(schmidt(max_entangled_from_unitary(random_unitary(4, rng))).coefficients, {0.25, 0.25, 0.25, 0.25},
              1e-12);

  CHECK(kind_of([] { werner(2, 1.5); }) == ErrorKind::ParameterOutOfRange);
  CHECK(kind_of([] { sigma_h(-0.1); }) == ErrorKind::ParameterOutOfRange);
  CHECK(kind_of([] { rho_xtheta(0.5, 7.0); }) == ErrorKind::ParameterOutOfRange);
  CHECK(kind_of([] { pseudo_pure(bell(BellKind::PhiPlus), 2.0); }) == ErrorKind::ParameterOutOfRange);
  CHECK(kind_of([] { max_entangled_from_unitary(ComplexMatrix::Ones(2, 2)); }) == ErrorKind::ParameterOutOfRange);
}
