#include <doctest.h>

#include <cmath>
#include <vector>

#include "ppdepth/geometry.hpp"
#include "support.hpp"

using namespace ppdepth;

namespace {

// All pairwise permutations composed left-to-right: (r then q)(i) = q(r(i)).
std::vector<int> compose(const std::vector<int>& r, const std::vector<int>& q) {
  std::vector<int> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = q[r[i]];
  return out;
}

}  // namespace

TEST_CASE("helmert contrast matrix satisfies the defining identities") {
  for (int k = 1; k <= 8; ++k) {
    const ContrastMatrix psi = build_contrast_matrix(k);
    const Eigen::MatrixXd& m = psi.psi();
    CHECK((m * m.transpose() - Eigen::MatrixXd::Identity(k, k))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    const Eigen::MatrixXd centering =
        Eigen::MatrixXd::Identity(k + 1, k + 1) -
        Eigen::MatrixXd::Constant(k + 1, k + 1, 1.0 / (k + 1));
    CHECK((m.transpose() * m - centering).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((m * Eigen::VectorXd::Ones(k + 1)).cwiseAbs().maxCoeff() < 1e-12);
    for (int p = 0; p <= k; ++p) {
      CHECK(m.col(p).squaredNorm() ==
            doctest::Approx(k / (k + 1.0)).epsilon(1e-12));
      for (int q = p + 1; q <= k; ++q) {
        CHECK(m.col(p).dot(m.col(q)) ==
              doctest::Approx(-1.0 / (k + 1)).epsilon(1e-12));
        // Regular simplex: every edge has length sqrt(2).
        CHECK((m.col(p) - m.col(q)).norm() ==
              doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
      }
    }
    // The centroid of the columns is the origin.
    CHECK((m.rowwise().mean()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("helmert entries match the closed form for small k") {
  const ContrastMatrix k1 = build_contrast_matrix(1);
  CHECK(k1.psi()(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(k1.psi()(0, 1) == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));

  const ContrastMatrix k2 = build_contrast_matrix(2);
  CHECK(k2.psi()(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(k2.psi()(0, 1) == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(k2.psi()(0, 2) == 0.0);
  CHECK(k2.psi()(1, 0) == doctest::Approx(1.0 / std::sqrt(6.0)));
  CHECK(k2.psi()(1, 1) == doctest::Approx(1.0 / std::sqrt(6.0)));
  CHECK(k2.psi()(1, 2) == doctest::Approx(-2.0 / std::sqrt(6.0)));

  CHECK_THROWS_AS(build_contrast_matrix(0), std::invalid_argument);
}

TEST_CASE("point process boundary detection") {
  const TimeDomain d(0.0, 3.0);
  CHECK_FALSE(PointProcess(d, {1.0, 2.0}).on_boundary());
  CHECK(PointProcess(d, {1.0, 1.0, 2.0}).on_boundary());
  CHECK(PointProcess(d, {0.0, 2.0}).on_boundary());
  CHECK(PointProcess(d, {1.0, 3.0}).on_boundary());
  CHECK_FALSE(PointProcess(d, {}).on_boundary());
  CHECK_THROWS_AS(PointProcess(d, {2.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(PointProcess(d, {-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(TimeDomain(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("to_iet differences events against the domain endpoints") {
  const InterEventTimes u =
      to_iet(PointProcess(TimeDomain(0.0, 2.0), {0.5, 1.0}));
  CHECK(u.gaps() == std::vector<double>{0.5, 0.5, 1.0});
  CHECK(u.total() == 2.0);
  CHECK(u.interior());

  const InterEventTimes empty = to_iet(PointProcess(TimeDomain(0.0, 5.0), {}));
  CHECK(empty.gaps() == std::vector<double>{5.0});

  const InterEventTimes tied =
      to_iet(PointProcess(TimeDomain(0.0, 3.0), {1.0, 1.0, 2.0}));
  CHECK(tied.gaps() == std::vector<double>{1.0, 0.0, 1.0, 1.0});
  CHECK_FALSE(tied.interior());
}

TEST_CASE("from_iet inverts to_iet") {
  const TimeDomain d(0.0, 2.0);
  const PointProcess p = from_iet(InterEventTimes(2.0, {0.5, 0.5, 1.0}), d);
  CHECK(p.events() == std::vector<double>{0.5, 1.0});

  CHECK(from_iet(InterEventTimes(5.0, {5.0}), TimeDomain(0.0, 5.0))
            .events()
            .empty());
  CHECK(from_iet(InterEventTimes(3.0, {1.0, 1.0, 1.0}), TimeDomain(0.0, 3.0))
            .events() == std::vector<double>{1.0, 2.0});
  CHECK_THROWS_AS(from_iet(InterEventTimes(2.0, {1.0, 1.0}), TimeDomain(0, 5)),
                  std::invalid_argument);
}

TEST_CASE("ilr maps the barycenter to the origin and rejects the boundary") {
  const ContrastMatrix psi = build_contrast_matrix(2);
  const IlrVector at_center = ilr(InterEventTimes(3.0, {1.0, 1.0, 1.0}), psi);
  CHECK(at_center.v.cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS(ilr(InterEventTimes(2.0, {1.0, 0.0, 1.0}), psi),
                  BoundaryError);
}

TEST_CASE("ilr is an isometry onto the centered log vector") {
  // |ilr(u)|^2 must equal sum_i log(u_i/g)^2; for (0.5, 0.5, 1.0) the sum is
  // 2 log(2^(-1/3))^2 + log(2^(2/3))^2 = (2/3) log(2)^2.
  const ContrastMatrix psi = build_contrast_matrix(2);
  const IlrVector v = ilr(InterEventTimes(2.0, {0.5, 0.5, 1.0}), psi);
  const double expected = 2.0 / 3.0 * std::log(2.0) * std::log(2.0);
  CHECK(v.v.squaredNorm() == doctest::Approx(expected).epsilon(1e-13));

  SeededRng rng(2024, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t parts = 2 + trial % 6;
    const std::vector<double> gaps =
        testsupport::random_simplex(parts, 4.0, rng);
    const InterEventTimes u(4.0, gaps);
    const ContrastMatrix basis =
        build_contrast_matrix(static_cast<int>(parts) - 1);
    double sum_sq = 0.0;
    double log_mean = 0.0;
    for (double g : gaps) log_mean += std::log(g);
    log_mean /= static_cast<double>(parts);
    for (double g : gaps) {
      sum_sq += (std::log(g) - log_mean) * (std::log(g) - log_mean);
    }
    const double norm_sq = ilr(u, basis).v.squaredNorm();
    CHECK(std::abs(norm_sq - sum_sq) <= 1e-9 * std::max(1.0, sum_sq));
  }
}

TEST_CASE("ilr_inverse round-trips and handles extreme vectors") {
  const ContrastMatrix psi = build_contrast_matrix(2);
  const InterEventTimes center = ilr_inverse(
      IlrVector{Eigen::VectorXd::Zero(2)}, psi, 3.0);
  for (double g : center.gaps()) CHECK(g == doctest::Approx(1.0).epsilon(1e-15));

  const InterEventTimes u(2.0, {0.2, 0.7, 1.1});
  const InterEventTimes back = ilr_inverse(ilr(u, psi), psi, 2.0);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back.gaps()[i] == doctest::Approx(u.gaps()[i]).epsilon(1e-12));
  }

  Eigen::VectorXd far(2);
  far << 30.0, 40.0;  // |v| = 50
  const InterEventTimes extreme = ilr_inverse(IlrVector{far}, psi, 2.0);
  double sum = 0.0;
  for (double g : extreme.gaps()) {
    CHECK(g > 0.0);
    sum += g;
  }
  CHECK(sum == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("round trip property over random interior points") {
  SeededRng rng(99, 0);
  const double total = 7.5;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t parts = 2 + trial % 7;
    const ContrastMatrix psi =
        build_contrast_matrix(static_cast<int>(parts) - 1);
    const InterEventTimes u(
        total, testsupport::random_simplex(parts, total, rng));
    const InterEventTimes back = ilr_inverse(ilr(u, psi), psi, total);
    for (std::size_t i = 0; i < parts; ++i) {
      CHECK(std::abs(back.gaps()[i] - u.gaps()[i]) < 1e-9 * total);
    }
  }
}

TEST_CASE("the ilr norm does not depend on the contrast basis") {
  const int k = 3;
  const ContrastMatrix helmert = build_contrast_matrix(k);
  Eigen::MatrixXd permuted(k, k + 1);
  const std::vector<int> order = {2, 0, 3, 1};
  for (int i = 0; i <= k; ++i) permuted.col(i) = helmert.psi().col(order[i]);
  const ContrastMatrix alt{permuted};

  SeededRng rng(7, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const InterEventTimes u(
        1.0, testsupport::random_simplex(k + 1, 1.0, rng));
    CHECK(std::abs(ilr(u, helmert).v.norm() - ilr(u, alt).v.norm()) < 1e-10);
  }
}

TEST_CASE("permutation orthogonal matrices") {
  const ContrastMatrix psi = build_contrast_matrix(2);

  const Eigen::MatrixXd identity =
      permutation_orthogonal(psi, {0, 1, 2});
  CHECK((identity - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-12);

  // A 3-cycle acts as a rotation by 2*pi/3: det +1, trace 2 cos(2*pi/3) = -1.
  const Eigen::MatrixXd rotation = permutation_orthogonal(psi, {1, 2, 0});
  CHECK(rotation.determinant() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rotation.trace() == doctest::Approx(-1.0).epsilon(1e-10));

  // A transposition acts as a reflection: det -1.
  const Eigen::MatrixXd reflection = permutation_orthogonal(psi, {1, 0, 2});
  CHECK(reflection.determinant() == doctest::Approx(-1.0).epsilon(1e-10));

  CHECK_THROWS_AS(permutation_orthogonal(psi, {0, 0, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(permutation_orthogonal(psi, {0, 1}), std::invalid_argument);
}

TEST_CASE("permutation orthogonal matrices satisfy the group law and move "
          "columns as advertised") {
  SeededRng rng(11, 0);
  for (int k = 2; k <= 4; ++k) {
    const ContrastMatrix psi = build_contrast_matrix(k);
    for (int trial = 0; trial < 20; ++trial) {
      const std::vector<int> r = testsupport::random_permutation(k + 1, rng);
      const std::vector<int> q = testsupport::random_permutation(k + 1, rng);
      const Eigen::MatrixXd ar = permutation_orthogonal(psi, r);
      const Eigen::MatrixXd aq = permutation_orthogonal(psi, q);
      const Eigen::MatrixXd composed =
          permutation_orthogonal(psi, compose(r, q));
      CHECK((ar * aq - composed).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((ar * ar.transpose() - Eigen::MatrixXd::Identity(k, k))
                .cwiseAbs()
                .maxCoeff() < 1e-10);
      for (int i = 0; i <= k; ++i) {
        CHECK((ar.transpose() * psi.psi().col(i) - psi.psi().col(r[i]))
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
      }
    }
  }
}
