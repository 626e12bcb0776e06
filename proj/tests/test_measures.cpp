#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "riskinfo/errors.hpp"
#include "riskinfo/measures.hpp"
#include "riskinfo/sample.hpp"

using namespace riskinfo;
using testutil::alpha;
using testutil::binary_entropy;

TEST_CASE("from_weights normalizes") {
  auto d = FiniteDistribution::from_weights(alpha(4), {1, 1, 1, 1});
  for (std::size_t i = 0; i < 4; ++i) CHECK(d[i] == 0.25);

  auto scaled = FiniteDistribution::from_weights(alpha(2), {2, 2});
  CHECK(scaled[0] == 0.5);
  CHECK(scaled[1] == 0.5);

  CHECK_THROWS_AS(FiniteDistribution::from_weights(alpha(2), {0, 0}), Error);
  CHECK_THROWS_AS(FiniteDistribution::from_weights(alpha(2), {-1, 2}), Error);
  CHECK_THROWS_AS(FiniteDistribution::from_weights(alpha(2), {1, 1, 1}), Error);
  try {
    FiniteDistribution::from_weights(alpha(2), {0, 0});
  } catch (const Error& e) {
    CHECK(e.code() == errc::all_zero_weights);
  }
}

TEST_CASE("strict constructor rejects unnormalized input") {
  CHECK_NOTHROW(FiniteDistribution(alpha(2), {0.5, 0.5}));
  CHECK_THROWS_AS(FiniteDistribution(alpha(2), {0.5, 0.6}), Error);
  CHECK_THROWS_AS(FiniteDistribution(alpha(2), {0.7, 0.30001}), Error);
  CHECK_THROWS_AS(FiniteDistribution(alpha(2), {0.7, -0.3}), Error);
}

TEST_CASE("entropy on the worked examples") {
  CHECK(entropy(FiniteDistribution::uniform(alpha(4))) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(entropy(FiniteDistribution::point_mass(alpha(3), 1)) == 0.0);

  // Heavily skewed binary marginal, against the direct binary-entropy oracle.
  auto skew = FiniteDistribution(alpha(2), {0.99999, 0.00001});
  const double oracle = binary_entropy(0.99999);
  CHECK(std::abs(entropy(skew) - oracle) <= 1e-12);
  CHECK(entropy(skew) == doctest::Approx(1.805e-4).epsilon(1e-3));
  CHECK(std::abs(entropy(skew) - 1.805e-4) <= 1e-7);
}

TEST_CASE("joint_from worked examples") {
  auto u2 = FiniteDistribution::uniform(alpha(2));

  auto diag = joint_from(u2, Channel::identity(alpha(2)));
  CHECK(diag.at(0, 0) == 0.5);
  CHECK(diag.at(0, 1) == 0.0);
  CHECK(diag.at(1, 1) == 0.5);

  auto point = FiniteDistribution::point_mass(alpha(2), 1);
  auto bsc = testutil::bsc(0.1, "s");
  auto j_point = joint_from(point, bsc);
  CHECK(j_point.at(0, 0) == 0.0);
  CHECK(j_point.at(0, 1) == 0.0);
  CHECK(j_point.at(1, 0) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(j_point.at(1, 1) == doctest::Approx(0.9).epsilon(1e-14));

  auto j = joint_from(u2, bsc);
  CHECK(j.at(0, 0) == doctest::Approx(0.45).epsilon(1e-14));
  CHECK(j.at(0, 1) == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(j.at(1, 0) == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(j.at(1, 1) == doctest::Approx(0.45).epsilon(1e-14));

  CHECK_THROWS_AS(joint_from(FiniteDistribution::uniform(alpha(3)), bsc), Error);
}

TEST_CASE("channel apply pushes a law forward") {
  auto out = testutil::bsc(0.1).apply(FiniteDistribution::uniform(alpha(2)));
  CHECK(out[0] == doctest::Approx(0.5).epsilon(1e-14));

  auto skewed = testutil::bsc(0.25).apply(FiniteDistribution(alpha(2), {1.0, 0.0}));
  CHECK(skewed[0] == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(skewed[1] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("marginals recover factors") {
  auto u2 = FiniteDistribution::uniform(alpha(2));
  auto j = joint_from(u2, testutil::bsc(0.1));
  auto [row, col] = marginals(j);
  CHECK(row[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(row[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(col[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(col[1] == doctest::Approx(0.5).epsilon(1e-14));

  // Product joint recovers both factors.
  Rng rng(11);
  auto p = testutil::random_distribution(rng, alpha(3, "r"));
  auto q = testutil::random_distribution(rng, alpha(4, "c"));
  Matrix prod(3, 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 4; ++k) prod.at(i, k) = p[i] * q[k];
  auto [pr, qr] = marginals(JointDistribution(p.alphabet(), q.alphabet(), std::move(prod)));
  for (std::size_t i = 0; i < 3; ++i) CHECK(pr[i] == doctest::Approx(p[i]).epsilon(1e-12));
  for (std::size_t k = 0; k < 4; ++k) CHECK(qr[k] == doctest::Approx(q[k]).epsilon(1e-12));
}

TEST_CASE("conditional entropy worked examples") {
  auto u2 = FiniteDistribution::uniform(alpha(2));

  CHECK(conditional_entropy(joint_from(u2, Channel::identity(alpha(2)))) ==
        doctest::Approx(0.0).epsilon(1e-14));

  // Independent uniform(2) x uniform(2).
  Matrix indep(2, 2, 0.25);
  CHECK(conditional_entropy(JointDistribution(alpha(2, "r"), alpha(2, "c"), std::move(indep))) ==
        doctest::Approx(1.0).epsilon(1e-14));

  const double want = binary_entropy(0.1);
  CHECK(want == doctest::Approx(0.46900).epsilon(1e-4));
  CHECK(std::abs(conditional_entropy(joint_from(u2, testutil::bsc(0.1))) - want) <= 1e-12);
}

TEST_CASE("mutual information worked examples") {
  Matrix indep(2, 2, 0.25);
  CHECK(mutual_information(JointDistribution(alpha(2, "r"), alpha(2, "c"), std::move(indep))) ==
        doctest::Approx(0.0).epsilon(1e-14));

  auto diag4 = joint_from(FiniteDistribution::uniform(alpha(4)), Channel::identity(alpha(4)));
  CHECK(mutual_information(diag4) == doctest::Approx(2.0).epsilon(1e-13));

  const double want = 1.0 - binary_entropy(0.1);
  CHECK(want == doctest::Approx(0.53100).epsilon(1e-4));
  auto j = joint_from(FiniteDistribution::uniform(alpha(2)), testutil::bsc(0.1));
  CHECK(std::abs(mutual_information(j) - want) <= 1e-12);
}

TEST_CASE("kl divergence worked examples") {
  auto p = FiniteDistribution(alpha(2), {0.5, 0.5});
  CHECK(kl_divergence(p, p) == 0.0);

  auto point = FiniteDistribution(alpha(2), {1.0, 0.0});
  CHECK(kl_divergence(point, p) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(kl_divergence(p, point), Error);
  try {
    kl_divergence(p, point);
  } catch (const Error& e) {
    CHECK(e.code() == errc::support_violation);
  }
}

TEST_CASE("empirical joint basics") {
  SampleBatch batch(alpha(2, "r"), alpha(2, "c"));
  batch.add("r0", "c0");
  batch.add("r0", "c1");
  batch.add("r1", "c0");
  batch.add("r1", "c1");
  auto [j, meta] = empirical_joint(batch);
  CHECK(meta.count == 4);
  CHECK(meta.correction_bits == 0.0);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k) CHECK(j.at(i, k) == 0.25);

  SampleBatch same(alpha(2, "r"), alpha(2, "c"));
  for (int i = 0; i < 17; ++i) same.add("r1", "c0");
  auto [jp, meta2] = empirical_joint(same, BiasCorrection::miller_madow);
  CHECK(jp.at(1, 0) == 1.0);
  CHECK(meta2.correction_bits == 0.0);  // single occupied cell: (K-1) = 0

  SampleBatch empty(alpha(2, "r"), alpha(2, "c"));
  CHECK_THROWS_AS(empirical_joint(empty), Error);

  CHECK_THROWS_AS(batch.add("bogus", "c0"), Error);
}

TEST_CASE("plug-in MI approaches exact MI on a seeded 4x4 joint") {
  Rng gen(99);
  auto truth = testutil::random_joint(gen, alpha(4, "r"), alpha(4, "c"));
  const double exact = mutual_information(truth);

  // Flattened CDF sampler as the independent route.
  const Matrix& m = truth.mass();
  std::vector<double> flat(m.data(), m.data() + m.size());

  Rng sampler(6);
  double prev_err = 1e9;
  std::size_t idx = 0;
  SampleBatch batch(truth.row_alphabet(), truth.col_alphabet());
  for (std::size_t target : {1000u, 10000u, 100000u, 1000000u}) {
    while (batch.count() < target) {
      const double u = sampler.next_double();
      double cum = 0.0;
      idx = flat.size() - 1;
      for (std::size_t c = 0; c < flat.size(); ++c) {
        cum += flat[c];
        if (u < cum) {
          idx = c;
          break;
        }
      }
      batch.add_index(static_cast<std::uint32_t>(idx / 4),
                      static_cast<std::uint32_t>(idx % 4));
    }
    auto [est, meta] = empirical_joint(batch);
    const double err = std::abs(mutual_information(est) - exact);
    // Monotone trend on this fixed seed; final error within 0.01 bits.
    CHECK(err <= prev_err + 1e-12);
    prev_err = err;
    if (target == 1000000u) CHECK(err <= 0.01);
  }
}

TEST_CASE("measure properties over random objects") {
  Rng rng(20250808);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t nr = 2 + (rng.next_u64() % 5);
    const std::size_t nc = 2 + (rng.next_u64() % 5);
    auto j = testutil::random_joint(rng, alpha(nr, "r"), alpha(nc, "c"));
    auto [row, col] = marginals(j);

    const double h_joint = joint_entropy(j);
    const double h_row = entropy(row);
    const double h_col = entropy(col);
    const double h_cond = conditional_entropy(j);
    const double mi = mutual_information(j);

    CHECK(h_joint >= 0.0);
    CHECK(h_cond >= 0.0);
    CHECK(mi >= 0.0);
    CHECK(h_row <= std::log2(static_cast<double>(nr)) + 1e-12);
    CHECK(h_col <= std::log2(static_cast<double>(nc)) + 1e-12);

    // Chain rule.
    CHECK(std::abs(h_joint - (h_row + h_cond)) <= 1e-12);

    // I <= min{H(row), H(col)}.
    CHECK(mi <= std::min(h_row, h_col) + 1e-12);

    // Symmetry.
    CHECK(std::abs(mi - mutual_information(j.transposed())) <= 1e-12);

    // KL non-negativity on same-alphabet random pairs.
    auto p = testutil::random_distribution(rng, alpha(nr, "p"));
    auto q = testutil::random_distribution(rng, alpha(nr, "p"));
    CHECK(kl_divergence(p, q) >= 0.0);

    // Composing a source with a channel leaves the source as the row law.
    auto ch = testutil::random_channel(rng, alpha(nr, "p"), alpha(nc, "q"));
    auto [row_back, unused] = marginals(joint_from(p, ch));
    for (std::size_t i = 0; i < nr; ++i) CHECK(std::abs(row_back[i] - p[i]) <= 1e-12);
  }
}
