#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "senet/graph.hpp"
#include "senet/rng.hpp"
#include "senet/types.hpp"

using namespace senet;

namespace {

Vector random_vector(Rng& rng, int p) {
  Vector v(p);
  for (int i = 0; i < p; ++i) v[i] = rng.normal();
  return v;
}

StructuredGraph random_graph(Rng& rng, int p, bool allow_negative) {
  std::vector<GraphEdge> edges;
  for (int u = 0; u < p; ++u) {
    for (int v = u + 1; v < p; ++v) {
      if (rng.uniform() < 0.4) {
        double w = rng.uniform(0.1, 2.0);
        if (allow_negative && rng.uniform() < 0.3) w = -0.2 * w;
        edges.push_back({u, v, w});
      }
    }
  }
  if (edges.empty()) edges.push_back({0, p > 1 ? 1 : 0, 1.0});
  return StructuredGraph(p, edges);
}

}  // namespace

TEST_CASE("path builder") {
  const StructuredGraph g = StructuredGraph::path(3);
  CHECK(g.size() == 3);
  REQUIRE(g.edges().size() == 2);
  CHECK(g.edges()[0].u == 0);
  CHECK(g.edges()[0].v == 1);
  CHECK(g.edges()[0].weight == 1.0);
  CHECK(g.edges()[1].u == 1);
  CHECK(g.edges()[1].v == 2);

  CHECK(StructuredGraph::path(1).edges().empty());
  CHECK(StructuredGraph::path(100).edges().size() == 99);
  CHECK_THROWS_AS(StructuredGraph::path(0), InvalidParameter);
}

TEST_CASE("grid builder") {
  const StructuredGraph g = StructuredGraph::grid(2, 2);
  CHECK(g.size() == 4);
  CHECK(g.edges().size() == 4);
  std::vector<int> degree(4, 0);
  for (const auto& e : g.edges()) {
    ++degree[static_cast<std::size_t>(e.u)];
    ++degree[static_cast<std::size_t>(e.v)];
  }
  for (int d : degree) CHECK(d == 2);

  CHECK(StructuredGraph::grid(20, 20).edges().size() == 760);
  CHECK_THROWS_AS(StructuredGraph::grid(0, 3), InvalidParameter);

  // a single-row grid is the path on the same vertices
  const StructuredGraph row = StructuredGraph::grid(1, 5);
  const StructuredGraph path = StructuredGraph::path(5);
  REQUIRE(row.edges().size() == path.edges().size());
  for (std::size_t i = 0; i < path.edges().size(); ++i) {
    CHECK(row.edges()[i].u == path.edges()[i].u);
    CHECK(row.edges()[i].v == path.edges()[i].v);
  }
}

TEST_CASE("cartesian product equals grid") {
  const StructuredGraph prod =
      StructuredGraph::cartesian_product(StructuredGraph::path(3), StructuredGraph::path(4));
  const StructuredGraph grid = StructuredGraph::grid(3, 4);
  const Matrix lp = PenaltyMatrix::from_graph(prod).matrix();
  const Matrix lg = PenaltyMatrix::from_graph(grid).matrix();
  CHECK((lp - lg).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-12));

  // single-vertex graph is the identity element
  const StructuredGraph single(1, {});
  Rng rng(7);
  const StructuredGraph g = random_graph(rng, 5, false);
  const StructuredGraph prod2 = StructuredGraph::cartesian_product(g, single);
  CHECK(prod2.size() == g.size());
  REQUIRE(prod2.edges().size() == g.edges().size());
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    CHECK(prod2.edges()[i].weight == g.edges()[i].weight);
  }
}

TEST_CASE("knn builder") {
  Matrix pts(3, 1);
  pts << 0.0, 1.0, 2.0;
  const StructuredGraph g = StructuredGraph::knn(pts, 1);
  REQUIRE(g.edges().size() == 2);
  CHECK(g.edges()[0].u == 0);
  CHECK(g.edges()[0].v == 1);
  CHECK(g.edges()[1].u == 1);
  CHECK(g.edges()[1].v == 2);

  // k = n-1 gives the complete graph
  CHECK(StructuredGraph::knn(pts, 2).edges().size() == 3);
  CHECK_THROWS_AS(StructuredGraph::knn(pts, 3), InvalidParameter);
  CHECK_THROWS_AS(StructuredGraph::knn(pts, 0), InvalidParameter);

  // 8 points on a circle with k=2 form the cycle
  Matrix circle(8, 2);
  for (int i = 0; i < 8; ++i) {
    const double a = 2.0 * std::numbers::pi * i / 8.0;
    circle(i, 0) = std::cos(a);
    circle(i, 1) = std::sin(a);
  }
  const StructuredGraph cyc = StructuredGraph::knn(circle, 2);
  CHECK(cyc.edges().size() == 8);
  CHECK(cyc.connected());
  std::vector<int> degree(8, 0);
  for (const auto& e : cyc.edges()) {
    ++degree[static_cast<std::size_t>(e.u)];
    ++degree[static_cast<std::size_t>(e.v)];
  }
  for (int d : degree) CHECK(d == 2);

  // same graph from the precomputed distance matrix
  Matrix dist(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      dist(i, j) = (circle.row(i) - circle.row(j)).norm();
    }
  }
  const StructuredGraph cyc2 = StructuredGraph::knn_from_distances(dist, 2);
  REQUIRE(cyc2.edges().size() == cyc.edges().size());
  for (std::size_t i = 0; i < cyc.edges().size(); ++i) {
    CHECK(cyc2.edges()[i].u == cyc.edges()[i].u);
    CHECK(cyc2.edges()[i].v == cyc.edges()[i].v);
  }
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(StructuredGraph(2, {{0, 0, 1.0}}), InvalidParameter);   // loop
  CHECK_THROWS_AS(StructuredGraph(2, {{0, 2, 1.0}}), InvalidDimension);   // range
  CHECK_THROWS_AS(StructuredGraph(0, {}), InvalidParameter);
  CHECK_THROWS_AS(StructuredGraph(3, {{0, 1, 1.0}, {1, 0, 2.0}}), InvalidParameter);
  const StructuredGraph g(2, {{1, 0, 2.0}});  // endpoints normalized to u < v
  CHECK(g.edges()[0].u == 0);
  CHECK(g.edges()[0].v == 1);
}

TEST_CASE("connectivity") {
  CHECK(StructuredGraph::path(5).connected());
  CHECK(StructuredGraph::grid(3, 3).connected());
  CHECK(StructuredGraph(1, {}).connected());
  CHECK_FALSE(StructuredGraph(4, {{0, 1, 1.0}, {2, 3, 1.0}}).connected());
  CHECK_FALSE(StructuredGraph(2, {}).connected());
}

TEST_CASE("laplacian of the path") {
  const PenaltyMatrix lam = PenaltyMatrix::from_graph(StructuredGraph::path(3));
  Matrix expect(3, 3);
  expect << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  CHECK((lam.matrix() - expect).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(lam.factor_rows() == 2);

  Vector beta(3);
  beta << 1, 2, 4;
  CHECK(lam.energy(beta) == doctest::Approx(5.0));

  // constant vectors are in the null space of a connected graph Laplacian
  CHECK(lam.energy(Vector::Constant(3, 3.7)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK((lam.matrix() * Vector::Ones(3)).cwiseAbs().maxCoeff() ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("single vertex laplacian is zero") {
  const PenaltyMatrix lam = PenaltyMatrix::from_graph(StructuredGraph(1, {}));
  CHECK(lam.dim() == 1);
  CHECK(lam.matrix()(0, 0) == 0.0);
  CHECK(lam.factor_rows() == 0);
}

TEST_CASE("negative weight edge") {
  const StructuredGraph g(2, {{0, 1, -0.5}});
  const PenaltyMatrix lam = PenaltyMatrix::from_graph(g);
  CHECK(lam.matrix()(0, 0) == doctest::Approx(0.5));
  CHECK(lam.matrix()(0, 1) == doctest::Approx(0.5));

  Vector beta(2);
  beta << 1, 1;
  // energy pulls a negative-weight pair toward opposite signs
  CHECK(lam.energy(beta) == doctest::Approx(2.0));
  CHECK(g.edge_energy(beta) == doctest::Approx(2.0));
  beta << 1, -1;
  CHECK(lam.energy(beta) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_FALSE(g.nonnegative_weights());

  // eigendecomposition factor still reconstructs the matrix
  const Matrix q = lam.factor();
  CHECK((q.transpose() * q - lam.matrix()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("energy identities on random graphs") {
  Rng rng(11);
  for (int rep = 0; rep < 60; ++rep) {
    const int p = 2 + rng.uniform_int(7);
    const StructuredGraph g = random_graph(rng, p, rep % 2 == 1);
    PenaltyMatrix lam = PenaltyMatrix::identity(p);
    bool psd = true;
    try {
      lam = PenaltyMatrix::from_graph(g);
    } catch (const InvalidPenalty&) {
      psd = false;  // mixed-sign weights may break positive semidefiniteness
    }
    if (!psd) continue;
    const Vector beta = random_vector(rng, p);

    const double quad = beta.dot(lam.matrix() * beta);
    CHECK(lam.energy(beta) == doctest::Approx(quad).epsilon(1e-12));
    CHECK(std::abs(g.edge_energy(beta) - quad) < 1e-10);
    CHECK(lam.energy(beta) >= -1e-12);

    const Matrix& q = lam.factor();
    CHECK((q.transpose() * q - lam.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((q * beta).squaredNorm() == doctest::Approx(quad).epsilon(1e-9));

    // diagonal equals the weighted degree, off-diagonal the negated weight
    Matrix expect = Matrix::Zero(p, p);
    for (const auto& e : g.edges()) {
      expect(e.u, e.u) += std::abs(e.weight);
      expect(e.v, e.v) += std::abs(e.weight);
      expect(e.u, e.v) -= e.weight;
      expect(e.v, e.u) -= e.weight;
    }
    CHECK((lam.matrix() - expect).cwiseAbs().maxCoeff() < 1e-12);
    if (g.nonnegative_weights()) {
      CHECK(lam.matrix().rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("factor reconstructs at p = 400") {
  const PenaltyMatrix lam = PenaltyMatrix::from_graph(StructuredGraph::grid(20, 20));
  CHECK(lam.dim() == 400);
  CHECK(lam.factor_rows() == 760);
  CHECK((lam.factor().transpose() * lam.factor() - lam.matrix()).cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("identity penalty") {
  const PenaltyMatrix lam = PenaltyMatrix::identity(4);
  CHECK((lam.matrix() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
  Vector beta(4);
  beta << 1, -2, 0, 3;
  CHECK(lam.energy(beta) == doctest::Approx(beta.squaredNorm()));
  CHECK_THROWS_AS(PenaltyMatrix::identity(0), InvalidParameter);
  CHECK_THROWS_AS(lam.energy(Vector::Zero(3)), InvalidDimension);
}

TEST_CASE("custom penalty matrices") {
  Matrix ok(2, 2);
  ok << 2.0, -1.0, -1.0, 2.0;
  const PenaltyMatrix lam = PenaltyMatrix::from_matrix(ok);
  CHECK((lam.matrix() - ok).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((lam.factor().transpose() * lam.factor() - ok).cwiseAbs().maxCoeff() < 1e-10);

  Matrix indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3 and -1
  CHECK_THROWS_AS(PenaltyMatrix::from_matrix(indefinite), InvalidPenalty);

  Matrix asym(2, 2);
  asym << 1.0, 0.5, 0.0, 1.0;
  CHECK_THROWS_AS(PenaltyMatrix::from_matrix(asym), InvalidPenalty);

  CHECK_THROWS_AS(PenaltyMatrix::from_matrix(Matrix::Zero(2, 3)), InvalidDimension);
}
