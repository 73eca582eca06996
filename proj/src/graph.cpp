#include "senet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <string>
#include <utility>

namespace senet {

namespace {

std::string edge_label(const GraphEdge& e) {
  return "(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")";
}

}  // namespace

StructuredGraph::StructuredGraph(int n_vertices, std::vector<GraphEdge> edges)
    : n_vertices_(n_vertices), edges_(std::move(edges)) {
  if (n_vertices_ < 1) {
    throw InvalidParameter("graph needs at least one vertex");
  }
  std::set<std::pair<int, int>> seen;
  for (auto& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= n_vertices_ || e.v >= n_vertices_) {
      throw InvalidDimension("edge endpoint out of range: " + edge_label(e));
    }
    if (e.u == e.v) {
      throw InvalidParameter("self-loop not allowed: " + edge_label(e));
    }
    if (!std::isfinite(e.weight)) {
      throw InvalidParameter("edge weight not finite: " + edge_label(e));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.insert({e.u, e.v}).second) {
      throw InvalidParameter("duplicate edge: " + edge_label(e));
    }
  }
}

StructuredGraph StructuredGraph::path(int p) {
  if (p < 1) throw InvalidParameter("path graph needs p >= 1");
  std::vector<GraphEdge> edges;
  edges.reserve(static_cast<std::size_t>(p > 0 ? p - 1 : 0));
  for (int i = 0; i + 1 < p; ++i) edges.push_back({i, i + 1, 1.0});
  return {p, std::move(edges)};
}

StructuredGraph StructuredGraph::grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw InvalidParameter("grid needs rows, cols >= 1");
  std::vector<GraphEdge> edges;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const int v = i * cols + j;
      if (j + 1 < cols) edges.push_back({v, v + 1, 1.0});
      if (i + 1 < rows) edges.push_back({v, v + cols, 1.0});
    }
  }
  return {rows * cols, std::move(edges)};
}

StructuredGraph StructuredGraph::cartesian_product(const StructuredGraph& g1,
                                                   const StructuredGraph& g2) {
  const int n1 = g1.size(), n2 = g2.size();
  std::vector<GraphEdge> edges;
  for (const auto& e : g1.edges()) {
    for (int b = 0; b < n2; ++b) {
      edges.push_back({e.u * n2 + b, e.v * n2 + b, e.weight});
    }
  }
  for (const auto& e : g2.edges()) {
    for (int a = 0; a < n1; ++a) {
      edges.push_back({a * n2 + e.u, a * n2 + e.v, e.weight});
    }
  }
  return {n1 * n2, std::move(edges)};
}

StructuredGraph StructuredGraph::knn(const Matrix& points, int k) {
  const int n = static_cast<int>(points.rows());
  Matrix dist(n, n);
  for (int i = 0; i < n; ++i) {
    dist(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      const double d = (points.row(i) - points.row(j)).norm();
      dist(i, j) = d;
      dist(j, i) = d;
    }
  }
  return knn_from_distances(dist, k);
}

StructuredGraph StructuredGraph::knn_from_distances(const Matrix& distances, int k) {
  const int n = static_cast<int>(distances.rows());
  if (distances.cols() != n) throw InvalidDimension("distance matrix must be square");
  if (n < 2) throw InvalidParameter("knn graph needs at least two points");
  if (k < 1 || k >= n) throw InvalidParameter("knn needs 1 <= k < number of points");
  if (!distances.isApprox(distances.transpose(), 1e-12)) {
    throw InvalidParameter("distance matrix must be symmetric");
  }

  std::set<std::pair<int, int>> chosen;
  std::vector<std::pair<double, int>> order(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n; ++i) {
    order.clear();
    for (int j = 0; j < n; ++j) {
      if (j != i) order.push_back({distances(i, j), j});
    }
    // ties broken by smaller index
    std::sort(order.begin(), order.end());
    for (int m = 0; m < k; ++m) {
      const int j = order[static_cast<std::size_t>(m)].second;
      chosen.insert({std::min(i, j), std::max(i, j)});
    }
  }
  std::vector<GraphEdge> edges;
  edges.reserve(chosen.size());
  for (const auto& [u, v] : chosen) edges.push_back({u, v, 1.0});
  return {n, std::move(edges)};
}

bool StructuredGraph::connected() const {
  if (n_vertices_ <= 1) return true;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_vertices_));
  for (const auto& e : edges_) {
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  std::vector<char> seen(static_cast<std::size_t>(n_vertices_), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++count;
        q.push(w);
      }
    }
  }
  return count == n_vertices_;
}

bool StructuredGraph::nonnegative_weights() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const GraphEdge& e) { return e.weight >= 0.0; });
}

double StructuredGraph::edge_energy(const Vector& beta) const {
  if (beta.size() != n_vertices_) {
    throw InvalidDimension("coefficient vector does not match vertex count");
  }
  double total = 0.0;
  for (const auto& e : edges_) {
    const double sign = e.weight >= 0.0 ? 1.0 : -1.0;
    const double diff = beta[e.u] - sign * beta[e.v];
    total += std::abs(e.weight) * diff * diff;
  }
  return total;
}

PenaltyMatrix::PenaltyMatrix(Matrix lambda, Matrix factor)
    : lambda_(std::move(lambda)), factor_(std::move(factor)) {}

PenaltyMatrix PenaltyMatrix::from_graph(const StructuredGraph& g) {
  const int p = g.size();
  Matrix lambda = Matrix::Zero(p, p);
  for (const auto& e : g.edges()) {
    lambda(e.u, e.u) += std::abs(e.weight);
    lambda(e.v, e.v) += std::abs(e.weight);
    lambda(e.u, e.v) -= e.weight;
    lambda(e.v, e.u) -= e.weight;
  }

  if (g.nonnegative_weights()) {
    // signed incidence rows sqrt(w) * (e_u - e_v); Q'Q telescopes to L
    const auto r = static_cast<Eigen::Index>(g.edges().size());
    Matrix q = Matrix::Zero(r, p);
    Eigen::Index row = 0;
    for (const auto& e : g.edges()) {
      const double s = std::sqrt(e.weight);
      q(row, e.u) = s;
      q(row, e.v) = -s;
      ++row;
    }
    return {std::move(lambda), std::move(q)};
  }
  return from_matrix(lambda);
}

PenaltyMatrix PenaltyMatrix::identity(int p) {
  if (p < 1) throw InvalidParameter("penalty dimension must be positive");
  return {Matrix::Identity(p, p), Matrix::Identity(p, p)};
}

PenaltyMatrix PenaltyMatrix::from_matrix(const Matrix& lambda) {
  if (lambda.rows() != lambda.cols()) {
    throw InvalidDimension("penalty matrix must be square");
  }
  if (lambda.rows() < 1) throw InvalidParameter("penalty dimension must be positive");
  if ((lambda - lambda.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw InvalidPenalty("penalty matrix must be symmetric");
  }
  const Matrix sym = 0.5 * (lambda + lambda.transpose());
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw SingularSystem("eigendecomposition of penalty matrix failed");
  }
  const Vector& values = eig.eigenvalues();
  if (values.minCoeff() < -1e-8) {
    throw InvalidPenalty("penalty matrix is not positive semidefinite");
  }
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] > 1e-12) keep.push_back(i);
  }
  Matrix q(static_cast<Eigen::Index>(keep.size()), sym.rows());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    q.row(static_cast<Eigen::Index>(r)) =
        std::sqrt(values[keep[r]]) * eig.eigenvectors().col(keep[r]).transpose();
  }
  return {sym, std::move(q)};
}

double PenaltyMatrix::energy(const Vector& beta) const {
  if (beta.size() != lambda_.rows()) {
    throw InvalidDimension("coefficient vector does not match penalty dimension");
  }
  return beta.dot(lambda_ * beta);
}

}  // namespace senet
