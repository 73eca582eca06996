#pragma once

#include <vector>

#include "senet/types.hpp"

namespace senet {

// Undirected weighted edge; endpoints are stored with u < v.
struct GraphEdge {
  int u = 0;
  int v = 0;
  double weight = 1.0;
};

// Undirected weighted graph over coefficient indices 0..size()-1.  Edge
// weights express similarity: a positive weight pulls the two coefficients
// together, a negative weight pulls them toward opposite signs.
class StructuredGraph {
 public:
  StructuredGraph(int n_vertices, std::vector<GraphEdge> edges);

  // chain 0-1-2-...-p-1 with unit weights
  static StructuredGraph path(int p);

  // rows x cols lattice with 4-neighborhoods and unit weights;
  // vertex (i, j) has index i*cols + j
  static StructuredGraph grid(int rows, int cols);

  // Cartesian product: vertex (a, b) has index a*g2.size() + b; edges of g1
  // replicate across fixed b, edges of g2 across fixed a, weights inherited
  // from the moving coordinate.
  static StructuredGraph cartesian_product(const StructuredGraph& g1,
                                           const StructuredGraph& g2);

  // Symmetrized k-nearest-neighbor graph over the rows of `points`
  // (Euclidean metric), unit weights, distance ties broken by smaller index.
  static StructuredGraph knn(const Matrix& points, int k);

  // Same, but from a precomputed symmetric distance matrix.
  static StructuredGraph knn_from_distances(const Matrix& distances, int k);

  int size() const { return n_vertices_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }

  bool connected() const;
  bool nonnegative_weights() const;

  // Sum over edges of |w| * (beta_u - sign(w) * beta_v)^2.  Equals the
  // quadratic form of the graph penalty matrix; kept as an independent route
  // for testing that identity.
  double edge_energy(const Vector& beta) const;

 private:
  int n_vertices_ = 0;
  std::vector<GraphEdge> edges_;
};

// Symmetric positive semidefinite penalty matrix L with a factor Q such that
// L = Q' Q.  The factor is what turns the quadratic penalty into synthetic
// least-squares rows.
class PenaltyMatrix {
 public:
  // Graph version: diagonal entries sum |w| over incident edges, off-diagonal
  // entries are -w.  For graphs with only nonnegative weights the factor is
  // the signed incidence matrix with rows sqrt(w) * (e_u - e_v), one per
  // edge; otherwise it falls back to an eigendecomposition (eigenvalues
  // above 1e-12 kept) after verifying the matrix is positive semidefinite.
  static PenaltyMatrix from_graph(const StructuredGraph& g);

  // L = I (plain quadratic shrinkage), Q = I.
  static PenaltyMatrix identity(int p);

  // Arbitrary user matrix: symmetrized, then eigendecomposed; smallest
  // eigenvalue below -1e-8 raises InvalidPenalty.
  static PenaltyMatrix from_matrix(const Matrix& lambda);

  int dim() const { return static_cast<int>(lambda_.rows()); }
  int factor_rows() const { return static_cast<int>(factor_.rows()); }
  const Matrix& matrix() const { return lambda_; }
  const Matrix& factor() const { return factor_; }

  // beta' L beta
  double energy(const Vector& beta) const;

 private:
  PenaltyMatrix(Matrix lambda, Matrix factor);
  Matrix lambda_;
  Matrix factor_;
};

}  // namespace senet
