#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "buildings/complex.hpp"

namespace buildings {

/// A euclidean simplex given by its pairwise vertex distances.
struct Shape {
  std::vector<std::vector<double>> edge_lengths;  // symmetric, zero diagonal
  int dimension() const { return static_cast<int>(edge_lengths.size()) - 1; }
};

/// Shape of one facet: facet vertex k (in sorted order) corresponds to shape
/// vertex permutation[k].
struct ShapeAssignment {
  std::size_t facet;
  std::size_t shape;
  std::vector<std::size_t> permutation;
};

/// Simplicial complex whose facets carry euclidean shapes from a finite table.
/// Faces inherit their shape from any facet containing them, so compatibility
/// amounts to every edge getting one length.
class MZeroComplex {
 public:
  /// Throws InvalidShape if a shape is not a nondegenerate euclidean simplex
  /// (its Gram matrix is not positive definite), a facet has no shape or a
  /// shape of the wrong dimension, or two facets disagree on an edge.
  MZeroComplex(SimplicialComplex complex, std::vector<Shape> shapes, std::vector<ShapeAssignment> assignment);

  /// Every facet a regular simplex with the given edge length.
  static MZeroComplex regular(SimplicialComplex complex, double edge = 1.0);

  const SimplicialComplex& complex() const { return complex_; }
  const std::vector<Shape>& shapes() const { return shapes_; }
  const std::vector<ShapeAssignment>& assignment() const { return assignment_; }

  /// Length of the edge {u, v}; u == v gives 0.
  double edge_length(VertexId u, VertexId v) const;

 private:
  SimplicialComplex complex_;
  std::vector<Shape> shapes_;
  std::vector<ShapeAssignment> assignment_;
  std::map<std::pair<VertexId, VertexId>, double> edges_;
};

/// A point of |K| in barycentric coordinates; entries with weight zero may be
/// omitted. The support must be a simplex.
struct ComplexPoint {
  std::vector<std::pair<VertexId, double>> weights;

  static ComplexPoint vertex(VertexId v) { return {{{v, 1.0}}}; }
  /// Sorted support (vertices with positive weight).
  Simplex support() const;
};

/// A string x_0, ..., x_m. Witness facets are optional; when absent a facet
/// containing both endpoints of each step is looked up.
struct PLString {
  std::vector<ComplexPoint> points;
  std::vector<std::size_t> witnesses;
};

/// Distance between two points of one simplex, measured in that simplex's
/// shape: d^2 = -1/2 sum_ij u_i u_j l_ij^2 with u = x - y. Throws
/// NotInCommonSimplex.
double simplex_distance(const MZeroComplex& mc, const ComplexPoint& x, const ComplexPoint& y);

/// Sum of the within-simplex distances. Throws NotInCommonSimplex.
double string_length(const MZeroComplex& mc, const PLString& s);

struct DistanceOptions {
  double tol = 1e-9;
  std::size_t max_sweeps = 10000;   // descent sweeps per refinement level
  std::size_t max_subdivision = 64; // finest edge subdivision tried
};

struct DistanceResult {
  double distance = 0;
  bool converged = true;  // false: ToleranceNotReached, distance is the best upper bound
  std::size_t levels = 0;
  PLString path;          // a string realizing `distance` (up to rounding)
};

/// Upper-bound optimizer for the intrinsic (string) distance: shortest path in
/// a subdivided visibility graph, then coordinate descent on the crossing
/// points, refined until two levels agree within tol / 2. Points in a common
/// simplex get their shape distance unless a string beats it by more than
/// tol. Throws DisconnectedPoints, or BadComplex for a point whose weights
/// are not barycentric coordinates on a simplex.
DistanceResult intrinsic_distance(const MZeroComplex& mc, const ComplexPoint& x, const ComplexPoint& y,
                                  const DistanceOptions& options = {});

/// min over vertices v and facets a containing v of the distance from v to
/// the face of a opposite v. Infinity when no facet has an edge.
double vertex_separation(const MZeroComplex& mc);

/// Facets of a complex that may be infinite, produced on demand.
class FacetSource {
 public:
  virtual ~FacetSource() = default;
  /// Facets containing v; at most `limit` of them. Sets `truncated` when
  /// there are more.
  virtual std::vector<Simplex> star(VertexId v, std::size_t limit, bool& truncated) const = 0;
  virtual double edge_length(VertexId u, VertexId v) const = 0;
  /// A positive lower bound for vertex_separation (finitely many shapes).
  virtual double separation() const = 0;
  /// False for sources that are only explored lazily.
  virtual bool finite() const = 0;
};

class ExplicitSource : public FacetSource {
 public:
  explicit ExplicitSource(const MZeroComplex& mc);
  std::vector<Simplex> star(VertexId v, std::size_t limit, bool& truncated) const override;
  double edge_length(VertexId u, VertexId v) const override { return mc_.edge_length(u, v); }
  double separation() const override { return separation_; }
  bool finite() const override { return true; }

 private:
  const MZeroComplex& mc_;
  double separation_;
};

/// Vertex 0 joined to each of the vertices 1, 2, 3, ... by a unit segment.
class InfiniteStar : public FacetSource {
 public:
  std::vector<Simplex> star(VertexId v, std::size_t limit, bool& truncated) const override;
  double edge_length(VertexId, VertexId) const override { return 1.0; }
  double separation() const override { return 1.0; }
  bool finite() const override { return false; }
};

/// Unit segments [k, k+1] for k = 0, 1, 2, ...
class HalfLine : public FacetSource {
 public:
  std::vector<Simplex> star(VertexId v, std::size_t limit, bool& truncated) const override;
  double edge_length(VertexId, VertexId) const override { return 1.0; }
  double separation() const override { return 1.0; }
  bool finite() const override { return false; }
};

struct ProperOptions {
  std::size_t star_limit = 64;  // facets fetched per vertex before declaring it infinite
  std::size_t subdivision = 32; // edge subdivision used for ball distances
};

struct ProperReport {
  bool locally_finite = true;
  /// The verdict only covers the region explored up to the declared bounds.
  bool partial = false;
  /// Some vertex within distance r has more than star_limit facets.
  bool ball_unbounded = false;
  double separation = 0;
  std::size_t chain_bound = 0;       // N(r) = ceil(r / separation) + 1
  std::vector<Simplex> explored;     // facets reached by chains of length <= N(r)
  std::vector<Simplex> ball_facets;  // facets meeting the closed ball
  std::vector<VertexId> infinite_vertices;
};

/// Local finiteness verdict and the finite subcomplex containing the closed
/// ball of radius r around a vertex.
ProperReport check_properness(const FacetSource& source, VertexId basepoint, double r,
                              const ProperOptions& options = {});

}  // namespace buildings
