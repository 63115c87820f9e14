#pragma once

#include <Eigen/Dense>

#include <functional>
#include <variant>
#include <vector>

namespace hankel {

/// Spatial or frequency point. One-dimensional domains only read the first coordinate.
using Point = Eigen::Vector2d;

struct Interval {
    double lo;
    double hi;
};

struct Disk {
    Eigen::Vector2d center;
    double radius;
};

struct AxisBox {
    Eigen::Vector2d lo;
    Eigen::Vector2d hi;
};

/// Star-shaped region r <= c0 + sum_m (cos_m cos(m th) + sin_m sin(m th)) around `center`.
struct StarBoundary {
    Eigen::Vector2d center;
    double c0;
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;

    double radius(double theta) const;
    double radius_derivative(double theta) const;
};

using Shape = std::variant<Interval, Disk, AxisBox, StarBoundary>;

/// A region Lambda or Omega in R^d, d in {1, 2}. Immutable once constructed.
class Domain {
public:
    static Domain interval(double lo, double hi);
    static Domain disk(Eigen::Vector2d center, double radius);
    static Domain box(Eigen::Vector2d lo, Eigen::Vector2d hi);
    static Domain star(Eigen::Vector2d center, double c0, std::vector<double> cos_coeffs,
                       std::vector<double> sin_coeffs);

    int dimension() const { return dimension_; }
    /// True iff the boundary is at least C^3 (false for boxes because of the corners).
    bool smooth() const { return smooth_; }
    const Shape& shape() const { return shape_; }

    /// Largest |coordinate| over the closed domain (sup-norm extent about the origin).
    double extent() const;

private:
    Domain(Shape shape, int dimension, bool smooth)
        : shape_(std::move(shape)), dimension_(dimension), smooth_(smooth) {}

    Shape shape_;
    int dimension_;
    bool smooth_;
};

/// Closed-set indicator. Throws InputError if `point.size()` differs from the domain dimension.
bool contains(const Domain& domain, const Eigen::Ref<const Eigen::VectorXd>& point);

/// Unchecked indicator on a padded point (second coordinate ignored for d = 1).
bool contains_point(const Domain& domain, const Point& point);

double volume(const Domain& domain);

struct BoundaryQuadrature {
    std::vector<Point> nodes;
    std::vector<Point> normals; ///< exterior unit normals; d = 1 uses the first coordinate (+-1)
    std::vector<double> weights;
    /// |sum(weights) at m - sum(weights) at m/2|, zero where the rule is exact.
    double measure_error_estimate = 0.0;
};

BoundaryQuadrature boundary_quadrature(const Domain& domain, int m);

/// A smooth piece of a boundary curve, parameterised on [t0, t1]. Closed curves are one arc
/// with `periodic` set; boxes are four straight arcs.
struct BoundaryArc {
    double t0;
    double t1;
    bool periodic;
    std::function<Point(double)> point;
    std::function<Point(double)> normal;
    std::function<double(double)> speed;
};

/// Arcs of a two-dimensional boundary. Throws InputError for d = 1.
std::vector<BoundaryArc> boundary_arcs(const Domain& domain);

/// Tensor cubature over the domain (nodes, weights summing to the volume). `level` >= 1 refines.
struct DomainCubature {
    std::vector<Point> nodes;
    std::vector<double> weights;
};

DomainCubature domain_cubature(const Domain& domain, int level);

} // namespace hankel
