#include "hankel/geometry.hpp"

#include "hankel/errors.hpp"
#include "hankel/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hankel {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

double StarBoundary::radius(double theta) const {
    double r = c0;
    for (std::size_t m = 0; m < cos_coeffs.size(); ++m) r += cos_coeffs[m] * std::cos((m + 1) * theta);
    for (std::size_t m = 0; m < sin_coeffs.size(); ++m) r += sin_coeffs[m] * std::sin((m + 1) * theta);
    return r;
}

double StarBoundary::radius_derivative(double theta) const {
    double dr = 0.0;
    for (std::size_t m = 0; m < cos_coeffs.size(); ++m)
        dr -= (m + 1) * cos_coeffs[m] * std::sin((m + 1) * theta);
    for (std::size_t m = 0; m < sin_coeffs.size(); ++m)
        dr += (m + 1) * sin_coeffs[m] * std::cos((m + 1) * theta);
    return dr;
}

Domain Domain::interval(double lo, double hi) {
    if (!(lo < hi)) throw InputError("interval requires lo < hi");
    return Domain(Interval{lo, hi}, 1, true);
}

Domain Domain::disk(Eigen::Vector2d center, double radius) {
    if (!(radius > 0.0)) throw InputError("disk radius must be positive");
    return Domain(Disk{center, radius}, 2, true);
}

Domain Domain::box(Eigen::Vector2d lo, Eigen::Vector2d hi) {
    if (!(lo.array() < hi.array()).all()) throw InputError("box requires lo < hi componentwise");
    return Domain(AxisBox{lo, hi}, 2, false);
}

Domain Domain::star(Eigen::Vector2d center, double c0, std::vector<double> cos_coeffs,
                    std::vector<double> sin_coeffs) {
    StarBoundary star{center, c0, std::move(cos_coeffs), std::move(sin_coeffs)};
    double min_r = star.radius(0.0);
    for (int j = 1; j < 4096; ++j) min_r = std::min(min_r, star.radius(kTwoPi * j / 4096.0));
    if (!(min_r > 0.0)) throw InputError("star boundary radius must stay positive");
    return Domain(std::move(star), 2, true);
}

double Domain::extent() const {
    return std::visit(
        overloaded{
            [](const Interval& s) { return std::max(std::abs(s.lo), std::abs(s.hi)); },
            [](const Disk& s) { return s.center.cwiseAbs().maxCoeff() + s.radius; },
            [](const AxisBox& s) { return std::max(s.lo.cwiseAbs().maxCoeff(), s.hi.cwiseAbs().maxCoeff()); },
            [](const StarBoundary& s) {
                double e = 0.0;
                for (int j = 0; j < 4096; ++j) {
                    const double th = kTwoPi * j / 4096.0;
                    const double r = s.radius(th);
                    e = std::max({e, std::abs(s.center.x() + r * std::cos(th)),
                                  std::abs(s.center.y() + r * std::sin(th))});
                }
                // sampled maximum plus a margin for the inter-sample bulge
                return e * (1.0 + 1e-3);
            }},
        shape_);
}

bool contains_point(const Domain& domain, const Point& p) {
    return std::visit(overloaded{[&](const Interval& s) { return p.x() >= s.lo && p.x() <= s.hi; },
                                 [&](const Disk& s) { return (p - s.center).squaredNorm() <= s.radius * s.radius; },
                                 [&](const AxisBox& s) {
                                     return (p.array() >= s.lo.array()).all() && (p.array() <= s.hi.array()).all();
                                 },
                                 [&](const StarBoundary& s) {
                                     const Eigen::Vector2d rel = p - s.center;
                                     const double rho = rel.norm();
                                     if (rho == 0.0) return true;
                                     return rho <= s.radius(std::atan2(rel.y(), rel.x()));
                                 }},
                      domain.shape());
}

bool contains(const Domain& domain, const Eigen::Ref<const Eigen::VectorXd>& point) {
    if (point.size() != domain.dimension())
        throw InputError("point dimension " + std::to_string(point.size()) + " does not match domain dimension " +
                         std::to_string(domain.dimension()));
    Point p = Point::Zero();
    p.head(point.size()) = point;
    return contains_point(domain, p);
}

double volume(const Domain& domain) {
    return std::visit(overloaded{[](const Interval& s) { return s.hi - s.lo; },
                                 [](const Disk& s) { return std::numbers::pi * s.radius * s.radius; },
                                 [](const AxisBox& s) { return (s.hi - s.lo).prod(); },
                                 [](const StarBoundary& s) {
                                     // radial integral is exact: area = 1/2 int r(th)^2 dth
                                     auto half_r2 = [&](double th) {
                                         const double r = s.radius(th);
                                         return 0.5 * r * r;
                                     };
                                     return integrate(half_r2, 0.0, kTwoPi, 0.0, 1e-13).value;
                                 }},
                      domain.shape());
}

namespace {

BoundaryQuadrature disk_rule(const Disk& s, int m) {
    BoundaryQuadrature q;
    q.nodes.reserve(m);
    for (int j = 0; j < m; ++j) {
        const double th = kTwoPi * j / m;
        const Point n(std::cos(th), std::sin(th));
        q.nodes.push_back(s.center + s.radius * n);
        q.normals.push_back(n);
        q.weights.push_back(kTwoPi * s.radius / m);
    }
    return q;
}

BoundaryQuadrature star_rule(const StarBoundary& s, int m) {
    BoundaryQuadrature q;
    for (int j = 0; j < m; ++j) {
        const double th = kTwoPi * j / m;
        const double r = s.radius(th);
        const double dr = s.radius_derivative(th);
        const Point radial(std::cos(th), std::sin(th));
        const Point tangent = dr * radial + r * Point(-radial.y(), radial.x());
        const double speed = tangent.norm();
        q.nodes.push_back(s.center + r * radial);
        q.normals.push_back(Point(tangent.y(), -tangent.x()) / speed);
        q.weights.push_back(kTwoPi / m * speed);
    }
    return q;
}

BoundaryQuadrature box_rule(const AxisBox& s, int m) {
    constexpr int panel = 8;
    const auto [x, w] = gauss_legendre(panel);
    const int panels_per_edge = std::max(1, (m / 4 + panel - 1) / panel);
    const std::array<Point, 4> corners = {s.lo, Point(s.hi.x(), s.lo.y()), s.hi, Point(s.lo.x(), s.hi.y())};
    const std::array<Point, 4> normals = {Point(0, -1), Point(1, 0), Point(0, 1), Point(-1, 0)};
    BoundaryQuadrature q;
    for (int e = 0; e < 4; ++e) {
        const Point a = corners[e];
        const Point b = corners[(e + 1) % 4];
        const double len = (b - a).norm();
        for (int p = 0; p < panels_per_edge; ++p) {
            const double t0 = double(p) / panels_per_edge;
            const double t1 = double(p + 1) / panels_per_edge;
            for (int k = 0; k < panel; ++k) {
                const double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * x(k);
                q.nodes.push_back(a + t * (b - a));
                q.normals.push_back(normals[e]);
                q.weights.push_back(0.5 * (t1 - t0) * w(k) * len);
            }
        }
    }
    return q;
}

double total(const BoundaryQuadrature& q) {
    double s = 0.0;
    for (double w : q.weights) s += w;
    return s;
}

} // namespace

BoundaryQuadrature boundary_quadrature(const Domain& domain, int m) {
    if (domain.dimension() == 1) {
        const auto& s = std::get<Interval>(domain.shape());
        BoundaryQuadrature q;
        q.nodes = {Point(s.lo, 0.0), Point(s.hi, 0.0)};
        q.normals = {Point(-1.0, 0.0), Point(1.0, 0.0)};
        q.weights = {1.0, 1.0};
        return q;
    }
    if (m < 8) throw InputError("boundary quadrature needs m >= 8 nodes in two dimensions");
    auto rule = [&](int count) {
        return std::visit(overloaded{[&](const Disk& s) { return disk_rule(s, count); },
                                     [&](const StarBoundary& s) { return star_rule(s, count); },
                                     [&](const AxisBox& s) { return box_rule(s, count); },
                                     [](const Interval&) { return BoundaryQuadrature{}; }},
                          domain.shape());
    };
    BoundaryQuadrature q = rule(m);
    q.measure_error_estimate = std::abs(total(q) - total(rule(std::max(8, m / 2))));
    return q;
}

std::vector<BoundaryArc> boundary_arcs(const Domain& domain) {
    if (domain.dimension() != 2) throw InputError("boundary arcs are defined for two-dimensional domains");
    return std::visit(
        overloaded{
            [](const Disk& s) {
                return std::vector<BoundaryArc>{
                    {0.0, kTwoPi, true, [s](double t) -> Point { return s.center + s.radius * Point(std::cos(t), std::sin(t)); },
                     [](double t) -> Point { return Point(std::cos(t), std::sin(t)); },
                     [s](double) { return s.radius; }}};
            },
            [](const StarBoundary& s) {
                auto tangent = [s](double t) -> Point {
                    const Point radial(std::cos(t), std::sin(t));
                    return s.radius_derivative(t) * radial + s.radius(t) * Point(-radial.y(), radial.x());
                };
                return std::vector<BoundaryArc>{
                    {0.0, kTwoPi, true,
                     [s](double t) -> Point { return s.center + s.radius(t) * Point(std::cos(t), std::sin(t)); },
                     [tangent](double t) -> Point {
                         const Point tg = tangent(t);
                         return Point(tg.y(), -tg.x()) / tg.norm();
                     },
                     [tangent](double t) { return tangent(t).norm(); }}};
            },
            [](const AxisBox& s) {
                const std::array<Point, 4> corners = {s.lo, Point(s.hi.x(), s.lo.y()), s.hi, Point(s.lo.x(), s.hi.y())};
                const std::array<Point, 4> normals = {Point(0, -1), Point(1, 0), Point(0, 1), Point(-1, 0)};
                std::vector<BoundaryArc> arcs;
                for (int e = 0; e < 4; ++e) {
                    const Point a = corners[e];
                    const Point b = corners[(e + 1) % 4];
                    const Point n = normals[e];
                    const double len = (b - a).norm();
                    arcs.push_back({0.0, 1.0, false, [a, b](double t) -> Point { return a + t * (b - a); },
                                    [n](double) { return n; }, [len](double) { return len; }});
                }
                return arcs;
            },
            [](const Interval&) { return std::vector<BoundaryArc>{}; }},
        domain.shape());
}

DomainCubature domain_cubature(const Domain& domain, int level) {
    const int radial = 8 * level;
    const int angular = 32 * level;
    DomainCubature c;
    const auto [x, w] = gauss_legendre(radial);
    auto gl_on = [&](double a, double b, auto&& emit) {
        const int panels = level;
        for (int p = 0; p < panels; ++p) {
            const double lo = a + (b - a) * p / panels;
            const double hi = a + (b - a) * (p + 1) / panels;
            for (int k = 0; k < radial; ++k) emit(0.5 * (lo + hi) + 0.5 * (hi - lo) * x(k), 0.5 * (hi - lo) * w(k));
        }
    };
    std::visit(overloaded{[&](const Interval& s) {
                              gl_on(s.lo, s.hi, [&](double t, double wt) {
                                  c.nodes.emplace_back(t, 0.0);
                                  c.weights.push_back(wt);
                              });
                          },
                          [&](const AxisBox& s) {
                              gl_on(s.lo.x(), s.hi.x(), [&](double t1, double w1) {
                                  gl_on(s.lo.y(), s.hi.y(), [&](double t2, double w2) {
                                      c.nodes.emplace_back(t1, t2);
                                      c.weights.push_back(w1 * w2);
                                  });
                              });
                          },
                          [&](const Disk& s) {
                              for (int j = 0; j < angular; ++j) {
                                  const double th = kTwoPi * j / angular;
                                  const Point dir(std::cos(th), std::sin(th));
                                  gl_on(0.0, s.radius, [&](double r, double wr) {
                                      c.nodes.push_back(s.center + r * dir);
                                      c.weights.push_back(wr * r * kTwoPi / angular);
                                  });
                              }
                          },
                          [&](const StarBoundary& s) {
                              for (int j = 0; j < angular; ++j) {
                                  const double th = kTwoPi * j / angular;
                                  const Point dir(std::cos(th), std::sin(th));
                                  gl_on(0.0, s.radius(th), [&](double r, double wr) {
                                      c.nodes.push_back(s.center + r * dir);
                                      c.weights.push_back(wr * r * kTwoPi / angular);
                                  });
                              }
                          }},
               domain.shape());
    return c;
}

} // namespace hankel
