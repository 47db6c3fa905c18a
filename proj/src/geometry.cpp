#include "blaschke_approx/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blaschke_approx {

double DiskPoint::abs() const { return std::hypot(re, im); }

double DiskPoint::angle() const {
    double a = std::atan2(im, re);
    if (a < 0) a += 2.0 * M_PI;
    if (a >= 2.0 * M_PI) a = 0.0;
    return a;
}

DiskPoint make_disk_point(double re, double im) {
    if (!(re * re + im * im < 1.0))
        throw std::domain_error("point is not strictly inside the unit disk");
    return DiskPoint{re, im};
}

DiskPoint make_disk_point(Complex z) { return make_disk_point(z.real(), z.imag()); }

double artanh(double x) { return std::atanh(x); }

double pseudo_dist(const DiskPoint& z, const DiskPoint& w) {
    Complex num = z.c() - w.c();
    Complex den = 1.0 - std::conj(w.c()) * z.c();
    double r = std::abs(num) / std::abs(den);
    return std::min(r, 1.0);
}

double hyp_dist(const DiskPoint& z, const DiskPoint& w) {
    return std::atanh(pseudo_dist(z, w));
}

DiskPoint mobius_to_origin(const DiskPoint& a, const DiskPoint& z) {
    Complex num = a.c() - z.c();
    Complex den = 1.0 - std::conj(a.c()) * z.c();
    Complex r = num / den;
    return DiskPoint{r.real(), r.imag()};
}

namespace {

std::uint64_t angular_count(double radius, double mesh) {
    if (radius <= 0.0) return 1;
    // hyperbolic circumference of the circle |z| = r is 2*pi*r/(1-r^2)
    double circ = 2.0 * M_PI * radius / (1.0 - radius * radius);
    double need = circ / mesh;
    std::uint64_t n = 1;
    while (static_cast<double>(n) < need && n < (1ULL << 62)) n <<= 1;
    return n;
}

} // namespace

HyperbolicNet build_net(double mesh, int depth_limit) {
    if (!(mesh > 0.0)) throw std::invalid_argument("net mesh must be positive");
    if (depth_limit < 1) throw std::invalid_argument("net depth_limit must be >= 1");

    HyperbolicNet net;
    net.mesh = mesh;
    net.depth_limit = depth_limit;

    double r_max = 1.0 - std::ldexp(1.0, -depth_limit);
    double t_max = artanh(r_max);

    std::size_t offset = 0;
    for (int m = 0;; ++m) {
        double t = m * mesh;
        bool last = false;
        if (t >= t_max) {
            t = t_max;
            last = true;
        }
        HyperbolicNet::Circle c;
        c.t = t;
        c.radius = std::tanh(t);
        c.count = angular_count(c.radius, mesh);
        c.offset = offset;
        offset += c.count;
        net.circles.push_back(c);
        if (last) break;
    }
    net.total = offset;
    return net;
}

DiskPoint HyperbolicNet::point(std::size_t circle_idx, std::uint64_t k) const {
    const Circle& c = circles[circle_idx];
    double theta = 2.0 * M_PI * (static_cast<double>(k) / static_cast<double>(c.count));
    return DiskPoint{c.radius * std::cos(theta), c.radius * std::sin(theta)};
}

DiskPoint HyperbolicNet::point(std::size_t flat_index) const {
    std::size_t ci = circle_of(flat_index);
    return point(ci, flat_index - circles[ci].offset);
}

std::size_t HyperbolicNet::circle_of(std::size_t flat_index) const {
    std::size_t lo = 0, hi = circles.size();
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (circles[mid].offset <= flat_index)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

} // namespace blaschke_approx
