#include "blaschke_approx/generators.hpp"
#include "blaschke_approx/dyadic.hpp"
#include "blaschke_approx/rng.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace blaschke_approx {

namespace {

DiskPoint ball_sample(Xoshiro256& rng, double radius) {
    // uniform in hyperbolic area: cdf of the radius is (cosh(2t)-1)
    double u = rng.uniform();
    double t = 0.5 * std::acosh(1.0 + u * (std::cosh(2.0 * radius) - 1.0));
    double phi = 2.0 * M_PI * rng.uniform();
    double r = std::tanh(t);
    return DiskPoint{r * std::cos(phi), r * std::sin(phi)};
}

DiskPoint hyperbolic_translate(const DiskPoint& center, const DiskPoint& zeta) {
    Complex num = center.c() - zeta.c();
    Complex den = 1.0 - std::conj(center.c()) * zeta.c();
    Complex w = num / den;
    return DiskPoint{w.real(), w.imag()};
}

void push_zero(std::vector<BlaschkeProduct::Zero>& zeros, int& origin_mult, DiskPoint p) {
    if (!(p.abs2() < 1.0)) throw std::runtime_error("generated zero left the disk");
    if (p.re == 0.0 && p.im == 0.0)
        ++origin_mult;
    else
        zeros.push_back({p, 1});
}

} // namespace

BlaschkeProduct gen_cluster(int count, DiskPoint center, double hyp_radius, std::uint64_t seed) {
    if (count <= 0) throw std::invalid_argument("cluster count must be positive");
    if (!(hyp_radius > 0.0)) throw std::invalid_argument("cluster radius must be positive");
    Xoshiro256 rng(derive_seed(seed, 0xC1));
    std::vector<BlaschkeProduct::Zero> zeros;
    int m = 0;
    for (int i = 0; i < count; ++i)
        push_zero(zeros, m, hyperbolic_translate(center, ball_sample(rng, hyp_radius)));
    return make_product(std::move(zeros), m);
}

BlaschkeProduct gen_radial(int count, double ratio) {
    if (count <= 0) throw std::invalid_argument("radial count must be positive");
    if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("radial ratio must be in (0,1)");
    std::vector<BlaschkeProduct::Zero> zeros;
    double p = 1.0;
    for (int k = 1; k <= count; ++k) {
        p *= ratio;
        double r = 1.0 - p;
        if (!(r < 1.0))
            throw std::invalid_argument("radial sequence exhausts double precision");
        if (r > 0.0) zeros.push_back({DiskPoint{r, 0.0}, 1});
    }
    return make_product(std::move(zeros));
}

BlaschkeProduct gen_uniform(int count, int max_depth, std::uint64_t seed) {
    if (count <= 0) throw std::invalid_argument("uniform count must be positive");
    if (max_depth < 1) throw std::invalid_argument("uniform max_depth must be >= 1");
    Xoshiro256 rng(derive_seed(seed, 0xD2));
    double t_max = artanh(1.0 - std::ldexp(1.0, -max_depth));
    std::vector<BlaschkeProduct::Zero> zeros;
    int m = 0;
    for (int i = 0; i < count; ++i) push_zero(zeros, m, ball_sample(rng, t_max));
    return make_product(std::move(zeros), m);
}

BlaschkeProduct gen_curve(int count, double radius, double theta_lo, double theta_hi,
                          std::uint64_t seed) {
    if (count <= 0) throw std::invalid_argument("curve count must be positive");
    if (!(radius > 0.0 && radius < 1.0)) throw std::invalid_argument("curve radius in (0,1)");
    Xoshiro256 rng(derive_seed(seed, 0xE3));
    std::vector<BlaschkeProduct::Zero> zeros;
    int m = 0;
    for (int i = 0; i < count; ++i) {
        double f = count == 1 ? 0.5 : static_cast<double>(i) / (count - 1);
        double jitter = (rng.uniform() - 0.5) * 0.5 / count;
        double th = theta_lo + (theta_hi - theta_lo) * (f + jitter);
        push_zero(zeros, m, DiskPoint{radius * std::cos(th), radius * std::sin(th)});
    }
    return make_product(std::move(zeros), m);
}

BlaschkeProduct gen_power(int m) {
    if (m <= 0) throw std::invalid_argument("power must be positive");
    return make_product({}, m);
}

BlaschkeProduct gen_blanket(int level, std::uint64_t index, double pad, double lattice_mesh,
                            std::uint64_t seed) {
    if (!(pad > 0.0) || !(lattice_mesh > 0.0))
        throw std::invalid_argument("blanket pad and mesh must be positive");
    DyadicSquare q{level, index};
    PolarBox box = top_half_box(q);
    Xoshiro256 rng(derive_seed(seed, 0xF4));
    std::vector<BlaschkeProduct::Zero> zeros;
    int m = 0;
    for (double t = std::max(lattice_mesh, box.t_lo - pad); t <= box.t_hi + pad;
         t += lattice_mesh) {
        double r = std::tanh(t);
        double ang_pad = pad * (1.0 - r * r) / std::max(r, 1e-6);
        double th_lo = box.theta_lo - ang_pad;
        double th_hi = box.theta_hi + ang_pad;
        double step = lattice_mesh * (1.0 - r * r) / std::max(r, 1e-6);
        if (th_hi - th_lo >= 2.0 * M_PI) {
            th_lo = 0.0;
            th_hi = 2.0 * M_PI - step;
        }
        for (double th = th_lo; th <= th_hi; th += step) {
            double jt = t + (rng.uniform() - 0.5) * 0.2 * lattice_mesh;
            double jth = th + (rng.uniform() - 0.5) * 0.2 * step;
            double rr = std::tanh(std::max(jt, 0.0));
            push_zero(zeros, m, DiskPoint{rr * std::cos(jth), rr * std::sin(jth)});
        }
    }
    return make_product(std::move(zeros), m);
}

namespace {

std::map<std::string, std::string> parse_kv(const std::string& s) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad generator spec item: " + item);
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

double getd(const std::map<std::string, std::string>& kv, const std::string& k, double dflt) {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : std::stod(it->second);
}

long getl(const std::map<std::string, std::string>& kv, const std::string& k, long dflt) {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : std::stol(it->second);
}

} // namespace

BlaschkeProduct generate_from_spec(const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
    auto kv = parse_kv(colon == std::string::npos ? "" : spec.substr(colon + 1));
    if (kind == "cluster")
        return gen_cluster(static_cast<int>(getl(kv, "count", 100)),
                           make_disk_point(getd(kv, "re", 0.9), getd(kv, "im", 0.0)),
                           getd(kv, "radius", 2.0), static_cast<std::uint64_t>(getl(kv, "seed", 1)));
    if (kind == "radial")
        return gen_radial(static_cast<int>(getl(kv, "count", 10)), getd(kv, "ratio", 0.5));
    if (kind == "uniform")
        return gen_uniform(static_cast<int>(getl(kv, "count", 100)),
                           static_cast<int>(getl(kv, "max_depth", 8)),
                           static_cast<std::uint64_t>(getl(kv, "seed", 1)));
    if (kind == "curve")
        return gen_curve(static_cast<int>(getl(kv, "count", 100)), getd(kv, "radius", 0.99),
                         getd(kv, "theta_lo", 0.0), getd(kv, "theta_hi", 1.0),
                         static_cast<std::uint64_t>(getl(kv, "seed", 1)));
    if (kind == "power") return gen_power(static_cast<int>(getl(kv, "m", 100)));
    if (kind == "blanket")
        return gen_blanket(static_cast<int>(getl(kv, "level", 3)),
                           static_cast<std::uint64_t>(getl(kv, "index", 0)),
                           getd(kv, "pad", 1.2), getd(kv, "mesh", 0.7),
                           static_cast<std::uint64_t>(getl(kv, "seed", 1)));
    throw std::invalid_argument("unknown generator kind: " + kind);
}

} // namespace blaschke_approx
