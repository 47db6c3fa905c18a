#pragma once
#include "blaschke_approx/blaschke.hpp"

#include <cstdint>
#include <string>

namespace blaschke_approx {

// Deterministic zero-set generators for experiments. All sampling is driven
// by the seed only.

// uniform in the hyperbolic ball of the given radius around the center
BlaschkeProduct gen_cluster(int count, DiskPoint center, double hyp_radius, std::uint64_t seed);

// r_k = 1 - ratio^k on the positive axis, k = 1..count
BlaschkeProduct gen_radial(int count, double ratio);

// uniform w.r.t. hyperbolic area over { 1-|z| >= 2^-max_depth }
BlaschkeProduct gen_uniform(int count, int max_depth, std::uint64_t seed);

// spread along the circle of the given radius over [theta_lo, theta_hi]
BlaschkeProduct gen_curve(int count, double radius, double theta_lo, double theta_hi,
                          std::uint64_t seed);

// z^m
BlaschkeProduct gen_power(int m);

// coarse hyperbolic lattice covering the `pad`-neighborhood of the top half
// of the dyadic square (level, index); the workhorse for products whose
// modulus is small on a whole neighborhood scale
BlaschkeProduct gen_blanket(int level, std::uint64_t index, double pad, double lattice_mesh,
                            std::uint64_t seed);

// "kind:key=value,key=value" specs, e.g. "cluster:count=200,re=0.9,im=0,radius=2.5,seed=7"
BlaschkeProduct generate_from_spec(const std::string& spec);

} // namespace blaschke_approx
