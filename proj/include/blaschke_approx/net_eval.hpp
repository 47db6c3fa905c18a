#pragma once
#include "blaschke_approx/blaschke.hpp"
#include "blaschke_approx/dyadic.hpp"
#include "blaschke_approx/geometry.hpp"

#include <vector>

namespace blaschke_approx {

// |B| evaluated once over a whole net, with per-circle block maxima for fast
// angular range queries. Immutable after construction.
class NetEvaluation {
  public:
    NetEvaluation() = default;
    NetEvaluation(BlaschkeProduct product, HyperbolicNet net, int workers = 0);

    const HyperbolicNet& net() const { return net_; }
    const BlaschkeProduct& product() const { return product_; }
    const std::vector<double>& values() const { return values_; }
    double value(std::size_t flat) const { return values_[flat]; }

    // max of |B| over net points of one circle with angular index in
    // [k_lo, k_hi] (inclusive, wrapping allowed via k_lo > k_hi semantics
    // handled by the caller passing split ranges); full == true takes the
    // whole circle.
    double circle_range_max(std::size_t circle, std::uint64_t k_lo, std::uint64_t k_hi) const;
    double circle_max(std::size_t circle) const;

  private:
    BlaschkeProduct product_;
    HyperbolicNet net_;
    std::vector<double> values_;
    std::vector<double> block_max_;
    std::vector<std::size_t> block_offset_; // per circle, into block_max_
    static constexpr std::size_t kBlock = 64;
};

// Net-estimated sup of |B| over the hyperbolic K-neighborhood of a polar box:
// takes the max of |B| over (a) a direct sample of the box itself and (b) all
// net points at box distance <= K + mesh. The estimate never exceeds the true
// sup over the (K+mesh)-neighborhood and misses the true sup over the covered
// part of the K-neighborhood by at most tanh(mesh) (Schwarz-Pick).
double omega_k_sup(const NetEvaluation& eval, const PolarBox& box, double K);

// Convenience overload that builds a throwaway net.
double omega_k_sup(const BlaschkeProduct& B, const PolarBox& box, double K,
                   double mesh, int depth_limit);

// Angular half-window (radians beyond the box span) within which a point on
// the circle at artanh-radius t can be at box distance <= K; 0 if even the
// aligned point is too far, 2*pi if the whole circle qualifies.
double omega_window(double t_circle, const PolarBox& box, double K);

} // namespace blaschke_approx
