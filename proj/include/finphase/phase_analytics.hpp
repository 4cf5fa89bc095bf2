#ifndef FINPHASE_PHASE_ANALYTICS_HPP
#define FINPHASE_PHASE_ANALYTICS_HPP

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "finphase/error.hpp"

namespace finphase {

/// One firm on the debt phase plane: x is net debt / capital stock, y is the
/// per-step change of net debt / capital stock.
struct PhasePoint {
    double x = 0.0;
    double y = 0.0;
};

struct GridSpec {
    double x_min = -10.0;
    double x_max = 1.5;
    double y_min = -1.0;
    double y_max = 1.0;
    int nx = 100;
    int ny = 100;

    void validate() const;
    /// Same extent, `factor` times as many bins along each axis.
    GridSpec refined(int factor) const;
};

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

template <typename Derived>
Eigen::ArrayXXd to_double_array(const Eigen::DenseBase<Derived>& d)
{
    Eigen::ArrayXXd out(d.rows(), d.cols());
    for (Eigen::Index j = 0; j < d.cols(); ++j)
        for (Eigen::Index i = 0; i < d.rows(); ++i)
            out(i, j) = static_cast<double>(d.derived().coeff(i, j));
    return out;
}

} // namespace detail

/// Counts are indexed (ix, iy). total counts every point offered to the
/// binner, including the out-of-range ones.
struct PhaseHistogram {
    GridSpec grid;
    CountMatrix counts;
    std::int64_t total = 0;
    std::int64_t out_of_range = 0;

    std::int64_t in_range() const { return total - out_of_range; }
};

/// Bins are half-open [lo, hi) except the last column/row, which also takes
/// its upper edge. Points outside the grid (or non-finite) go to out_of_range.
PhaseHistogram bin_phase(std::span<const PhasePoint> points, const GridSpec& grid);

/// Plug-in entropy -sum p ln p (nats) of a non-negative count array, with
/// 0 ln 0 = 0. Throws EmptyHistogram when every count is zero.
template <typename Derived>
double entropy_of_counts(const Eigen::DenseBase<Derived>& counts)
{
    const Eigen::ArrayXXd c = detail::to_double_array(counts);
    const double n = c.sum();
    if (!(n > 0.0))
        throw Error(ErrorCode::EmptyHistogram, "no in-range mass to take the entropy of");
    double h = 0.0;
    for (Eigen::Index j = 0; j < c.cols(); ++j)
        for (Eigen::Index i = 0; i < c.rows(); ++i)
            if (c(i, j) > 0.0) {
                const double p = c(i, j) / n;
                h -= p * std::log(p);
            }
    return h;
}

/// Entropy of the in-range part of the histogram, in nats.
double entropy(const PhaseHistogram& hist);

/// One-dimensional entropy of `values` binned on [lo, hi] into `bins` cells,
/// via the degenerate ny = 1 phase grid.
double entropy_1d(std::span<const double> values, double lo, double hi, int bins);

struct TailMetrics {
    double rentier_fraction = 0.0; // share of points with x < 0
    double mean_x = 0.0;
    double std_x = 0.0;  // population standard deviation
    double skew_x = 0.0; // m3 / m2^1.5, zero when std_x is zero
};

template <typename Derived>
TailMetrics tail_metrics_of(const Eigen::DenseBase<Derived>& xs)
{
    const Eigen::ArrayXXd x = detail::to_double_array(xs);
    const auto n = static_cast<double>(x.size());
    if (x.size() < 2)
        throw Error(ErrorCode::TooFewPoints, "tail metrics need at least 2 points");
    TailMetrics out;
    out.rentier_fraction = (x < 0.0).count() / n;
    out.mean_x = x.mean();
    const Eigen::ArrayXXd centered = x - out.mean_x;
    const double m2 = centered.square().mean();
    const double m3 = centered.cube().mean();
    out.std_x = std::sqrt(m2);
    out.skew_x = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
    return out;
}

TailMetrics tail_metrics(std::span<const PhasePoint> points);

// CSV helpers. Phase files are `firm_id,x,y`; histogram dumps carry
// `#key,value` metadata lines followed by ny rows of nx counts.
void write_phase_csv(std::ostream& os, std::span<const PhasePoint> points);
std::vector<PhasePoint> read_phase_csv(std::istream& is);
void write_histogram_csv(std::ostream& os, const PhaseHistogram& hist);
PhaseHistogram read_histogram_csv(std::istream& is);

} // namespace finphase

#endif // FINPHASE_PHASE_ANALYTICS_HPP
