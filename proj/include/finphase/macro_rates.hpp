#ifndef FINPHASE_MACRO_RATES_HPP
#define FINPHASE_MACRO_RATES_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "finphase/error.hpp"

namespace finphase {

/// Aggregate quantities of the labour-value profit-rate model. Rates are
/// fractions per year; L is person-hours per year, K is person-hours.
template <typename Scalar>
struct MacroParams {
    Scalar rho{};    // surplus fraction of labour time, in (0, 1)
    Scalar L{};      // labour flow
    Scalar K{};      // labour time embodied in the capital stock
    Scalar g_L{};    // growth of labour expended
    Scalar g_P{};    // productivity growth
    Scalar d{};      // depreciation
    Scalar lambda{}; // gross investment / total profit
};

/// Sampled time series; t strictly increasing.
template <typename Scalar>
struct RateSeries {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    Vector t;
    Vector value;

    Eigen::Index size() const { return t.size(); }

    void validate() const
    {
        if (t.size() != value.size())
            throw Error(ErrorCode::InvalidConfig, "series time and value lengths differ");
        for (Eigen::Index i = 1; i < t.size(); ++i)
            if (!(t[i] > t[i - 1]))
                throw Error(ErrorCode::InvalidConfig, "series times must be strictly increasing");
    }
};

/// R = rho L / K.
template <typename Scalar>
Scalar average_profit_rate(const MacroParams<Scalar>& p)
{
    if (!(p.K > Scalar(0)))
        throw Error(ErrorCode::NonpositiveCapital, "capital K must be positive");
    return p.rho * p.L / p.K;
}

/// Fixed point of the average profit rate: R* = (g_L + g_P + d) / lambda.
template <typename Scalar>
Scalar equilibrium_rate(Scalar g_L, Scalar g_P, Scalar d, Scalar lambda)
{
    if (!(lambda > Scalar(0)))
        throw Error(ErrorCode::NonpositiveLambda, "lambda must be positive");
    return (g_L + g_P + d) / lambda;
}

template <typename Scalar>
Scalar equilibrium_rate(const MacroParams<Scalar>& p)
{
    return equilibrium_rate(p.g_L, p.g_P, p.d, p.lambda);
}

/// Integrates dR/dt = R (g_L + g_P + d - lambda R) with the classical
/// fourth-order Runge-Kutta scheme at fixed step `dt`, holding rho constant.
/// Returns n + 1 samples at t = 0, dt, ..., n dt.
template <typename Scalar>
RateSeries<Scalar> profit_rate_trajectory(Scalar R0, Scalar g_L, Scalar g_P, Scalar d, Scalar lambda,
                                          Scalar dt, std::size_t n)
{
    if (!(R0 > Scalar(0)))
        throw Error(ErrorCode::NonpositiveInitialRate, "initial profit rate must be positive");
    if (!(dt > Scalar(0)))
        throw Error(ErrorCode::NonpositiveStep, "time step must be positive");
    if (!(lambda > Scalar(0)))
        throw Error(ErrorCode::NonpositiveLambda, "lambda must be positive");

    const Scalar growth = g_L + g_P + d;
    auto rhs = [&](Scalar r) { return r * (growth - lambda * r); };

    const auto samples = static_cast<Eigen::Index>(n) + 1;
    using Vector = typename RateSeries<Scalar>::Vector;
    RateSeries<Scalar> out{Vector(samples), Vector(samples)};
    Scalar r = R0;
    out.t[0] = Scalar(0);
    out.value[0] = r;
    const Scalar half = dt / Scalar(2);
    for (Eigen::Index k = 1; k < samples; ++k) {
        const Scalar k1 = rhs(r);
        const Scalar k2 = rhs(r + half * k1);
        const Scalar k3 = rhs(r + half * k2);
        const Scalar k4 = rhs(r + dt * k3);
        r += dt / Scalar(6) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
        out.t[k] = dt * Scalar(k);
        out.value[k] = r;
    }
    return out;
}

/// Productivity growth needed to hold the equilibrium rate at `R_target`:
/// g_P* = lambda R_target - (g_L + d). Negative means none is needed.
template <typename Scalar>
Scalar required_productivity(Scalar R_target, Scalar lambda, Scalar g_L, Scalar d)
{
    return lambda * R_target - (g_L + d);
}

/// growth - offset, e.g. resource depletion g_N - g_beta or net emission
/// g_E - g_alpha. Positive means the stock is being drawn down (or the
/// pollution level is rising).
template <typename Scalar>
Scalar net_rate(Scalar growth, Scalar offset)
{
    return growth - offset;
}

/// Compound annual growth between the first and last level of `levels`.
template <typename Scalar>
Scalar cagr(const RateSeries<Scalar>& levels)
{
    levels.validate();
    if (levels.size() < 2)
        throw Error(ErrorCode::TooFewPoints, "growth rate needs at least 2 points");
    if (!((levels.value.array() > Scalar(0)).all()))
        throw Error(ErrorCode::NonpositiveLevel, "levels must be positive");
    const Eigen::Index last = levels.size() - 1;
    const Scalar span = levels.t[last] - levels.t[0];
    using std::log;
    using std::expm1;
    return expm1(log(levels.value[last] / levels.value[0]) / span);
}

/// Per-period compound growth between consecutive points: element k is the
/// rate from point k to point k + 1.
template <typename Scalar>
typename RateSeries<Scalar>::Vector period_growth(const RateSeries<Scalar>& levels)
{
    levels.validate();
    if (levels.size() < 2)
        throw Error(ErrorCode::TooFewPoints, "growth rate needs at least 2 points");
    typename RateSeries<Scalar>::Vector out(levels.size() - 1);
    for (Eigen::Index k = 0; k + 1 < levels.size(); ++k) {
        RateSeries<Scalar> pair{levels.t.segment(k, 2), levels.value.segment(k, 2)};
        out[k] = cagr(pair);
    }
    return out;
}

/// One year of the equilibrium decomposition input.
struct MacroYear {
    double year = 0.0;
    double g_L = 0.0;
    double g_P = 0.0;
    double d = 0.0;
    double lambda = 0.0;
};

struct MacroYearResult {
    double year = 0.0;
    double R_star = 0.0;
    double g_P_required = 0.0; // productivity growth needed to hold the reference rate
};

/// R* per year plus the productivity growth that would have held R* at
/// `reference_rate` (default: the first year's R*).
inline std::vector<MacroYearResult> equilibrium_decomposition(const std::vector<MacroYear>& rows,
                                                             std::optional<double> reference_rate = {})
{
    std::vector<MacroYearResult> out;
    if (rows.empty())
        return out;
    const double ref = reference_rate ? *reference_rate
                                      : equilibrium_rate(rows.front().g_L, rows.front().g_P, rows.front().d,
                                                         rows.front().lambda);
    out.reserve(rows.size());
    for (const auto& r : rows)
        out.push_back({r.year, equilibrium_rate(r.g_L, r.g_P, r.d, r.lambda),
                       required_productivity(ref, r.lambda, r.g_L, r.d)});
    return out;
}

} // namespace finphase

#endif // FINPHASE_MACRO_RATES_HPP
