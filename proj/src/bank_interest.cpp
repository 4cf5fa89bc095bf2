#include "finphase/bank_interest.hpp"

#include <cmath>
#include <numbers>

namespace finphase {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

namespace {

void check_model(const ReserveRiskModel& model, Money loan)
{
    if (model.sigma <= Money{})
        throw Error(ErrorCode::NonpositiveSigma, "sigma must be positive");
    if (model.reserves < Money{})
        throw Error(ErrorCode::InvalidConfig, "reserves must be non-negative");
    if (loan < Money{})
        throw Error(ErrorCode::NegativeAmount, "loan must be non-negative");
    if (loan > model.reserves)
        throw Error(ErrorCode::LoanExceedsReserves,
                    "loan " + to_string(loan) + " exceeds reserves " + to_string(model.reserves));
}

} // namespace

double excursion_exceedance(const ReserveRiskModel& model, Money loan)
{
    check_model(model, loan);
    if (loan == Money{})
        return 0.0;
    const double mu = model.mean_excursion.to_double();
    const double s = model.sigma.to_double();
    const double lo = (-model.reserves.to_double() - mu) / s;
    const double hi = (-(model.reserves - loan).to_double() - mu) / s;
    // in the upper tail, subtract complementary CDFs to avoid cancellation
    if (lo > 0.0)
        return 0.5 * (std::erfc(lo / std::numbers::sqrt2) - std::erfc(hi / std::numbers::sqrt2));
    return normal_cdf(hi) - normal_cdf(lo);
}

InterestQuote min_interest_rate(const ReserveRiskModel& model, Money loan)
{
    check_model(model, loan);
    if (loan <= Money{})
        throw Error(ErrorCode::NonpositiveLoan, "loan must be positive");
    InterestQuote q;
    q.p_e = excursion_exceedance(model, loan);
    q.expected_cost = model.banker_capital.to_double() * q.p_e;
    q.min_rate = q.expected_cost / loan.to_double();
    return q;
}

std::vector<ReservePoint> reserve_path(const ReserveFlowParams& params, double dt, std::size_t n)
{
    if (!(dt > 0.0))
        throw Error(ErrorCode::NonpositiveStep, "dt must be positive");
    const Money net_flow = params.G - params.Tx - params.S;
    std::vector<ReservePoint> out;
    out.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = static_cast<double>(k) * dt;
        out.push_back({t, params.B0.to_double() + net_flow.to_double() * t});
    }
    return out;
}

} // namespace finphase
