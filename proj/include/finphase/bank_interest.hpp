#ifndef FINPHASE_BANK_INTEREST_HPP
#define FINPHASE_BANK_INTEREST_HPP

#include <cstddef>
#include <vector>

#include "finphase/money.hpp"

namespace finphase {

/// Standard normal CDF, Phi(z) = erfc(-z / sqrt 2) / 2. Uses the C library
/// erfc, which is accurate to a few ulp over the whole real line (far below
/// the 1e-10 absolute error this module needs).
double normal_cdf(double z);

/// Annual maximal excursion W of a bank's reserves, W ~ N(mean_excursion, sigma).
struct ReserveRiskModel {
    Money banker_capital; // lost if the bank fails
    Money reserves;       // before the loan
    Money sigma;
    Money mean_excursion{};
};

/// Pr{ -reserves < W <= -(reserves - loan) }: the extra failure band the
/// loan opens up below the post-loan reserve level.
double excursion_exceedance(const ReserveRiskModel& model, Money loan);

struct InterestQuote {
    double p_e = 0.0;
    double expected_cost = 0.0; // banker_capital * p_e
    double min_rate = 0.0;      // expected_cost / loan, per year
};

/// Lowest rational interest rate for `loan`: the banker's expected loss
/// divided by the loan size.
InterestQuote min_interest_rate(const ReserveRiskModel& model, Money loan);

struct ReserveFlowParams {
    Money B0;  // initial private-bank reserves
    Money G;   // government payments per year
    Money Tx;  // tax payments per year
    Money S;   // security sales per year
};

struct ReservePoint {
    double t = 0.0;
    double B = 0.0;
};

/// B(t) = B0 + (G - Tx - S) t at t = k dt, k = 0..n. The law is linear, so
/// samples are exact.
std::vector<ReservePoint> reserve_path(const ReserveFlowParams& params, double dt, std::size_t n);

} // namespace finphase

#endif // FINPHASE_BANK_INTEREST_HPP
