// Copyright (c) 2026 The tgsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <tgsim/amount.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace tgsim::econ {

// High-precision float used wherever a transcendental feeds an exact Drip
// mint; 50 decimal digits keep the floor reliable for any plausible supply.
using bigfloat = boost::multiprecision::cpp_bin_float_50;

inline constexpr std::uint64_t blocks_per_year = 63'072'000; // 2 blocks/s * 86400 * 365

// Logistic uptake curve: max / (1 + e^{-growth * (day - midpoint)}).
struct adoption_curve {
    double max_uptake = 0.83;
    double growth_per_day = 0.017;
    double midpoint_day = 690.0;
};

adoption_curve eth_adoption();  // calibrated midpoint at day 690
adoption_curve fast_adoption(); // adoption advanced by 180 days (midpoint 510)
adoption_curve slow_adoption(); // adoption delayed by 180 days (midpoint 870)
std::optional<adoption_curve> adoption_by_name(std::string_view name);

double uptake(const adoption_curve& curve, double day);
// Day at which uptake first reaches `level` (closed-form inverse).
double uptake_inverse(const adoption_curve& curve, double level);

struct econ_params {
    drip_amount genesis_drip = 0;            // G; required, must be positive
    rational initial_price = 0;              // p(0), currency per CFX; required
    rational block_inflation = rational(1, 20);  // r_b, annual
    rational interest_rate = rational(1, 50);    // r_c, annual
    double avg_fee = 0.01;                   // f, currency per transaction
    rational bond_per_tx = rational(1, 100); // beta, tokens bonded per storage tx
    std::optional<rational> daily_bond_rate; // R; defaults to r_c / 365
    rational locked_fraction = 0;            // alpha; feeds only the supply path
    double capacity_tps = 3200.0;
    std::uint32_t seconds_per_day = 86'400;
    rational block_rate = 2;                 // blocks per second
    adoption_curve adoption;                 // defaults to the calibrated curve
    double price_growth = 0.0031;            // g, speculative daily growth

    rational effective_bond_rate() const { return daily_bond_rate.value_or(interest_rate / 365); }
    std::uint64_t blocks_per_day() const;    // block_rate * seconds_per_day, must be integral
    void validate() const;                   // throws std::invalid_argument
};

// Compound per-block interest accrued over `blocks` blocks:
//   (1 + annual_rate / blocks_per_year)^blocks - 1
double interest_factor(double annual_rate, std::uint64_t blocks,
                       std::uint64_t per_year = blocks_per_year);
bigfloat interest_factor_precise(const rational& annual_rate, std::uint64_t blocks,
                                 std::uint64_t per_year = blocks_per_year);

// Interest payout on a Drip balance, rounded down to whole Drip.
drip_amount interest_payout(const drip_amount& balance_drip, const bigfloat& factor);

// Block reward B solving B * (2 blocks/s * 365 days) = G * r_b, floored to Drip.
drip_amount per_block_reward_drip(const econ_params& p);
// Daily reward mass b(d) = G * r_b / 365 in Drip, exact rational (pre-floor).
rational daily_block_reward_ideal(const econ_params& p);

double daily_transactions(const econ_params& p, double day);  // T(d) = u(d) * capacity * D
double daily_fees(const econ_params& p, double day);          // F(d) = f * T(d)

// gamma(d): share of gas spent on computation, from the calibrated quadratic
//   1 - (72 - 0.04 d + 7.05e-6 d^2)/100, clamped to [0, 1].
double computation_fraction(double day);

// Drip actually minted for miners from storage-bond interest on day d:
// floor(beta * gamma(d) * T(d) * R), evaluated in high precision.
drip_amount storage_interest_drip(const econ_params& p, std::uint32_t day);

struct supply_day {
    std::uint32_t day = 0;          // day 0 is the launch state
    drip_amount supply;             // Drip outstanding at end of day
    drip_amount block_mint;         // block-reward Drip minted this day
    drip_amount storage_interest;   // storage-bond interest Drip this day
    drip_amount locked_interest;    // locked-token interest Drip this day
    rational price;                 // p(d) = p(0) * G / supply, exact
};

// Exact supply and inflation-adjusted price path for days 0..horizon.
std::vector<supply_day> supply_path(const econ_params& p, std::uint32_t horizon_days);

double speculative_price(const econ_params& p, double day); // p(0) * (1+g)^d

enum class price_mode { inflation, speculative };

struct day_revenue {
    std::uint32_t day = 0;
    double block_reward_tokens = 0; // b(d) in CFX
    double fees = 0;                // F(d) in currency
    double interest_tokens = 0;     // I(d) in CFX
    double price = 0;               // price applied to token components
    double total = 0;               // m(d) = p*b + F + p*I
};

// Per-day revenue decomposition for days 1..horizon. Speculative mode swaps
// the price on the token components; fees are price-independent.
std::vector<day_revenue> revenue_series(const econ_params& p, std::uint32_t horizon_days,
                                        price_mode mode);

// Trailing mean over `window` entries (shorter prefix windows included).
std::vector<double> windowed_mean(const std::vector<double>& series, std::size_t window);

} // namespace tgsim::econ
