// Copyright (c) 2026 The tgsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <tgsim/econ.hpp>

#include <cmath>
#include <stdexcept>

namespace tgsim::econ {

adoption_curve eth_adoption() { return {0.83, 0.017, 690.0}; }
adoption_curve fast_adoption() { return {0.83, 0.017, 510.0}; }
adoption_curve slow_adoption() { return {0.83, 0.017, 870.0}; }

std::optional<adoption_curve> adoption_by_name(std::string_view name) {
    if (name == "eth") return eth_adoption();
    if (name == "fast") return fast_adoption();
    if (name == "slow") return slow_adoption();
    return std::nullopt;
}

double uptake(const adoption_curve& c, double day) {
    return c.max_uptake / (1.0 + std::exp(-c.growth_per_day * (day - c.midpoint_day)));
}

double uptake_inverse(const adoption_curve& c, double level) {
    if (level <= 0 || level >= c.max_uptake)
        throw std::invalid_argument("uptake level must lie strictly between 0 and the curve maximum");
    return c.midpoint_day - std::log(c.max_uptake / level - 1.0) / c.growth_per_day;
}

std::uint64_t econ_params::blocks_per_day() const {
    const rational blocks = block_rate * seconds_per_day;
    if (denominator(blocks) != 1) throw std::invalid_argument("block_rate * seconds_per_day must be integral");
    return numerator(blocks).convert_to<std::uint64_t>();
}

void econ_params::validate() const {
    if (genesis_drip <= 0) throw std::invalid_argument("genesis token supply must be positive");
    if (initial_price <= 0) throw std::invalid_argument("initial price must be positive");
    if (block_inflation < 0 || block_inflation >= 1) throw std::invalid_argument("block inflation must be in [0,1)");
    if (interest_rate < 0 || interest_rate >= 1) throw std::invalid_argument("interest rate must be in [0,1)");
    if (bond_per_tx < 0) throw std::invalid_argument("bond per transaction cannot be negative");
    if (locked_fraction < 0 || locked_fraction > 1) throw std::invalid_argument("locked fraction must be in [0,1]");
    if (capacity_tps <= 0) throw std::invalid_argument("capacity must be positive");
    if (block_rate <= 0) throw std::invalid_argument("block rate must be positive");
    if (avg_fee < 0) throw std::invalid_argument("average fee cannot be negative");
    blocks_per_day();
    if (adoption.max_uptake <= 0 || adoption.max_uptake > 1)
        throw std::invalid_argument("adoption maximum must be in (0,1]");
    if (adoption.growth_per_day <= 0) throw std::invalid_argument("adoption growth must be positive");
}

double interest_factor(double annual_rate, std::uint64_t blocks, std::uint64_t per_year) {
    return std::expm1(double(blocks) * std::log1p(annual_rate / double(per_year)));
}

namespace {

bigfloat pow_u64(bigfloat base, std::uint64_t exp) {
    bigfloat acc = 1;
    while (exp != 0) {
        if (exp & 1) acc *= base;
        base *= base;
        exp >>= 1;
    }
    return acc;
}

} // namespace

bigfloat interest_factor_precise(const rational& annual_rate, std::uint64_t blocks, std::uint64_t per_year) {
    const bigfloat base = bigfloat(1) + bigfloat(annual_rate) / per_year;
    return pow_u64(base, blocks) - 1;
}

drip_amount interest_payout(const drip_amount& balance_drip, const bigfloat& factor) {
    const bigfloat exact = bigfloat(balance_drip) * factor;
    return floor(exact).convert_to<drip_amount>();
}

rational daily_block_reward_ideal(const econ_params& p) {
    return rational(p.genesis_drip) * p.block_inflation / 365;
}

drip_amount per_block_reward_drip(const econ_params& p) {
    // B * blocks_per_day * 365 == G * r_b, solved in rationals then floored.
    const rational per_block = daily_block_reward_ideal(p) / p.blocks_per_day();
    return floor_to_drip(per_block);
}

double daily_transactions(const econ_params& p, double day) {
    return uptake(p.adoption, day) * p.capacity_tps * double(p.seconds_per_day);
}

double daily_fees(const econ_params& p, double day) { return p.avg_fee * daily_transactions(p, day); }

double computation_fraction(double day) {
    const double transfer_pct = 72.0 - 0.04 * day + 7.05e-6 * day * day;
    const double gamma = 1.0 - transfer_pct / 100.0;
    if (gamma < 0.0) return 0.0;
    if (gamma > 1.0) return 1.0;
    return gamma;
}

namespace {

// gamma(d) * T(d) in high precision; the logistic is re-evaluated at
// bigfloat precision so flooring to Drip stays faithful.
bigfloat storage_bonded_tx(const econ_params& p, std::uint32_t day) {
    const bigfloat d(day);
    bigfloat transfer = (bigfloat(72) - bigfloat("0.04") * d + bigfloat("7.05e-6") * d * d) / 100;
    bigfloat gamma = 1 - transfer;
    if (gamma < 0) gamma = 0;
    if (gamma > 1) gamma = 1;
    const adoption_curve& c = p.adoption;
    const bigfloat u = bigfloat(c.max_uptake) / (1 + exp(bigfloat(-c.growth_per_day) * (d - c.midpoint_day)));
    return gamma * u * bigfloat(p.capacity_tps) * p.seconds_per_day;
}

} // namespace

drip_amount storage_interest_drip(const econ_params& p, std::uint32_t day) {
    const bigfloat tokens = bigfloat(p.bond_per_tx) * storage_bonded_tx(p, day) * bigfloat(p.effective_bond_rate());
    return floor(tokens * bigfloat(drip_per_cfx)).convert_to<drip_amount>();
}

std::vector<supply_day> supply_path(const econ_params& p, std::uint32_t horizon_days) {
    p.validate();
    std::vector<supply_day> out;
    out.reserve(horizon_days + 1);

    supply_day launch;
    launch.day = 0;
    launch.supply = p.genesis_drip;
    launch.price = p.initial_price;
    out.push_back(launch);

    const drip_amount daily_mint = per_block_reward_drip(p) * p.blocks_per_day();
    const bigfloat daily_lock_factor =
        p.locked_fraction > 0 ? interest_factor_precise(p.interest_rate, p.blocks_per_day()) : bigfloat(0);
    const rational price_numerator = p.initial_price * rational(p.genesis_drip);

    for (std::uint32_t d = 1; d <= horizon_days; ++d) {
        supply_day s;
        s.day = d;
        s.block_mint = daily_mint;
        s.storage_interest = storage_interest_drip(p, d);
        if (p.locked_fraction > 0) {
            const drip_amount locked_balance = floor_to_drip(p.locked_fraction * rational(out.back().supply));
            s.locked_interest = interest_payout(locked_balance, daily_lock_factor);
        } else {
            s.locked_interest = 0;
        }
        s.supply = out.back().supply + s.block_mint + s.storage_interest + s.locked_interest;
        s.price = price_numerator / rational(s.supply);
        out.push_back(std::move(s));
    }
    return out;
}

double speculative_price(const econ_params& p, double day) {
    return static_cast<double>(p.initial_price) * std::pow(1.0 + p.price_growth, day);
}

std::vector<day_revenue> revenue_series(const econ_params& p, std::uint32_t horizon_days, price_mode mode) {
    if (horizon_days < 1) throw std::invalid_argument("horizon must cover at least one day");
    const auto supply = supply_path(p, horizon_days);

    std::vector<day_revenue> out;
    out.reserve(horizon_days);
    for (std::uint32_t d = 1; d <= horizon_days; ++d) {
        const supply_day& s = supply[d];
        day_revenue r;
        r.day = d;
        r.block_reward_tokens = drip_to_cfx(s.block_mint);
        r.interest_tokens = drip_to_cfx(s.storage_interest);
        r.fees = daily_fees(p, double(d));
        r.price = mode == price_mode::inflation ? static_cast<double>(s.price) : speculative_price(p, double(d));
        r.total = r.price * r.block_reward_tokens + r.fees + r.price * r.interest_tokens;
        out.push_back(r);
    }
    return out;
}

std::vector<double> windowed_mean(const std::vector<double>& series, std::size_t window) {
    if (window == 0) throw std::invalid_argument("window must be non-empty");
    std::vector<double> out(series.size());
    double acc = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        acc += series[i];
        if (i >= window) acc -= series[i - window];
        out[i] = acc / double(std::min(i + 1, window));
    }
    return out;
}

} // namespace tgsim::econ
