// Copyright (c) 2026 The tgsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <tgsim/scenario.hpp>

namespace tgsim::scenario {

namespace {

const char* const fig_attack_penalty = R"(# Withholding-attacker reward ratio, swept over power and withhold period.
# Desk-scale trim of the reference run (10000 nodes, seeds 1..10); the
# latency distribution, not the node count, drives anticone sizes.
kind = selfish-mining
nodes = 200
block_rate = 2
mean_delay_s = 4.1
delay_model = exponential
total_blocks = 2000
warmup_blocks = 1000
attacker.power = 0.1, 0.2, 0.3, 0.4
attacker.withhold_s = 0, 4, 8, 16
attacker.instant_network = true
seeds = 1..3
)";

const char* const fig_revenue_uptake = R"(# Miner revenue components under fast / calibrated / slow adoption.
kind = revenue
genesis_cfx = 5000000000
initial_price = 0.088
block_inflation = 0.05
interest_rate = 0.02
avg_fee = 0.01
bond_per_tx = 0.01
adoption = fast, eth, slow
price_mode = inflation
horizon_days = 1095
)";

const char* const fig_revenue_fees = R"(# Total daily miner revenue for four average-fee levels.
kind = revenue
genesis_cfx = 5000000000
initial_price = 0.088
block_inflation = 0.05
interest_rate = 0.02
avg_fee = 0.005, 0.01, 0.02, 0.08
bond_per_tx = 0.01
adoption = eth
price_mode = inflation
horizon_days = 1095
)";

const char* const fig_eth_price = R"(# Revenue when the token price grows 0.31%/day (three-year market-cap
# target) versus the inflation-adjusted price, first 650 days.
kind = revenue
genesis_cfx = 5000000000
initial_price = 0.088
block_inflation = 0.05
interest_rate = 0.02
avg_fee = 0.08
bond_per_tx = 0.01
adoption = eth
price_mode = inflation, speculative
price_growth = 0.0031
horizon_days = 650
)";

const char* const bounds_grid = R"(# Double-spend security thresholds over an attack-length grid.
kind = bounds
t = 1..100
advantage = 1.1, 1.5, 2, 5
block_reward = 1, 12.5
)";

const char* const consensus_demo = R"(# Total order, epochs, anticones and rewards of the built-in example
# graph. Point `snapshot` at a graph snapshot file to analyze your own.
kind = consensus-demo
)";

} // namespace

const std::map<std::string, std::string, std::less<>>& presets() {
    static const std::map<std::string, std::string, std::less<>> table = {
        {"fig-attack-penalty", fig_attack_penalty},
        {"fig-revenue-uptake", fig_revenue_uptake},
        {"fig-revenue-fees", fig_revenue_fees},
        {"fig-eth-price", fig_eth_price},
        {"bounds-grid", bounds_grid},
        {"consensus-demo", consensus_demo},
    };
    return table;
}

} // namespace tgsim::scenario
