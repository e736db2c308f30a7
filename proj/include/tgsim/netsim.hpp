// Copyright (c) 2026 The tgsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <tgsim/treegraph.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tgsim::net {

enum class delay_model { constant, exponential };

struct attacker_config {
    double power = 0.0;        // fraction of block-generation power, [0,1)
    double withhold_s = 0.0;   // broadcast delay for own blocks; may be +inf
    bool instant_network = true; // sees honest blocks and, once released,
                                 // delivers its own instantly
};

struct sim_config {
    std::uint32_t num_nodes = 200;
    double block_rate = 2.0; // blocks per second across the network
    double mean_delay_s = 4.1;
    delay_model delays = delay_model::exponential;
    std::uint32_t total_blocks = 2000;
    std::uint32_t warmup_blocks = 1000; // excluded from measurement
    std::uint64_t seed = 1;
    std::optional<attacker_config> attacker; // attacker mines as node 0
    reward_params rewards;

    void validate() const; // throws std::invalid_argument
};

struct sim_result {
    std::map<miner_id, drip_amount> per_miner_reward; // measured window only
    std::optional<double> attacker_reward_ratio;      // vs the paired honest run
    drip_amount attacker_reward = 0;
    std::uint32_t blocks_measured = 0;
    std::uint32_t attacker_blocks_created = 0;
    tree_graph graph; // final union graph of every block created
};

// Seeded discrete-event run: Poisson block production split across miners
// by power, complete-graph propagation with i.i.d. per-link delays, honest
// pivot-tip mining, optional withholding attacker. Bit-identical results
// for equal (config, seed).
sim_result run_simulation(const sim_config& cfg);

// Measured reward of the attacker's slot in the paired counterfactual run:
// same seed, event stream, power and connectivity, but the node follows the
// honest strategy (pivot-tip parent, immediate broadcast). Denominator of
// attacker_reward_ratio.
drip_amount honest_reward_baseline(const sim_config& cfg);

struct sweep_outcome {
    std::optional<sim_result> result;
    std::string error; // empty on success
};

// Independent runs, results in input order; failures reported per index.
std::vector<sweep_outcome> sweep(const std::vector<sim_config>& configs);

} // namespace tgsim::net
