// Copyright (c) 2026 The tgsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <tgsim/amount.hpp>

#include <cstdint>
#include <vector>

namespace tgsim::attack {

// Pi_t: total penalty-discounted block count of a t-block withheld chain
// whose a-th block carries an anticone of t-a concurrent blocks,
//
//   Pi_t = sum_{i=1..t} (1 - (min{t-i, 10}/100)^2)
//
// evaluated exactly. Pi_1 = 1 and Pi_t < t for t >= 2.
rational pi_t(std::uint64_t t);

struct attack_params {
    rational block_reward = 1; // B, tokens
    rational advantage = 2;    // A > 1, equipment multiple over the honest total
    std::uint64_t length = 1;  // t >= 1, blocks to complete the attack
};

// Largest value a serial chain can fail to secure: t*B*(A-1).
rational serial_bound(const attack_params& p);

// The corresponding threshold under anticone penalties: B*(t*A - Pi_t).
// Exceeds serial_bound by B*(t - Pi_t), strictly for t >= 2.
rational conflux_bound(const attack_params& p);

// Per-miner equilibrium cost from the zero-profit condition c*N = B.
rational miner_equilibrium_cost(const rational& block_reward, std::uint64_t miners);

// ceil(k*(A+1)/(A-1)) for k confirmation blocks: a rough extrapolation of
// how long a race takes, not part of the bound derivation.
std::uint64_t estimated_attack_length(std::uint64_t confirmations, const rational& advantage);

struct bound_row {
    std::uint64_t t = 0;
    rational advantage;
    rational block_reward;
    rational serial;
    rational pi;
    rational conflux;
    rational gap; // conflux - serial
};

std::vector<bound_row> bound_table(const std::vector<std::uint64_t>& lengths,
                                   const std::vector<rational>& advantages,
                                   const std::vector<rational>& rewards);

} // namespace tgsim::attack
