// Copyright (c) 2026 The tgsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <tgsim/attack.hpp>

#include <stdexcept>

namespace tgsim::attack {

rational pi_t(std::uint64_t t) {
    if (t < 1) throw std::invalid_argument("attack length must be at least one block");
    // Closed form of the penalty mass: the a-th most recent block loses
    // (min{a,10}/100)^2, so only the last ten terms differ from 1 - 0.01.
    std::uint64_t penalty = 0; // in units of 1/100^2
    const std::uint64_t capped = t - 1 < 10 ? t - 1 : 10;
    for (std::uint64_t k = 1; k <= capped; ++k) penalty += k * k;
    if (t - 1 > 10) penalty += (t - 1 - 10) * 100;
    return rational(t) - rational(penalty, 10000);
}

rational serial_bound(const attack_params& p) {
    if (p.length < 1) throw std::invalid_argument("attack length must be at least one block");
    return rational(p.length) * p.block_reward * (p.advantage - 1);
}

rational conflux_bound(const attack_params& p) {
    return p.block_reward * (rational(p.length) * p.advantage - pi_t(p.length));
}

rational miner_equilibrium_cost(const rational& block_reward, std::uint64_t miners) {
    if (miners < 1) throw std::invalid_argument("at least one miner required");
    return block_reward / miners;
}

std::uint64_t estimated_attack_length(std::uint64_t confirmations, const rational& advantage) {
    if (advantage <= 1) throw std::invalid_argument("advantage must exceed 1");
    const rational blocks = rational(confirmations) * (advantage + 1) / (advantage - 1);
    drip_amount whole = numerator(blocks) / denominator(blocks);
    if (rational(whole) < blocks) ++whole;
    return whole.convert_to<std::uint64_t>();
}

std::vector<bound_row> bound_table(const std::vector<std::uint64_t>& lengths,
                                   const std::vector<rational>& advantages,
                                   const std::vector<rational>& rewards) {
    std::vector<bound_row> out;
    out.reserve(lengths.size() * advantages.size() * rewards.size());
    for (std::uint64_t t : lengths) {
        const rational pi = pi_t(t);
        for (const rational& a : advantages) {
            for (const rational& b : rewards) {
                attack_params p{b, a, t};
                bound_row row;
                row.t = t;
                row.advantage = a;
                row.block_reward = b;
                row.serial = serial_bound(p);
                row.pi = pi;
                row.conflux = conflux_bound(p);
                row.gap = row.conflux - row.serial;
                out.push_back(std::move(row));
            }
        }
    }
    return out;
}

} // namespace tgsim::attack
