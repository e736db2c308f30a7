// Copyright (c) 2026 The tgsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <tgsim/netsim.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace tgsim::net {

namespace {

// Deterministic sampling layer: the engine draws raw 64-bit words from
// mt19937_64 and shapes them itself, so results do not depend on the
// standard library's distribution implementations.
class rng_stream {
public:
    explicit rng_stream(std::uint64_t seed) : gen_(seed) {}
    double uniform() { return double(gen_() >> 11) * 0x1.0p-53; } // [0, 1)
    double exponential(double mean) { return -mean * std::log1p(-uniform()); }

private:
    std::mt19937_64 gen_;
};

struct global_block {
    static constexpr std::uint32_t no_parent = 0xffffffffu;
    std::uint32_t parent = no_parent;
    std::vector<std::uint32_t> refs;
    std::uint32_t miner = 0;
    double born_at = 0.0;
};

// A miner's causally consistent partial view of the global block table.
// Blocks arriving before their full past are parked until the gap closes.
class node_view {
public:
    void add_genesis() {
        have_.assign(1, 1);
        tips_.insert(0);
    }

    bool has(std::uint32_t idx) const { return idx < have_.size() && have_[idx]; }
    const std::set<std::uint32_t>& tips() const { return tips_; }

    void deliver(std::uint32_t idx, const std::vector<global_block>& blocks) {
        if (has(idx) || pending_.count(idx)) return;
        std::uint32_t missing = 0;
        auto require = [&](std::uint32_t dep) {
            if (!has(dep)) {
                ++missing;
                waiters_[dep].push_back(idx);
            }
        };
        const global_block& b = blocks[idx];
        if (b.parent != global_block::no_parent) require(b.parent);
        for (std::uint32_t r : b.refs) require(r);
        if (missing == 0) {
            accept(idx, blocks);
        } else {
            pending_.emplace(idx, missing);
        }
    }

    // Heaviest-subtree descent over the received part of the parent tree,
    // unit weights, ties to the smaller block index (== smaller id).
    std::uint32_t pivot_tip(const std::vector<global_block>& blocks,
                            const std::vector<std::vector<std::uint32_t>>& children,
                            std::vector<std::uint32_t>& scratch) const {
        scratch.assign(have_.size(), 0);
        for (std::uint32_t i = static_cast<std::uint32_t>(have_.size()); i-- > 0;) {
            if (!have_[i]) continue;
            scratch[i] += 1;
            const std::uint32_t p = blocks[i].parent;
            if (p != global_block::no_parent) scratch[p] += scratch[i];
        }
        std::uint32_t cur = 0;
        while (true) {
            std::uint32_t best = global_block::no_parent;
            if (cur < children.size()) {
                for (std::uint32_t c : children[cur]) {
                    if (!has(c)) continue;
                    if (best == global_block::no_parent || scratch[c] > scratch[best] ||
                        (scratch[c] == scratch[best] && c < best)) {
                        best = c;
                    }
                }
            }
            if (best == global_block::no_parent) return cur;
            cur = best;
        }
    }

private:
    void accept(std::uint32_t idx, const std::vector<global_block>& blocks) {
        std::vector<std::uint32_t> ready{idx};
        while (!ready.empty()) {
            const std::uint32_t x = ready.back();
            ready.pop_back();
            if (x >= have_.size()) have_.resize(x + 1, 0);
            have_[x] = 1;
            const global_block& b = blocks[x];
            tips_.insert(x);
            if (b.parent != global_block::no_parent) tips_.erase(b.parent);
            for (std::uint32_t r : b.refs) tips_.erase(r);

            auto w = waiters_.find(x);
            if (w == waiters_.end()) continue;
            for (std::uint32_t waiting : w->second) {
                auto p = pending_.find(waiting);
                if (p != pending_.end() && --p->second == 0) {
                    pending_.erase(p);
                    ready.push_back(waiting);
                }
            }
            waiters_.erase(w);
        }
    }

    std::vector<char> have_;
    std::set<std::uint32_t> tips_;
    std::unordered_map<std::uint32_t, std::uint32_t> pending_; // idx -> missing deps
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> waiters_;
};

struct event {
    double time = 0.0;
    std::uint64_t seq = 0;
    enum class kind : std::uint8_t { creation, delivery } what = kind::creation;
    std::uint32_t block = 0;
    std::uint32_t node = 0;
};

struct event_after {
    bool operator()(const event& a, const event& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.seq > b.seq;
    }
};

sim_result run_once(const sim_config& cfg, bool attacker_behaves_honestly) {
    // The paired counterfactual keeps node 0's power and connectivity and
    // changes only its strategy, so the ratio isolates withholding itself.
    const bool strategic = cfg.attacker.has_value() && !attacker_behaves_honestly;
    const attacker_config atk = cfg.attacker.value_or(attacker_config{});
    const bool privileged = cfg.attacker.has_value() && atk.instant_network;
    const double power = cfg.attacker ? cfg.attacker->power : 0.0;
    const std::uint32_t n = cfg.num_nodes;

    rng_stream rng(cfg.seed);
    std::vector<global_block> blocks;
    blocks.reserve(cfg.total_blocks + 1);
    blocks.push_back(global_block{}); // genesis
    std::vector<std::vector<std::uint32_t>> children(1);
    std::vector<node_view> views(n);
    for (node_view& v : views) v.add_genesis();

    std::priority_queue<event, std::vector<event>, event_after> queue;
    std::uint64_t seq = 0;
    std::vector<std::uint32_t> scratch;

    // Latest own block the attacker has not yet released, if any.
    std::uint32_t withheld_tip = global_block::no_parent;
    double withheld_release = 0.0;

    queue.push({rng.exponential(1.0 / cfg.block_rate), seq++, event::kind::creation, 0, 0});
    std::uint32_t created = 0;

    while (created < cfg.total_blocks) {
        const event ev = queue.top();
        queue.pop();
        if (ev.what == event::kind::delivery) {
            views[ev.node].deliver(ev.block, blocks);
            continue;
        }

        const double now = ev.time;
        // Assign the creation proportionally to power: node 0 is the
        // attacker slot, honest miners split the remainder equally.
        std::uint32_t miner;
        {
            const double u = rng.uniform();
            if (cfg.attacker) {
                if (u < power) {
                    miner = 0;
                } else {
                    const double v = (u - power) / (1.0 - power);
                    miner = 1 + std::min<std::uint32_t>(n - 2, static_cast<std::uint32_t>(v * (n - 1)));
                }
            } else {
                miner = std::min<std::uint32_t>(n - 1, static_cast<std::uint32_t>(u * n));
            }
        }

        node_view& view = views[miner];
        const bool is_attacker_block = strategic && miner == 0;

        std::uint32_t parent;
        if (is_attacker_block && withheld_tip != global_block::no_parent && withheld_release > now) {
            parent = withheld_tip; // keep extending the private chain
        } else {
            parent = view.pivot_tip(blocks, children, scratch);
        }
        global_block blk;
        blk.parent = parent;
        for (std::uint32_t t : view.tips())
            if (t != parent) blk.refs.push_back(t);
        blk.miner = miner;
        blk.born_at = now;

        const auto idx = static_cast<std::uint32_t>(blocks.size());
        blocks.push_back(std::move(blk));
        children.emplace_back();
        children[parent].push_back(idx);
        view.deliver(idx, blocks);
        ++created;

        double release = now;
        if (is_attacker_block) {
            release = now + atk.withhold_s;
            withheld_tip = idx;
            withheld_release = release;
        }
        const bool deliverable = std::isfinite(release);
        for (std::uint32_t r = 0; r < n; ++r) {
            if (r == miner) continue;
            double delay = cfg.mean_delay_s;
            if (cfg.delays == delay_model::exponential) delay = rng.exponential(cfg.mean_delay_s);
            if (!deliverable) continue;
            double arrival;
            if (miner == 0 && privileged) {
                arrival = release; // broadcasts reach everyone immediately
            } else if (miner == 0 && cfg.attacker) {
                arrival = release + delay;
            } else if (r == 0 && privileged) {
                arrival = now; // node 0 hears everything immediately
            } else {
                arrival = now + delay;
            }
            queue.push({arrival, seq++, event::kind::delivery, idx, r});
        }

        if (created < cfg.total_blocks)
            queue.push({now + rng.exponential(1.0 / cfg.block_rate), seq++, event::kind::creation, 0, 0});
    }

    // Deliveries past the last creation cannot change any block; rewards
    // are evaluated on the union graph of everything created.
    sim_result res;
    for (std::uint32_t i = 0; i <= cfg.total_blocks; ++i) {
        const global_block& b = blocks[i];
        block out;
        out.id = i;
        if (i != 0) out.parent = b.parent;
        out.references.assign(b.refs.begin(), b.refs.end());
        out.miner = b.miner;
        out.born_at = b.born_at;
        res.graph.insert(std::move(out));
    }

    res.blocks_measured = cfg.total_blocks - cfg.warmup_blocks;
    if (cfg.attacker) res.per_miner_reward[0] = 0;
    for (std::uint32_t id = cfg.warmup_blocks + 1; id <= cfg.total_blocks; ++id) {
        const reward_info info = res.graph.reward(id, cfg.rewards);
        res.per_miner_reward[blocks[id].miner] += info.amount;
    }
    if (cfg.attacker) {
        for (std::uint32_t id = 1; id <= cfg.total_blocks; ++id)
            if (blocks[id].miner == 0) ++res.attacker_blocks_created;
    }
    return res;
}

} // namespace

void sim_config::validate() const {
    if (num_nodes < 1) throw std::invalid_argument("at least one node required");
    if (block_rate <= 0) throw std::invalid_argument("block rate must be positive");
    if (mean_delay_s < 0) throw std::invalid_argument("mean delay cannot be negative");
    if (total_blocks == 0) throw std::invalid_argument("total block budget must be positive");
    if (warmup_blocks >= total_blocks) throw std::invalid_argument("warmup must leave blocks to measure");
    if (rewards.penalty_divisor == 0) throw std::invalid_argument("penalty divisor must be positive");
    if (attacker) {
        if (!(attacker->power >= 0.0) || attacker->power >= 1.0)
            throw std::invalid_argument("attacker power must lie in [0,1)");
        if (std::isnan(attacker->withhold_s) || attacker->withhold_s < 0)
            throw std::invalid_argument("withhold period cannot be negative");
        if (num_nodes < 2) throw std::invalid_argument("attacker runs need at least two nodes");
    }
}

sim_result run_simulation(const sim_config& cfg) {
    cfg.validate();
    sim_result res = run_once(cfg, false);
    if (cfg.attacker) {
        res.attacker_reward = res.per_miner_reward.at(0);
        const drip_amount baseline = honest_reward_baseline(cfg);
        if (baseline > 0)
            res.attacker_reward_ratio = static_cast<double>(rational(res.attacker_reward, baseline));
    }
    return res;
}

drip_amount honest_reward_baseline(const sim_config& cfg) {
    cfg.validate();
    if (!cfg.attacker) throw std::invalid_argument("baseline requires an attacker slot");
    const sim_result base = run_once(cfg, true);
    return base.per_miner_reward.at(0);
}

std::vector<sweep_outcome> sweep(const std::vector<sim_config>& configs) {
    std::vector<sweep_outcome> out(configs.size());
    const std::size_t workers = std::max<std::size_t>(1u, std::thread::hardware_concurrency());
    for (std::size_t begin = 0; begin < configs.size(); begin += workers) {
        const std::size_t end = std::min(configs.size(), begin + workers);
        std::vector<std::future<void>> batch;
        for (std::size_t i = begin; i < end; ++i) {
            batch.push_back(std::async(std::launch::async, [&configs, &out, i] {
                try {
                    out[i].result = run_simulation(configs[i]);
                } catch (const std::exception& e) {
                    out[i].error = e.what();
                }
            }));
        }
        for (auto& f : batch) f.get();
    }
    return out;
}

} // namespace tgsim::net
