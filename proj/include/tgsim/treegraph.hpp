// Copyright (c) 2026 The tgsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <tgsim/amount.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tgsim {

using block_id = std::uint64_t;
using miner_id = std::uint64_t;
using tx_id = std::uint64_t;

inline constexpr block_id genesis_id = 0;

struct graph_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One node of the TreeGraph: exactly one parent edge (absent only for
// genesis) plus reference edges to previously unreferenced blocks.
struct block {
    block_id id = 0;
    std::optional<block_id> parent;
    std::vector<block_id> references; // deduplicated, parent never included
    miner_id miner = 0;
    double born_at = 0.0;
    std::vector<tx_id> tx_ids;
};

struct reward_params {
    drip_amount base_reward = drip_per_cfx; // B0
    std::uint32_t penalty_divisor = 100;
    std::uint32_t horizon_epochs = 10;
};

// Final reward after the anti-cone penalty:
//   B0 * max{0, 1 - (anticone_size / divisor)^2}
// evaluated in rational arithmetic and floored to whole Drip.
drip_amount anticone_reward(const reward_params& params, std::uint64_t anticone_size);

struct epoch {
    std::uint32_t index = 0;
    block_id pivot_block = 0;
    // Members in execution order: topological over parent+reference edges,
    // ties broken by smaller block id. The pivot block is always last.
    std::vector<block_id> members;
};

struct epoch_partition {
    std::vector<epoch> epochs;
    // Blocks not reachable from any pivot block (dangling tips of a graph
    // that is not yet tip-referenced), sorted by id.
    std::vector<block_id> unepoched;
};

enum class reward_status {
    finalized,   // pivot chain extends >= horizon epochs past the block's epoch
    provisional, // epoched, but the anticone may still grow
    deferred,    // not yet epoched; no reward can be evaluated
};

struct reward_info {
    drip_amount amount;
    reward_status status = reward_status::deferred;
    std::uint64_t anticone_size = 0;
};

struct applied_tx {
    tx_id tx = 0;
    block_id in_block = 0;
};

// Append-only TreeGraph DAG with derived pivot chain, epochs, total order
// and anticone queries. Insertion must be past-closed (every parent and
// reference already present), which keeps the edge set acyclic by
// construction.
//
// Derived structures are recomputed lazily after mutation; all results
// depend only on the block set, never on insertion order.
//
// Concurrency: single writer; concurrent readers are safe only after a
// mutation (and the first derived query following it) has completed.
class tree_graph {
public:
    explicit tree_graph(std::uint32_t anticone_horizon = 10);

    // Errors: duplicate id, dangling parent/reference, self-reference,
    // parent listed in references, missing parent on a non-genesis block.
    void insert(block b);

    bool contains(block_id id) const { return index_.count(id) != 0; }
    std::size_t size() const { return nodes_.size(); }
    std::uint32_t anticone_horizon() const { return horizon_; }
    const block& get(block_id id) const;

    // Blocks in insertion order (a valid past-closed order).
    std::vector<block_id> insertion_order() const;

    // Children in the parent tree, sorted by id.
    std::vector<block_id> children_of(block_id id) const;

    // Heaviest-subtree descent from genesis over the parent tree, unit
    // block weights, ties broken by smaller id.
    const std::vector<block_id>& pivot_chain() const;

    const epoch_partition& epochs() const;
    std::optional<std::uint32_t> epoch_of(block_id id) const;

    // Global total order: epochs in pivot order, members in epoch order.
    // Covers exactly the epoched blocks.
    const std::vector<block_id>& total_order() const;

    // Blocks neither in the past nor the future sub-graph of `id`,
    // restricted to epochs <= epoch(id) + horizon. Sorted by id.
    // Errors: unknown id; id not yet epoched.
    std::vector<block_id> anticone(block_id id) const;

    reward_info reward(block_id id, const reward_params& params) const;

    // First-occurrence transaction execution over the total order;
    // duplicates (across or within blocks) are discarded as no-ops.
    std::vector<applied_tx> apply_transactions() const;

    // Line-oriented snapshot: `id parent ref,ref,... miner born_at` with
    // `-` for the missing parent / empty reference list.
    std::string export_snapshot() const;
    static tree_graph import_snapshot(std::string_view text, std::uint32_t anticone_horizon = 10);

private:
    struct node {
        block blk;
        std::vector<std::uint32_t> tree_children; // parent-tree children
        std::vector<std::uint32_t> inbound;       // children + referrers (future direction)
        std::vector<std::uint32_t> outbound;      // parent + references (past direction)
    };

    struct derived_state {
        bool valid = false;
        std::vector<block_id> pivot;
        epoch_partition partition;
        std::vector<block_id> order;
        std::vector<std::uint32_t> epoch_index; // per node, k_unepoched if none
    };

    static constexpr std::uint32_t k_unepoched = 0xffffffffu;

    std::uint32_t idx_of(block_id id) const;
    void ensure_derived() const;
    void compute_pivot(derived_state& d) const;
    void compute_epochs(derived_state& d) const;
    std::vector<std::uint32_t> epoch_members_in_order(const std::vector<std::uint32_t>& members,
                                                      const std::vector<std::uint32_t>& epoch_index,
                                                      std::uint32_t epoch) const;

    std::uint32_t horizon_;
    std::vector<node> nodes_; // insertion order
    std::unordered_map<block_id, std::uint32_t> index_;
    mutable derived_state derived_;
};

} // namespace tgsim
