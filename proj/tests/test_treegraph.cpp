// Copyright (c) 2026 The tgsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <tgsim/treegraph.hpp>

#include "graph_fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace tgsim;
using fixtures::make_block;

TEST_SUITE_BEGIN("treegraph");

TEST_CASE("genesis insertion and a single chain") {
    tree_graph g;
    g.insert(make_block(0, std::nullopt, {}));
    CHECK(g.size() == 1);
    CHECK(g.pivot_chain() == std::vector<block_id>{0});

    g.insert(make_block(1, 0, {}));
    CHECK(g.pivot_chain() == std::vector<block_id>{0, 1});
    g.insert(make_block(2, 1, {}));
    CHECK(g.pivot_chain() == std::vector<block_id>{0, 1, 2});
    CHECK(g.total_order() == std::vector<block_id>{0, 1, 2});

    // Each chain block forms its own epoch; chain tips have empty anticones.
    CHECK(g.epochs().epochs.size() == 3);
    CHECK(g.anticone(2).empty());
    CHECK(g.anticone(0).empty());
}

TEST_CASE("insert rejects malformed blocks") {
    tree_graph g;
    CHECK_THROWS_AS(g.insert(make_block(1, 0, {})), graph_error); // dangling parent into empty graph
    g.insert(make_block(0, std::nullopt, {}));
    CHECK_THROWS_AS(g.insert(make_block(0, std::nullopt, {})), graph_error);  // duplicate genesis
    CHECK_THROWS_AS(g.insert(make_block(5, 3, {})), graph_error);             // dangling parent
    CHECK_THROWS_AS(g.insert(make_block(5, 0, {7})), graph_error);            // dangling reference
    CHECK_THROWS_AS(g.insert(make_block(5, 5, {})), graph_error);             // self parent
    CHECK_THROWS_AS(g.insert(make_block(5, 0, {5})), graph_error);            // self reference
    CHECK_THROWS_AS(g.insert(make_block(5, 0, {0})), graph_error);            // parent repeated as reference
    CHECK_THROWS_AS(g.insert(make_block(5, std::nullopt, {})), graph_error);  // non-genesis without parent
    CHECK(g.size() == 1);
    CHECK_THROWS_AS(g.get(42), graph_error);
    CHECK_THROWS_AS(g.anticone(42), graph_error);
}

TEST_CASE("pivot tie broken by smaller id") {
    tree_graph g;
    g.insert(make_block(0, std::nullopt, {}));
    g.insert(make_block(2, 0, {}));
    g.insert(make_block(1, 0, {}));
    CHECK(g.pivot_chain() == std::vector<block_id>{0, 1});
}

TEST_CASE("worked example graph: pivot, epochs, order, anticone") {
    const tree_graph g = fixtures::worked_example_graph();

    CHECK(g.pivot_chain() == std::vector<block_id>{0, 1, 3, 5, 8});

    // F (id 6) is concurrent with exactly D (4) and G (7).
    CHECK(g.anticone(6) == std::vector<block_id>{4, 7});
    CHECK(g.anticone(0).empty());

    const auto& order = g.total_order();
    CHECK(order == std::vector<block_id>{0, 1, 2, 3, 6, 5, 4, 7, 9, 10, 8});

    auto rank = [&](block_id id) {
        return std::find(order.begin(), order.end(), id) - order.begin();
    };
    CHECK(rank(1) < rank(6));  // A is ahead of F (earlier epoch)
    CHECK(rank(10) < rank(8)); // J is ahead of H (same epoch, topological)

    CHECK(g.epoch_of(10) == g.epoch_of(8));
    CHECK(g.epochs().unepoched.empty());
    const auto& epochs = g.epochs().epochs;
    REQUIRE(epochs.size() == 5);
    CHECK(epochs[2].members == std::vector<block_id>{2, 3});
    CHECK(epochs[4].members == std::vector<block_id>{4, 7, 9, 10, 8});
    for (const auto& e : epochs) CHECK(e.members.back() == e.pivot_block);
}

TEST_CASE("worked example matches the brute-force oracle") {
    const auto blocks = fixtures::worked_example_blocks();
    const oracle::graph og(blocks);
    const tree_graph g = fixtures::worked_example_graph();

    CHECK(og.pivot_chain() == g.pivot_chain());
    for (const block& b : blocks) {
        const auto got = g.anticone(b.id);
        const std::set<block_id> want = og.anticone(b.id, g.anticone_horizon());
        CHECK(std::set<block_id>(got.begin(), got.end()) == want);
    }
}

TEST_CASE("unreferenced off-pivot block stays unepoched and its reward defers") {
    tree_graph g;
    g.insert(make_block(0, std::nullopt, {}));
    g.insert(make_block(1, 0, {}));
    g.insert(make_block(2, 1, {}));
    g.insert(make_block(9, 0, {})); // dangling side tip, nothing references it

    CHECK(g.epochs().unepoched == std::vector<block_id>{9});
    CHECK(g.total_order() == std::vector<block_id>{0, 1, 2});
    CHECK_THROWS_AS(g.anticone(9), graph_error);

    const reward_info r = g.reward(9, reward_params{});
    CHECK(r.status == reward_status::deferred);
    CHECK(r.amount == 0);
}

TEST_CASE("anticone horizon excludes far-future epochs, keeps earlier ones") {
    // Pivot chain c1..c15, one epoch per block. Side blocks hanging off
    // genesis: s referenced in epoch 2, t11 in epoch 11, t13 in epoch 13.
    tree_graph g;
    g.insert(make_block(0, std::nullopt, {}));
    g.insert(make_block(101, 0, {})); // s
    g.insert(make_block(111, 0, {})); // t11
    g.insert(make_block(113, 0, {})); // t13
    block_id prev = 0;
    for (block_id i = 1; i <= 15; ++i) {
        std::vector<block_id> refs;
        if (i == 2) refs.push_back(101);
        if (i == 11) refs.push_back(111);
        if (i == 13) refs.push_back(113);
        g.insert(make_block(i, prev, refs));
        prev = i;
    }

    REQUIRE(g.epoch_of(101) == 2);
    REQUIRE(g.epoch_of(111) == 11);
    REQUIRE(g.epoch_of(113) == 13);

    const auto a = g.anticone(101);
    const std::set<block_id> got(a.begin(), a.end());
    CHECK(got.count(1) == 1);     // concurrent, same window
    CHECK(got.count(111) == 1);   // epoch 11 <= 2 + 10
    CHECK(got.count(113) == 0);   // epoch 13 > 2 + 10: beyond the horizon
    // Blocks in epochs before t13's are still counted against t13.
    const auto a13 = g.anticone(113);
    CHECK(std::set<block_id>(a13.begin(), a13.end()).count(101) == 1);

    // Reward finality: epoch 2 + 10 <= 14 < 15 epochs, so s is finalized,
    // while the chain tip is still provisional.
    CHECK(g.reward(101, reward_params{}).status == reward_status::finalized);
    CHECK(g.reward(15, reward_params{}).status == reward_status::provisional);
}

TEST_CASE("anticone reward penalty") {
    reward_params p;
    p.base_reward = drip_per_cfx; // 10^18

    CHECK(anticone_reward(p, 0) == drip_per_cfx);
    CHECK(anticone_reward(p, 100) == 0);
    CHECK(anticone_reward(p, 250) == 0);
    // 1 - (10/100)^2 = 0.99 exactly
    CHECK(anticone_reward(p, 10) == drip_amount("990000000000000000"));

    drip_amount prev = anticone_reward(p, 0);
    for (std::uint64_t a = 1; a <= 120; ++a) {
        const drip_amount r = anticone_reward(p, a);
        CHECK(r <= prev);
        CHECK(r >= 0);
        CHECK(r <= p.base_reward);
        prev = r;
    }

    // Floor stays within one Drip of the exact rational value.
    p.base_reward = drip_amount("123456789123456789");
    for (std::uint64_t a : {1u, 7u, 37u, 99u}) {
        const rational exact = rational(p.base_reward) * rational(10000 - a * a, 10000);
        const drip_amount floored = anticone_reward(p, a);
        CHECK(rational(floored) <= exact);
        CHECK(exact < rational(floored + 1));
    }
}

TEST_CASE("transaction application discards duplicates") {
    tree_graph g = fixtures::worked_example_graph();
    // Give J (10) and H (8) an overlapping transaction; J precedes H.
    tree_graph g2;
    for (block b : fixtures::worked_example_blocks()) {
        if (b.id == 10) b.tx_ids = {7, 7, 21}; // in-block duplicate too
        if (b.id == 8) b.tx_ids = {7, 33};
        g2.insert(std::move(b));
    }
    const auto applied = g2.apply_transactions();
    REQUIRE(applied.size() == 3);
    CHECK(applied[0].tx == 7);
    CHECK(applied[0].in_block == 10);
    CHECK(applied[1].tx == 21);
    CHECK(applied[2].tx == 33);

    // No duplicates: execution sequence is the concatenation in order.
    tree_graph g3;
    g3.insert(make_block(0, std::nullopt, {}));
    block b1 = make_block(1, 0, {});
    b1.tx_ids = {5, 6};
    g3.insert(std::move(b1));
    block b2 = make_block(2, 1, {});
    b2.tx_ids = {8};
    g3.insert(std::move(b2));
    const auto seq = g3.apply_transactions();
    REQUIRE(seq.size() == 3);
    CHECK(seq[0].tx == 5);
    CHECK(seq[1].tx == 6);
    CHECK(seq[2].tx == 8);
}

TEST_CASE("random graphs agree with the oracle pipeline") {
    std::mt19937_64 rng(20260315);
    for (int round = 0; round < 60; ++round) {
        const std::size_t n = 5 + rng() % 40;
        const auto blocks = fixtures::random_tip_referenced_blocks(rng, n, /*close=*/true);
        tree_graph g;
        for (block b : blocks) g.insert(std::move(b));
        const oracle::graph og(blocks);

        CHECK(g.pivot_chain() == og.pivot_chain());

        const auto epochs = og.epoch_assignment();
        for (const block& b : blocks) {
            const auto got = g.epoch_of(b.id);
            REQUIRE(got.has_value());
            CHECK(*got == epochs.at(b.id));
            const auto a = g.anticone(b.id);
            CHECK(std::set<block_id>(a.begin(), a.end()) == og.anticone(b.id, g.anticone_horizon()));
        }

        // Total order is a permutation of all blocks respecting edges.
        const auto& order = g.total_order();
        CHECK(order.size() == blocks.size());
        std::map<block_id, std::size_t> rank;
        for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
        for (const block& b : blocks) {
            if (b.parent) CHECK(rank.at(*b.parent) < rank.at(b.id));
            for (block_id r : b.references) CHECK(rank.at(r) < rank.at(b.id));
        }
    }
}

TEST_CASE("derived outputs are insertion-order independent") {
    std::mt19937_64 rng(777);
    for (int round = 0; round < 40; ++round) {
        const std::size_t n = 6 + rng() % 40;
        const auto blocks = fixtures::random_tip_referenced_blocks(rng, n, /*close=*/round % 2 == 0);

        tree_graph a;
        for (block b : blocks) a.insert(std::move(b));
        tree_graph b_graph;
        for (block b : fixtures::shuffled_past_closed(rng, blocks)) b_graph.insert(std::move(b));

        CHECK(a.pivot_chain() == b_graph.pivot_chain());
        CHECK(a.total_order() == b_graph.total_order());
        CHECK(a.epochs().unepoched == b_graph.epochs().unepoched);
        REQUIRE(a.epochs().epochs.size() == b_graph.epochs().epochs.size());
        for (std::size_t k = 0; k < a.epochs().epochs.size(); ++k)
            CHECK(a.epochs().epochs[k].members == b_graph.epochs().epochs[k].members);
    }
}

TEST_CASE("appending to the pivot tip never shortens the pivot chain") {
    std::mt19937_64 rng(424242);
    for (int round = 0; round < 25; ++round) {
        const std::size_t n = 5 + rng() % 30;
        const auto blocks = fixtures::random_tip_referenced_blocks(rng, n);
        tree_graph g;
        for (block b : blocks) g.insert(std::move(b));

        const auto before = g.pivot_chain();
        g.insert(make_block(10000, before.back(), {}));
        const auto& after = g.pivot_chain();
        REQUIRE(after.size() == before.size() + 1);
        CHECK(std::equal(before.begin(), before.end(), after.begin()));
        CHECK(after.back() == 10000);
    }
}

TEST_CASE("snapshot round-trip and parse errors") {
    const tree_graph g = fixtures::worked_example_graph();
    const std::string snap = g.export_snapshot();

    const tree_graph h = tree_graph::import_snapshot(snap);
    CHECK(h.size() == g.size());
    CHECK(h.pivot_chain() == g.pivot_chain());
    CHECK(h.total_order() == g.total_order());
    CHECK(h.export_snapshot() == snap);

    // The genesis line of the documented format.
    CHECK(snap.substr(0, snap.find('\n')) == "0 - - 0 0.0");

    CHECK_THROWS_AS(tree_graph::import_snapshot("0 - - 0 0.0\n2 1 - 0 1.0\n"), graph_error);
    CHECK_THROWS_AS(tree_graph::import_snapshot("0 - -\n"), graph_error);
    CHECK_THROWS_AS(tree_graph::import_snapshot("0 - - 0 zebra\n"), graph_error);

    // Comments and blank lines are tolerated.
    const tree_graph k = tree_graph::import_snapshot("# snapshot\n\n0 - - 0 0.0\n1 0 - 3 2.5\n");
    CHECK(k.size() == 2);
    CHECK(k.get(1).miner == 3);
}

TEST_SUITE_END();
