// Copyright (c) 2026 The tgsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <tgsim/treegraph.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <queue>
#include <set>

namespace tgsim {

drip_amount anticone_reward(const reward_params& params, std::uint64_t anticone_size) {
    const std::uint64_t divisor = params.penalty_divisor;
    if (anticone_size >= divisor) return 0;
    const drip_amount d2 = drip_amount(divisor) * divisor;
    const drip_amount kept = d2 - drip_amount(anticone_size) * anticone_size;
    return params.base_reward * kept / d2; // floor division, exact in Drip
}

tree_graph::tree_graph(std::uint32_t anticone_horizon) : horizon_(anticone_horizon) {}

std::uint32_t tree_graph::idx_of(block_id id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw graph_error("unknown block id " + std::to_string(id));
    return it->second;
}

const block& tree_graph::get(block_id id) const { return nodes_[idx_of(id)].blk; }

std::vector<block_id> tree_graph::insertion_order() const {
    std::vector<block_id> out;
    out.reserve(nodes_.size());
    for (const node& n : nodes_) out.push_back(n.blk.id);
    return out;
}

std::vector<block_id> tree_graph::children_of(block_id id) const {
    const node& n = nodes_[idx_of(id)];
    std::vector<block_id> out;
    out.reserve(n.tree_children.size());
    for (std::uint32_t c : n.tree_children) out.push_back(nodes_[c].blk.id);
    std::sort(out.begin(), out.end());
    return out;
}

void tree_graph::insert(block b) {
    if (index_.count(b.id)) throw graph_error("duplicate block id " + std::to_string(b.id));
    if (!b.parent.has_value()) {
        if (!nodes_.empty()) throw graph_error("missing parent for non-genesis block " + std::to_string(b.id));
        if (b.id != genesis_id) throw graph_error("genesis must use reserved id 0");
        if (!b.references.empty()) throw graph_error("genesis cannot carry references");
    } else {
        if (*b.parent == b.id) throw graph_error("self-referencing parent edge");
        if (!index_.count(*b.parent))
            throw graph_error("dangling parent edge " + std::to_string(b.id) + " -> " + std::to_string(*b.parent));
    }

    std::sort(b.references.begin(), b.references.end());
    b.references.erase(std::unique(b.references.begin(), b.references.end()), b.references.end());
    for (block_id r : b.references) {
        if (r == b.id) throw graph_error("self-reference on block " + std::to_string(b.id));
        if (b.parent && r == *b.parent) throw graph_error("parent listed in references of block " + std::to_string(b.id));
        if (!index_.count(r))
            throw graph_error("dangling reference edge " + std::to_string(b.id) + " -> " + std::to_string(r));
    }

    const auto self = static_cast<std::uint32_t>(nodes_.size());
    node n;
    n.blk = std::move(b);
    if (n.blk.parent) {
        const std::uint32_t p = index_.at(*n.blk.parent);
        nodes_[p].tree_children.push_back(self);
        nodes_[p].inbound.push_back(self);
        n.outbound.push_back(p);
    }
    for (block_id r : n.blk.references) {
        const std::uint32_t t = index_.at(r);
        nodes_[t].inbound.push_back(self);
        n.outbound.push_back(t);
    }
    index_.emplace(n.blk.id, self);
    nodes_.push_back(std::move(n));
    derived_.valid = false;
}

void tree_graph::compute_pivot(derived_state& d) const {
    d.pivot.clear();
    if (nodes_.empty()) return;

    // Insertion order is a valid topological order of the parent tree, so a
    // single reverse pass accumulates unit-weight subtree sizes.
    std::vector<std::uint64_t> subtree(nodes_.size(), 1);
    for (std::size_t i = nodes_.size(); i-- > 1;) {
        if (nodes_[i].blk.parent) subtree[index_.at(*nodes_[i].blk.parent)] += subtree[i];
    }

    std::uint32_t cur = 0; // genesis is always the first insert
    d.pivot.push_back(nodes_[cur].blk.id);
    while (!nodes_[cur].tree_children.empty()) {
        std::uint32_t best = nodes_[cur].tree_children.front();
        for (std::uint32_t c : nodes_[cur].tree_children) {
            if (subtree[c] > subtree[best] ||
                (subtree[c] == subtree[best] && nodes_[c].blk.id < nodes_[best].blk.id)) {
                best = c;
            }
        }
        cur = best;
        d.pivot.push_back(nodes_[cur].blk.id);
    }
}

std::vector<std::uint32_t> tree_graph::epoch_members_in_order(const std::vector<std::uint32_t>& members,
                                                              const std::vector<std::uint32_t>& epoch_index,
                                                              std::uint32_t epoch) const {
    // Kahn's algorithm over the edges internal to the epoch, smallest id
    // first among the ready blocks. Cross-epoch edges always point to
    // earlier epochs, so per-epoch ordering composes into a global one.
    std::unordered_map<std::uint32_t, std::uint32_t> deps;
    deps.reserve(members.size());
    for (std::uint32_t m : members) {
        std::uint32_t c = 0;
        for (std::uint32_t t : nodes_[m].outbound)
            if (epoch_index[t] == epoch) ++c;
        deps[m] = c;
    }
    auto by_id = [this](std::uint32_t a, std::uint32_t b) { return nodes_[a].blk.id > nodes_[b].blk.id; };
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, decltype(by_id)> ready(by_id);
    for (std::uint32_t m : members)
        if (deps[m] == 0) ready.push(m);

    std::vector<std::uint32_t> out;
    out.reserve(members.size());
    while (!ready.empty()) {
        const std::uint32_t x = ready.top();
        ready.pop();
        out.push_back(x);
        for (std::uint32_t y : nodes_[x].inbound) {
            if (epoch_index[y] != epoch) continue;
            if (--deps[y] == 0) ready.push(y);
        }
    }
    return out;
}

void tree_graph::compute_epochs(derived_state& d) const {
    d.partition = {};
    d.epoch_index.assign(nodes_.size(), k_unepoched);
    d.order.clear();
    if (nodes_.empty()) return;

    for (std::uint32_t k = 0; k < d.pivot.size(); ++k) {
        const std::uint32_t pivot_idx = index_.at(d.pivot[k]);
        std::vector<std::uint32_t> members;
        std::vector<std::uint32_t> stack{pivot_idx};
        if (d.epoch_index[pivot_idx] == k_unepoched) {
            d.epoch_index[pivot_idx] = k;
            members.push_back(pivot_idx);
        }
        while (!stack.empty()) {
            const std::uint32_t x = stack.back();
            stack.pop_back();
            for (std::uint32_t t : nodes_[x].outbound) {
                if (d.epoch_index[t] != k_unepoched) continue;
                d.epoch_index[t] = k;
                members.push_back(t);
                stack.push_back(t);
            }
        }
        epoch e;
        e.index = k;
        e.pivot_block = d.pivot[k];
        for (std::uint32_t m : epoch_members_in_order(members, d.epoch_index, k))
            e.members.push_back(nodes_[m].blk.id);
        for (block_id id : e.members) d.order.push_back(id);
        d.partition.epochs.push_back(std::move(e));
    }

    for (const node& n : nodes_)
        if (d.epoch_index[index_.at(n.blk.id)] == k_unepoched) d.partition.unepoched.push_back(n.blk.id);
    std::sort(d.partition.unepoched.begin(), d.partition.unepoched.end());
}

void tree_graph::ensure_derived() const {
    if (derived_.valid) return;
    compute_pivot(derived_);
    compute_epochs(derived_);
    derived_.valid = true;
}

const std::vector<block_id>& tree_graph::pivot_chain() const {
    if (nodes_.empty()) throw graph_error("pivot chain of an empty graph");
    ensure_derived();
    return derived_.pivot;
}

const epoch_partition& tree_graph::epochs() const {
    ensure_derived();
    return derived_.partition;
}

std::optional<std::uint32_t> tree_graph::epoch_of(block_id id) const {
    const std::uint32_t i = idx_of(id);
    ensure_derived();
    if (derived_.epoch_index[i] == k_unepoched) return std::nullopt;
    return derived_.epoch_index[i];
}

const std::vector<block_id>& tree_graph::total_order() const {
    ensure_derived();
    return derived_.order;
}

std::vector<block_id> tree_graph::anticone(block_id id) const {
    const std::uint32_t b = idx_of(id);
    ensure_derived();
    const std::uint32_t eb = derived_.epoch_index[b];
    if (eb == k_unepoched) throw graph_error("anticone undefined: block " + std::to_string(id) + " is not epoched");

    // Mark the past and future sub-graphs of b; what remains inside the
    // epoch horizon is the anticone.
    enum : unsigned char { none = 0, past = 1, future = 2 };
    std::vector<unsigned char> mark(nodes_.size(), none);
    std::vector<std::uint32_t> stack{b};
    while (!stack.empty()) {
        const std::uint32_t x = stack.back();
        stack.pop_back();
        for (std::uint32_t t : nodes_[x].outbound) {
            if (mark[t] & past) continue;
            mark[t] |= past;
            stack.push_back(t);
        }
    }
    stack.push_back(b);
    while (!stack.empty()) {
        const std::uint32_t x = stack.back();
        stack.pop_back();
        for (std::uint32_t t : nodes_[x].inbound) {
            if (mark[t] & future) continue;
            mark[t] |= future;
            stack.push_back(t);
        }
    }

    const std::uint64_t limit = std::uint64_t(eb) + horizon_;
    std::vector<block_id> out;
    for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
        if (i == b || mark[i] != none) continue;
        const std::uint32_t e = derived_.epoch_index[i];
        if (e == k_unepoched || e > limit) continue;
        out.push_back(nodes_[i].blk.id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

reward_info tree_graph::reward(block_id id, const reward_params& params) const {
    const std::uint32_t b = idx_of(id);
    ensure_derived();
    reward_info info;
    const std::uint32_t eb = derived_.epoch_index[b];
    if (eb == k_unepoched) {
        info.amount = 0;
        info.status = reward_status::deferred;
        return info;
    }
    info.anticone_size = anticone(id).size();
    info.amount = anticone_reward(params, info.anticone_size);
    const std::uint32_t last_epoch = static_cast<std::uint32_t>(derived_.pivot.size()) - 1;
    info.status = (std::uint64_t(eb) + params.horizon_epochs <= last_epoch) ? reward_status::finalized
                                                                            : reward_status::provisional;
    return info;
}

std::vector<applied_tx> tree_graph::apply_transactions() const {
    ensure_derived();
    std::vector<applied_tx> out;
    std::set<tx_id> seen;
    for (block_id id : derived_.order) {
        const block& blk = nodes_[index_.at(id)].blk;
        for (tx_id tx : blk.tx_ids) {
            if (!seen.insert(tx).second) continue; // duplicate: no-op
            out.push_back({tx, id});
        }
    }
    return out;
}

namespace {

std::string format_time(double t) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), t);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".eEni") == std::string::npos) s += ".0";
    return s;
}

std::uint64_t parse_u64(std::string_view tok, std::size_t line_no, const char* what) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw graph_error("snapshot line " + std::to_string(line_no) + ": bad " + what);
    return v;
}

} // namespace

std::string tree_graph::export_snapshot() const {
    std::string out;
    for (const node& n : nodes_) {
        out += std::to_string(n.blk.id);
        out += ' ';
        out += n.blk.parent ? std::to_string(*n.blk.parent) : "-";
        out += ' ';
        if (n.blk.references.empty()) {
            out += '-';
        } else {
            for (std::size_t i = 0; i < n.blk.references.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(n.blk.references[i]);
            }
        }
        out += ' ';
        out += std::to_string(n.blk.miner);
        out += ' ';
        out += format_time(n.blk.born_at);
        out += '\n';
    }
    return out;
}

tree_graph tree_graph::import_snapshot(std::string_view text, std::uint32_t anticone_horizon) {
    tree_graph g(anticone_horizon);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        std::vector<std::string_view> tok;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
            if (j > i) tok.push_back(line.substr(i, j - i));
            i = j;
        }
        if (tok.empty()) continue;
        if (tok.size() != 5) throw graph_error("snapshot line " + std::to_string(line_no) + ": expected 5 fields");

        block b;
        b.id = parse_u64(tok[0], line_no, "block id");
        if (tok[1] != "-") b.parent = parse_u64(tok[1], line_no, "parent id");
        if (tok[2] != "-") {
            std::string_view refs = tok[2];
            std::size_t r = 0;
            while (r < refs.size()) {
                std::size_t c = refs.find(',', r);
                if (c == std::string_view::npos) c = refs.size();
                b.references.push_back(parse_u64(refs.substr(r, c - r), line_no, "reference id"));
                r = c + 1;
            }
        }
        b.miner = parse_u64(tok[3], line_no, "miner id");
        {
            const std::string t(tok[4]);
            char* endp = nullptr;
            b.born_at = std::strtod(t.c_str(), &endp);
            if (endp != t.c_str() + t.size())
                throw graph_error("snapshot line " + std::to_string(line_no) + ": bad timestamp");
        }
        g.insert(std::move(b));
    }
    return g;
}

} // namespace tgsim
