// Copyright (c) 2026 The tgsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <tgsim/scenario.hpp>

#include <tgsim/attack.hpp>
#include <tgsim/econ.hpp>
#include <tgsim/netsim.hpp>
#include <tgsim/treegraph.hpp>

#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace tgsim::scenario {

const char* const version = "0.1.0";

validation_error::validation_error(std::vector<cfg::diagnostic> diags)
    : std::runtime_error(diags.empty() ? "invalid scenario"
                                       : diags.front().path + ": " + diags.front().message),
      diagnostics(std::move(diags)) {}

namespace {

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt(const rational& v) { return fmt(static_cast<double>(v)); }

// ---------------------------------------------------------------------
// Scenario schemas
// ---------------------------------------------------------------------

struct selfish_scenario {
    net::sim_config base; // attacker/seed filled per run
    std::vector<double> powers;
    std::vector<double> withholds;
    std::vector<std::uint64_t> seeds;
    bool instant_network = true;
    bool export_graph = false; // also write each run's final graph snapshot
};

selfish_scenario read_selfish(cfg::config_reader& r, std::optional<std::uint64_t> seed_override) {
    selfish_scenario s;
    s.base.num_nodes = static_cast<std::uint32_t>(r.get_u64("nodes", 200));
    s.base.block_rate = r.get_double("block_rate", 2.0);
    s.base.mean_delay_s = r.get_double("mean_delay_s", 4.1);
    s.base.total_blocks = static_cast<std::uint32_t>(r.get_u64("total_blocks", 2000));
    s.base.warmup_blocks = static_cast<std::uint32_t>(r.get_u64("warmup_blocks", 1000));
    const std::string model = r.get_string("delay_model", "exponential");
    if (model == "constant") {
        s.base.delays = net::delay_model::constant;
    } else if (model == "exponential") {
        s.base.delays = net::delay_model::exponential;
    } else {
        r.fail("delay_model", "expected `constant` or `exponential`, got `" + model + "`");
    }
    s.powers = r.get_double_list("attacker.power", {0.3});
    s.withholds = r.get_double_list("attacker.withhold_s", {8.0});
    s.instant_network = r.get_bool("attacker.instant_network", true);
    s.export_graph = r.get_bool("export_graph", false);
    s.seeds = r.get_u64_list("seeds", {r.get_u64("seed", 1)});
    if (seed_override) s.seeds = {*seed_override};

    if (s.base.num_nodes < 2) r.fail("nodes", "attacker runs need at least two nodes");
    if (s.base.block_rate <= 0) r.fail("block_rate", "must be positive");
    if (s.base.mean_delay_s < 0) r.fail("mean_delay_s", "cannot be negative");
    if (s.base.warmup_blocks >= s.base.total_blocks)
        r.fail("warmup_blocks", "must leave blocks to measure");
    for (double p : s.powers)
        if (!(p >= 0.0) || p >= 1.0) r.fail("attacker.power", "out of [0,1): " + fmt(p));
    for (double w : s.withholds)
        if (!(w >= 0.0)) r.fail("attacker.withhold_s", "cannot be negative: " + fmt(w));
    return s;
}

struct revenue_scenario {
    econ::econ_params params;
    std::vector<double> fees;
    std::vector<std::string> adoptions;
    std::vector<econ::price_mode> modes;
    std::uint32_t horizon = 1095;
};

revenue_scenario read_revenue(cfg::config_reader& r) {
    revenue_scenario s;
    r.require("genesis_cfx");
    r.require("initial_price");
    s.params.genesis_drip = cfx_to_drip(r.get_u64("genesis_cfx", 1));
    s.params.initial_price = r.get_decimal("initial_price", rational(1, 10));
    s.params.block_inflation = r.get_decimal("block_inflation", rational(1, 20));
    s.params.interest_rate = r.get_decimal("interest_rate", rational(1, 50));
    s.params.bond_per_tx = r.get_decimal("bond_per_tx", rational(1, 100));
    s.params.locked_fraction = r.get_decimal("locked_fraction", 0);
    if (auto bond_rate = r.get_optional_decimal("daily_bond_rate")) s.params.daily_bond_rate = bond_rate;
    s.params.capacity_tps = r.get_double("capacity_tps", 3200.0);
    s.params.price_growth = r.get_double("price_growth", 0.0031);
    s.horizon = static_cast<std::uint32_t>(r.get_u64("horizon_days", 1095));
    s.fees = r.get_double_list("avg_fee", {0.01});
    s.adoptions = r.get_string_list("adoption", {"eth"});

    for (const std::string& mode : r.get_string_list("price_mode", {"inflation"})) {
        if (mode == "inflation") {
            s.modes.push_back(econ::price_mode::inflation);
        } else if (mode == "speculative") {
            s.modes.push_back(econ::price_mode::speculative);
        } else {
            r.fail("price_mode", "expected `inflation` or `speculative`, got `" + mode + "`");
        }
    }

    if (s.params.genesis_drip <= 0) r.fail("genesis_cfx", "must be positive");
    if (s.params.initial_price <= 0) r.fail("initial_price", "must be positive");
    if (s.params.block_inflation < 0 || s.params.block_inflation >= 1)
        r.fail("block_inflation", "out of [0,1)");
    if (s.params.interest_rate < 0 || s.params.interest_rate >= 1)
        r.fail("interest_rate", "out of [0,1)");
    if (s.params.bond_per_tx < 0) r.fail("bond_per_tx", "cannot be negative");
    if (s.params.locked_fraction < 0 || s.params.locked_fraction > 1)
        r.fail("locked_fraction", "out of [0,1]");
    if (s.params.capacity_tps <= 0) r.fail("capacity_tps", "must be positive");
    if (s.params.price_growth <= -1.0) r.fail("price_growth", "must exceed -1");
    if (s.horizon < 1) r.fail("horizon_days", "must cover at least one day");
    for (double f : s.fees)
        if (f < 0) r.fail("avg_fee", "cannot be negative: " + fmt(f));
    for (const std::string& name : s.adoptions)
        if (!econ::adoption_by_name(name)) r.fail("adoption", "unknown curve `" + name + "`");

    int sweeps = (s.fees.size() > 1) + (s.adoptions.size() > 1) + (s.modes.size() > 1);
    if (sweeps > 1)
        r.fail("avg_fee", "only one of avg_fee/adoption/price_mode may sweep");
    if (!s.adoptions.empty())
        if (auto curve = econ::adoption_by_name(s.adoptions.front())) s.params.adoption = *curve;
    return s;
}

struct bounds_scenario {
    std::vector<std::uint64_t> lengths;
    std::vector<rational> advantages;
    std::vector<rational> rewards;
};

bounds_scenario read_bounds(cfg::config_reader& r) {
    bounds_scenario s;
    s.lengths = r.get_u64_list("t", {});
    for (const std::string& a : r.get_string_list("advantage", {"2"})) {
        try {
            s.advantages.push_back(cfg::parse_decimal(a));
        } catch (const cfg::parse_error&) {
            r.fail("advantage", "expected decimals, got `" + a + "`");
        }
    }
    for (const std::string& b : r.get_string_list("block_reward", {"1"})) {
        try {
            s.rewards.push_back(cfg::parse_decimal(b));
        } catch (const cfg::parse_error&) {
            r.fail("block_reward", "expected decimals, got `" + b + "`");
        }
    }
    if (s.lengths.empty()) r.fail("t", "required key is missing");
    for (std::uint64_t t : s.lengths)
        if (t < 1) r.fail("t", "attack length must be at least 1");
    for (const rational& a : s.advantages)
        if (a <= 1) r.fail("advantage", "must exceed 1");
    for (const rational& b : s.rewards)
        if (b <= 0) r.fail("block_reward", "must be positive");
    return s;
}

struct demo_scenario {
    std::string snapshot_path; // empty: use the built-in example graph
};

demo_scenario read_demo(cfg::config_reader& r) {
    demo_scenario s;
    s.snapshot_path = r.get_string("snapshot", "");
    return s;
}

// The worked example graph shipped with the consensus demo.
tree_graph builtin_demo_graph() {
    return tree_graph::import_snapshot(
        "0 - - 0 0.0\n"
        "1 0 - 1 1.0\n"
        "2 0 - 2 1.2\n"
        "3 1 2 3 2.0\n"
        "4 1 - 4 2.2\n"
        "6 3 - 6 3.0\n"
        "5 3 6 5 3.5\n"
        "7 4 - 7 3.2\n"
        "9 5 - 9 4.2\n"
        "10 6 - 10 4.0\n"
        "8 5 7,9,10 8 5.0\n");
}

// ---------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------

struct writer {
    std::filesystem::path dir;
    std::vector<std::string> files;

    std::ofstream open(const std::string& filename) {
        std::filesystem::create_directories(dir);
        const auto path = dir / filename;
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open output file " + path.string());
        files.push_back(path.string());
        return out;
    }
};

void run_selfish(const selfish_scenario& s, const std::string& name, writer& w) {
    std::vector<net::sim_config> grid;
    for (double power : s.powers) {
        for (double withhold : s.withholds) {
            for (std::uint64_t seed : s.seeds) {
                net::sim_config cfg = s.base;
                cfg.seed = seed;
                cfg.attacker = net::attacker_config{power, withhold, s.instant_network};
                grid.push_back(cfg);
            }
        }
    }
    const auto outcomes = net::sweep(grid);

    auto csv = w.open(name + ".csv");
    csv << "power,withhold_s,seed,ratio,blocks_measured\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& outcome = outcomes[i];
        if (!outcome.result) throw std::runtime_error("simulation failed: " + outcome.error);
        const auto& res = *outcome.result;
        csv << fmt(grid[i].attacker->power) << ',' << fmt(grid[i].attacker->withhold_s) << ','
            << grid[i].seed << ',' << (res.attacker_reward_ratio ? fmt(*res.attacker_reward_ratio) : "nan")
            << ',' << res.blocks_measured << '\n';
        if (s.export_graph) {
            auto snap = w.open(name + ".p" + fmt(grid[i].attacker->power) + ".w" +
                               fmt(grid[i].attacker->withhold_s) + ".s" + std::to_string(grid[i].seed) +
                               ".snapshot.txt");
            snap << res.graph.export_snapshot();
        }
    }
}

void run_revenue(const revenue_scenario& s, const std::string& name, writer& w) {
    auto csv = w.open(name + ".csv");

    if (s.adoptions.size() > 1) {
        // Per-curve component decomposition, one column group per curve.
        std::vector<std::vector<econ::day_revenue>> series;
        csv << "day";
        for (const std::string& curve_name : s.adoptions) {
            econ::econ_params p = s.params;
            p.avg_fee = s.fees.front();
            p.adoption = *econ::adoption_by_name(curve_name);
            series.push_back(econ::revenue_series(p, s.horizon, s.modes.front()));
            csv << ',' << curve_name << "_reward," << curve_name << "_interest," << curve_name
                << "_fees," << curve_name << "_total";
        }
        csv << '\n';
        for (std::uint32_t d = 0; d < s.horizon; ++d) {
            csv << (d + 1);
            for (const auto& col : series) {
                const auto& r = col[d];
                csv << ',' << fmt(r.price * r.block_reward_tokens) << ','
                    << fmt(r.price * r.interest_tokens) << ',' << fmt(r.fees) << ',' << fmt(r.total);
            }
            csv << '\n';
        }
        return;
    }

    if (s.fees.size() > 1) {
        std::vector<std::vector<econ::day_revenue>> series;
        csv << "day";
        for (double fee : s.fees) {
            econ::econ_params p = s.params;
            p.avg_fee = fee;
            series.push_back(econ::revenue_series(p, s.horizon, s.modes.front()));
            csv << ",m_f" << fmt(fee);
        }
        csv << '\n';
        for (std::uint32_t d = 0; d < s.horizon; ++d) {
            csv << (d + 1);
            for (const auto& col : series) csv << ',' << fmt(col[d].total);
            csv << '\n';
        }
        return;
    }

    if (s.modes.size() > 1) {
        econ::econ_params p = s.params;
        p.avg_fee = s.fees.front();
        std::vector<std::vector<econ::day_revenue>> series;
        csv << "day";
        for (econ::price_mode mode : s.modes) {
            series.push_back(econ::revenue_series(p, s.horizon, mode));
            csv << (mode == econ::price_mode::inflation ? ",m_inflation" : ",m_speculative");
        }
        csv << '\n';
        for (std::uint32_t d = 0; d < s.horizon; ++d) {
            csv << (d + 1);
            for (const auto& col : series) csv << ',' << fmt(col[d].total);
            csv << '\n';
        }
        return;
    }

    econ::econ_params p = s.params;
    p.avg_fee = s.fees.front();
    csv << "day,block_reward_tokens,fees,interest_tokens,price,total\n";
    for (const auto& r : econ::revenue_series(p, s.horizon, s.modes.front())) {
        csv << r.day << ',' << fmt(r.block_reward_tokens) << ',' << fmt(r.fees) << ','
            << fmt(r.interest_tokens) << ',' << fmt(r.price) << ',' << fmt(r.total) << '\n';
    }
}

void run_bounds(const bounds_scenario& s, const std::string& name, writer& w) {
    auto csv = w.open(name + ".csv");
    csv << "t,A,B,serial_bound,pi_t,conflux_bound,gap\n";
    for (const auto& row : attack::bound_table(s.lengths, s.advantages, s.rewards)) {
        csv << row.t << ',' << fmt(row.advantage) << ',' << fmt(row.block_reward) << ','
            << fmt(row.serial) << ',' << fmt(row.pi) << ',' << fmt(row.conflux) << ','
            << fmt(row.gap) << '\n';
    }
}

void run_demo(const demo_scenario& s, const std::string& name, writer& w) {
    tree_graph g = builtin_demo_graph();
    if (!s.snapshot_path.empty()) {
        std::ifstream in(s.snapshot_path);
        if (!in) throw std::runtime_error("cannot read snapshot " + s.snapshot_path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        g = tree_graph::import_snapshot(buffer.str());
    }

    const reward_params params;
    auto csv = w.open(name + ".csv");
    csv << "rank,block,epoch,pivot,anticone,reward_drip,status\n";
    const auto& order = g.total_order();
    const auto& epochs = g.epochs().epochs;
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        const block_id id = order[rank];
        const std::uint32_t e = *g.epoch_of(id);
        const reward_info info = g.reward(id, params);
        const char* status = info.status == reward_status::finalized     ? "finalized"
                             : info.status == reward_status::provisional ? "provisional"
                                                                         : "deferred";
        csv << rank << ',' << id << ',' << e << ',' << (epochs[e].pivot_block == id ? 1 : 0) << ','
            << info.anticone_size << ',' << info.amount.str() << ',' << status << '\n';
    }

    auto snap = w.open(name + ".snapshot.txt");
    snap << g.export_snapshot();
}

std::vector<cfg::diagnostic> collect(const std::string& text,
                                     std::optional<std::uint64_t> seed_override,
                                     const std::vector<std::pair<std::string, std::string>>& overrides,
                                     std::optional<cfg::config_reader>& out_reader,
                                     std::string& out_kind) {
    cfg::config_reader reader = cfg::config_reader::parse(text);
    if (reader.entries().empty()) throw cfg::parse_error("empty scenario file");
    for (const auto& [key, value] : overrides) reader.override_value(key, value);

    const std::string kind = reader.get_string("kind", "");
    out_kind = kind;
    reader.get_string("description", ""); // free-form, informational
    if (kind == "selfish-mining") {
        read_selfish(reader, seed_override);
    } else if (kind == "revenue") {
        read_revenue(reader);
    } else if (kind == "bounds") {
        read_bounds(reader);
    } else if (kind == "consensus-demo") {
        read_demo(reader);
    } else {
        reader.fail("kind",
                    kind.empty() ? "required key is missing"
                                 : "expected one of consensus-demo|selfish-mining|revenue|bounds");
    }
    reader.flag_unknown_keys();
    auto diags = reader.diagnostics();
    out_reader = std::move(reader);
    return diags;
}

} // namespace

std::vector<cfg::diagnostic> validate_text(const std::string& text) {
    std::optional<cfg::config_reader> reader;
    std::string kind;
    try {
        return collect(text, std::nullopt, {}, reader, kind);
    } catch (const cfg::parse_error& e) {
        return {{"syntax", e.what()}};
    }
}

run_output run(const run_request& req) {
    std::optional<cfg::config_reader> reader;
    std::string kind;
    auto diags = collect(req.text, req.seed_override, req.overrides, reader, kind);
    if (!diags.empty()) throw validation_error(std::move(diags));

    writer w;
    w.dir = req.out_dir.empty() ? "." : req.out_dir;

    // Re-read through the validated reader; diagnostics are settled.
    cfg::config_reader& r = *reader;
    if (kind == "selfish-mining") {
        run_selfish(read_selfish(r, req.seed_override), req.name, w);
    } else if (kind == "revenue") {
        run_revenue(read_revenue(r), req.name, w);
    } else if (kind == "bounds") {
        run_bounds(read_bounds(r), req.name, w);
    } else {
        run_demo(read_demo(r), req.name, w);
    }

    nlohmann::ordered_json meta;
    meta["scenario"] = req.name;
    meta["kind"] = kind;
    meta["generator"] = std::string("tgsim ") + version;
    if (req.seed_override) meta["seed_override"] = *req.seed_override;
    nlohmann::ordered_json params;
    for (const auto& [key, value] : r.entries()) params[key] = value;
    meta["params"] = params;
    meta["outputs"] = w.files;

    auto out = w.open(req.name + ".meta.json");
    out << meta.dump(2) << '\n';
    return {w.files};
}

} // namespace tgsim::scenario
