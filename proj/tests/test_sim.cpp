#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "fedlora/errors.hpp"
#include "fedlora/perturbations.hpp"
#include "fedlora/report.hpp"
#include "fedlora/scenario.hpp"
#include "fedlora/simulate.hpp"
#include "fedlora/trace.hpp"

using namespace fedlora;

namespace {

ScenarioConfig tiny_config(const std::string& name, std::uint64_t seed) {
    ScenarioConfig c;
    c.name = name;
    c.seed = seed;
    c.model.input_dim = 8;
    c.model.hidden_dims = {8, 8};
    c.model.num_classes = 4;
    c.task.num_clients = 20;
    c.task.samples_per_client = 8;
    c.task.test_samples = 32;
    c.mix_counts = {4, 4, 4, 4, 4};
    c.clients_per_round = 4;
    c.rounds = 6;
    c.train.batch_size = 4;
    c.method.rank = 4;
    c.method.alpha = 4.0;
    return c;
}

std::filesystem::path temp_trace(const std::string& tag) {
    return std::filesystem::temp_directory_path() / ("fedlora_test_" + tag + ".trace.jsonl");
}

}  // namespace

TEST_CASE("select_clients: exhaustive, deterministic, sorted") {
    RngStream s1 = RngStream::derive(5, "select", 0);
    auto all = select_clients(7, 7, s1);
    CHECK(all == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6});

    RngStream s2 = RngStream::derive(5, "select", 3);
    RngStream s3 = RngStream::derive(5, "select", 3);
    CHECK(select_clients(100, 10, s2) == select_clients(100, 10, s3));

    RngStream s4 = RngStream::derive(5, "select", 4);
    CHECK_THROWS_AS(select_clients(5, 6, s4), ConfigError);
}

TEST_CASE("selection frequency is uniform over many rounds") {
    std::vector<std::size_t> hits(100, 0);
    const std::size_t rounds = 10000;
    for (std::size_t r = 0; r < rounds; ++r) {
        RngStream s = RngStream::derive(99, "select", r);
        for (std::size_t c : select_clients(100, 10, s)) hits[c]++;
    }
    // each client: Binomial(10000, 0.1), sigma = 30
    for (std::size_t c = 0; c < 100; ++c)
        CHECK(std::abs(static_cast<double>(hits[c]) - 1000.0) <= 3.0 * 30.0);
}

TEST_CASE("round_wall_clock is the straggler max plus server time") {
    CHECK(round_wall_clock({10, 20, 30}, 1) == 31.0);
    CHECK(round_wall_clock({42.5}, 0) == 42.5);
    RngStream rng(6);
    std::vector<double> durations;
    double mx = 0;
    for (int i = 0; i < 50; ++i) {
        durations.push_back(100.0 * rng.next_double());
        mx = std::max(mx, durations.back());
    }
    CHECK(round_wall_clock(durations, 2.5) == mx + 2.5);
}

TEST_CASE("client_costs unit arithmetic") {
    DeviceProfile p{"X", 10.0, 1000.0, 5.0, 2.0, 8.0};
    // 1 MB total at 8 Mbps, multiplier 1 -> exactly 1 second
    ClientCosts c = client_costs(p, 500000, 500000, 0.0, 1.0, 100.0);
    CHECK(c.comm_seconds == doctest::Approx(1.0).epsilon(1e-12));

    // 5 W for 7200 s of training, no comm -> 36 kJ
    ClientCosts e = client_costs(p, 0, 0, 72000.0, 1.0, 100.0);
    CHECK(e.train_seconds == doctest::Approx(7200.0));
    CHECK(e.energy_kj == doctest::Approx(36.0).epsilon(1e-12));

    // multiplier 1/4 scales comm time by exactly 4
    ClientCosts q = client_costs(p, 500000, 500000, 0.0, 0.25, 100.0);
    CHECK(q.comm_seconds == doctest::Approx(4.0 * c.comm_seconds).epsilon(1e-12));

    // a stalled upload adds straight comm seconds and comm energy
    ClientCosts t = client_costs(p, 500000, 0, 0.0, 1.0, 100.0, 30.0);
    CHECK(t.comm_seconds == doctest::Approx(0.5 + 30.0).epsilon(1e-12));
    CHECK(t.energy_kj == doctest::Approx(2.0 * (0.5 + 30.0) / 1000.0).epsilon(1e-12));
}

TEST_CASE("memory_footprint matches a buffer-enumeration oracle") {
    FootprintSpec spec;
    spec.layer_dims = {{32, 32}, {32, 32}, {32, 8}};
    spec.rank = 8;
    spec.batch = 16;
    spec.overhead_mb = 64.0;

    // oracle: push every allocated buffer explicitly
    std::vector<std::size_t> buffers;
    buffers.push_back(16 * 32);  // input activations
    for (auto [in, out] : spec.layer_dims) {
        buffers.push_back(in * out);     // frozen weight
        buffers.push_back(out);          // frozen bias
        buffers.push_back(8 * in);       // A
        buffers.push_back(out * 8);      // B
        buffers.push_back(8 * in);       // grad A
        buffers.push_back(out * 8);      // grad B
        buffers.push_back(2 * 8 * in);   // A moments
        buffers.push_back(2 * out * 8);  // B moments
        buffers.push_back(16 * 8);       // lora hidden
        buffers.push_back(16 * out);     // layer output
    }
    std::size_t total = 0;
    for (std::size_t b : buffers) total += b;
    const double expect = static_cast<double>(total) * 8.0 / (1024.0 * 1024.0) + 64.0;
    CHECK(memory_footprint(spec) == doctest::Approx(expect).epsilon(1e-12));

    // hypothetical rank 0: frozen + activations + overhead only
    FootprintSpec r0 = spec;
    r0.rank = 0;
    std::size_t frozen = 0, acts = 16 * 32;
    for (auto [in, out] : spec.layer_dims) {
        frozen += in * out + out;
        acts += 16 * out;
    }
    CHECK(memory_footprint(r0) ==
          doctest::Approx(static_cast<double>(frozen + acts) * 8.0 / (1024.0 * 1024.0) + 64.0)
              .epsilon(1e-12));

    // split footprint is strictly below the full footprint
    FootprintSpec split = spec;
    split.layer_dims = {{32, 32}};
    CHECK(memory_footprint(split) < memory_footprint(spec));
}

TEST_CASE("feasibility boundary: equality fits, strict excess fails") {
    std::vector<ClientRecord> pool{{0, 0, 8}, {1, 1, 8}};
    std::vector<DeviceProfile> profiles = default_device_profiles();
    profiles[0].memory_capacity_mb = 100.0;
    profiles[1].memory_capacity_mb = 50.0;
    CHECK(check_feasibility({100.0, 50.0}, pool, profiles));
    CHECK_FALSE(check_feasibility({100.0, 50.0001}, pool, profiles));
}

TEST_CASE("cost ledger accumulates and tracks high-water marks") {
    CostLedger ledger;
    ledger.add_client(3, 1000, 0.5, 200.0);
    ledger.add_client(5, 500, 0.25, 100.0);
    ledger.add_client(3, 1000, 0.5, 150.0);  // lower peak does not regress
    ledger.add_round_wall(3600.0);
    CHECK(ledger.comm_bytes == 2500);
    CHECK(ledger.energy_kj == doctest::Approx(1.25));
    CHECK(ledger.wall_clock_hours == doctest::Approx(1.0));
    CHECK(ledger.peak_memory_mb.at(3) == 200.0);
    CHECK(ledger.average_peak_memory_mb() == doctest::Approx(150.0));
    CHECK(ledger.max_peak_memory_mb() == 200.0);
    CHECK(ledger.participants.size() == 2);
}

TEST_CASE("bandwidth multiplier follows the 1-hour cycle with left-closed intervals") {
    CHECK(bandwidth_multiplier(0.0) == 1.0);
    CHECK(bandwidth_multiplier(0.4) == 0.5);
    CHECK(bandwidth_multiplier(0.7) == 0.25);
    CHECK(bandwidth_multiplier(1.0) == 1.0);        // cycle restart
    CHECK(bandwidth_multiplier(1.0 / 3.0) == 0.5);  // boundary is left-closed
    CHECK(bandwidth_multiplier(2.0 / 3.0) == 0.25);
    CHECK(bandwidth_multiplier(5.0 + 0.5) == 0.5);
}

TEST_CASE("dropout: null case, determinism, frequency") {
    RngStream s0 = RngStream::derive(1, "dropout", 0);
    auto none = apply_dropout(10, 0.0, s0);
    for (bool d : none) CHECK_FALSE(d);

    RngStream s1 = RngStream::derive(1, "dropout", 5);
    RngStream s2 = RngStream::derive(1, "dropout", 5);
    CHECK(apply_dropout(10, 0.5, s1) == apply_dropout(10, 0.5, s2));

    // ratio 0.99 over many rounds: mean survivors ~ 0.1 of 10
    double survivors = 0.0;
    const std::size_t rounds = 4000;
    for (std::size_t r = 0; r < rounds; ++r) {
        RngStream s = RngStream::derive(2, "dropout", r);
        for (bool d : apply_dropout(10, 0.99, s))
            if (!d) survivors += 1.0;
    }
    const double mean = survivors / rounds;
    // per round: Binomial(10, 0.01), mean 0.1, sigma ~ 0.3146
    CHECK(std::abs(mean - 0.1) <= 3.0 * 0.3146 / std::sqrt(static_cast<double>(rounds)));
}

TEST_CASE("build_mix lays out device classes in blocks") {
    auto all_j = build_mix({100, 0, 0, 0, 0}, 100);
    CHECK(all_j.size() == 100);
    for (const auto& r : all_j) CHECK(r.device_index == 0);

    auto balanced = build_mix({20, 20, 20, 20, 20}, 100);
    CHECK(balanced[0].device_index == 0);
    CHECK(balanced[19].device_index == 0);
    CHECK(balanced[20].device_index == 1);
    CHECK(balanced[99].device_index == 4);

    auto skewed = build_mix({0, 10, 10, 30, 50}, 100);
    CHECK(skewed[0].device_index == 1);
    CHECK(skewed[9].device_index == 1);
    CHECK(skewed[10].device_index == 2);
    CHECK(skewed[20].device_index == 3);
    CHECK(skewed[50].device_index == 4);

    CHECK_THROWS_AS(build_mix({10, 10, 10, 10, 10}, 100), ConfigError);
}

TEST_CASE("trace records round-trip through serialization") {
    RngStream rng(62);
    for (int iter = 0; iter < 20; ++iter) {
        RoundRecord r;
        r.round = iter;
        const std::size_t n = 1 + rng.next_below(5);
        for (std::size_t i = 0; i < n; ++i) {
            r.selected.push_back(rng.next_below(100));
            PerClientRecord c;
            c.client_id = r.selected.back();
            c.train_seconds = rng.next_double() * 100;
            c.comm_seconds = rng.next_double();
            c.down_bytes = rng.next_below(1 << 20);
            c.up_bytes = rng.next_below(1 << 20);
            if (rng.next_below(2)) {
                c.activation_bytes_up = 1 + rng.next_below(1 << 16);
                c.gradient_bytes_down = c.activation_bytes_up;
            }
            c.energy_kj = rng.next_double();
            c.peak_memory_mb = 100 + rng.next_double();
            c.dropped = rng.next_below(4) == 0;
            r.clients.push_back(c);
        }
        r.wall_clock_seconds = 1e9;  // above any client duration
        r.train_loss = rng.next_double() * 3;
        r.adapters_hash = rng.next_u64();
        if (rng.next_below(2)) r.eval = EvalSnapshot{rng.next_double(), rng.next_double()};
        r.cum_wall_clock_hours = rng.next_double() * 10;
        r.cum_comm_bytes = rng.next_below(1ull << 40);
        r.cum_energy_kj = rng.next_double() * 1000;

        const std::string line = Trace::serialize_record(r);
        RoundRecord back = Trace::parse_record(line);
        CHECK(Trace::serialize_record(back) == line);
    }
}

TEST_CASE("scenario config: strict keys and field-path errors") {
    CHECK_THROWS_WITH_AS(parse_scenario_json(R"({"nmae": "x"})"), "unknown key 'nmae'",
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_scenario_json(R"({"method": {"kidn": "fedavg_lora"}})"),
                         "unknown key 'method.kidn'", ConfigError);
    try {
        parse_scenario_json(R"({"clients": {"per_round": 500}})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("per_round") != std::string::npos);
    }
    // a valid minimal config parses to defaults
    ScenarioConfig c = parse_scenario_json(R"({"name": "ok", "seed": 7})");
    CHECK(c.rounds == 50);
    CHECK(c.clients_per_round == 10);
    CHECK(c.task.num_clients == 100);
    CHECK(scenario_config_hash(c) == scenario_config_hash(c));
}

TEST_CASE("run_scenario: record counts, determinism, accounting identities") {
    ScenarioConfig c = tiny_config("sim_basic", 321);
    auto p1 = temp_trace("basic1");
    auto p2 = temp_trace("basic2");
    RunSummary s1 = run_scenario(c, p1);
    RunSummary s2 = run_scenario(c, p2);
    CHECK(s1.feasible);
    CHECK(s1.rounds_executed == 6);
    CHECK(s2.rounds_executed == 6);

    // byte-identical across two executions
    CHECK(read_file(p1) == read_file(p2));

    Trace trace = Trace::read(p1);
    REQUIRE(trace.records.size() == 6);
    std::uint64_t bytes = 0;
    double energy = 0.0;
    double hours = 0.0;
    for (const auto& r : trace.records) {
        CHECK(r.selected.size() == 4);
        double mx = 0.0;
        for (const auto& cl : r.clients) {
            bytes += cl.down_bytes + cl.up_bytes;
            energy += cl.energy_kj;
            mx = std::max(mx, cl.train_seconds + cl.comm_seconds);
        }
        CHECK(r.wall_clock_seconds == mx + c.server_aggregation_seconds);
        hours += r.wall_clock_seconds / 3600.0;
        CHECK(r.cum_comm_bytes == bytes);  // exact integer identity
        CHECK(r.cum_energy_kj == doctest::Approx(energy).epsilon(1e-12));
        CHECK(r.eval.has_value());  // cadence 1
    }
    CHECK(trace.records.back().cum_wall_clock_hours == doctest::Approx(hours).epsilon(1e-12));

    // monotonicity of cumulative series
    for (std::size_t i = 1; i < trace.records.size(); ++i) {
        CHECK(trace.records[i].cum_comm_bytes >= trace.records[i - 1].cum_comm_bytes);
        CHECK(trace.records[i].cum_energy_kj >= trace.records[i - 1].cum_energy_kj);
        CHECK(trace.records[i].cum_wall_clock_hours >=
              trace.records[i - 1].cum_wall_clock_hours);
    }

    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
}

TEST_CASE("run_scenario: infeasible scenario writes only a marker") {
    ScenarioConfig c = tiny_config("sim_oom", 11);
    for (auto& p : c.profiles) p.memory_capacity_mb = 1.0;  // nothing fits
    auto path = temp_trace("oom");
    RunSummary s = run_scenario(c, path);
    CHECK_FALSE(s.feasible);
    Trace t = Trace::read(path);
    CHECK(t.infeasible);
    CHECK(t.records.empty());
    std::filesystem::remove(path);
}

TEST_CASE("bandwidth fluctuation alters time, never payload bytes") {
    ScenarioConfig c = tiny_config("sim_fluct", 77);
    // slow training so the virtual clock crosses the 1/3-hour boundary
    for (auto& p : c.profiles) p.steps_per_second = 0.002;
    c.rounds = 4;
    ScenarioConfig cf = c;
    cf.perturbation.kind = PerturbationKind::BandwidthFluctuation;

    auto pn = temp_trace("fluct_nominal");
    auto pf = temp_trace("fluct_perturbed");
    run_scenario(c, pn);
    run_scenario(cf, pf);
    Trace nominal = Trace::read(pn);
    Trace fluct = Trace::read(pf);
    REQUIRE(nominal.records.size() == fluct.records.size());
    CHECK(fluct.records.back().cum_comm_bytes == nominal.records.back().cum_comm_bytes);
    CHECK(fluct.records.back().cum_wall_clock_hours >
          nominal.records.back().cum_wall_clock_hours);
    // quality untouched: multipliers change timing only
    CHECK(fluct.records.back().eval->accuracy == nominal.records.back().eval->accuracy);
    CHECK(fluct.records.back().adapters_hash == nominal.records.back().adapters_hash);
    std::filesystem::remove(pn);
    std::filesystem::remove(pf);
}

TEST_CASE("dropout ratio 0 reproduces the nominal trace byte-for-byte") {
    ScenarioConfig c = tiny_config("sim_drop0", 88);
    ScenarioConfig cd = c;
    cd.perturbation.kind = PerturbationKind::Dropout;
    cd.perturbation.dropout_ratio = 0.0;
    auto pn = temp_trace("drop_nominal");
    auto pd = temp_trace("drop_zero");
    run_scenario(c, pn);
    run_scenario(cd, pd);
    // headers differ (config hash); compare record lines
    Trace a = Trace::read(pn);
    Trace b = Trace::read(pd);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i)
        CHECK(Trace::serialize_record(a.records[i]) == Trace::serialize_record(b.records[i]));
    std::filesystem::remove(pn);
    std::filesystem::remove(pd);
}

TEST_CASE("heterogeneity mix never alters the task shards") {
    ScenarioConfig c = tiny_config("sim_mix", 99);
    ScenarioConfig cm = c;
    cm.perturbation.kind = PerturbationKind::HeterogeneityMix;
    cm.perturbation.mix_counts = {20, 0, 0, 0, 0};
    auto pn = temp_trace("mix_nominal");
    auto pm = temp_trace("mix_all_jetson");
    run_scenario(c, pn);
    run_scenario(cm, pm);
    Trace a = Trace::read(pn);
    Trace b = Trace::read(pm);
    // device-agnostic method: same adapter trajectory and accuracy, different costs
    CHECK(a.records.back().adapters_hash == b.records.back().adapters_hash);
    CHECK(a.records.back().eval->accuracy == b.records.back().eval->accuracy);
    std::filesystem::remove(pn);
    std::filesystem::remove(pm);
}

TEST_CASE("default-scale scenario: 20 rounds of 10 selected clients") {
    ScenarioConfig c;  // spec defaults: 100 clients, 10 per round
    c.name = "default_scale";
    c.seed = 1;
    c.rounds = 20;
    auto path = temp_trace("default_scale");
    RunSummary s = run_scenario(c, path);
    CHECK(s.rounds_executed == 20);
    Trace t = Trace::read(path);
    REQUIRE(t.records.size() == 20);
    for (const auto& r : t.records) CHECK(r.selected.size() == 10);
    std::filesystem::remove(path);
}

TEST_CASE("local-only mode trains personal adapters without any exchange") {
    ScenarioConfig c = tiny_config("sim_local", 55);
    c.mode = "local_only";
    auto path = temp_trace("local_only");
    run_scenario(c, path);
    Trace t = Trace::read(path);
    REQUIRE(!t.records.empty());
    CHECK(t.records.back().cum_comm_bytes == 0);
    CHECK(t.records.back().eval.has_value());
    // personal adapters evolve even though nothing is aggregated
    CHECK(t.records.front().adapters_hash != t.records.back().adapters_hash);
    std::filesystem::remove(path);
}

TEST_CASE("early stop halts after the plateau patience") {
    ScenarioConfig c = tiny_config("sim_earlystop", 66);
    c.rounds = 30;
    c.early_stop = true;
    c.early_stop_patience = 3;
    c.early_stop_min_delta = 1.0;  // unreachable improvement: stops after patience
    auto path = temp_trace("earlystop");
    RunSummary s = run_scenario(c, path);
    CHECK(s.rounds_executed < 30);
    CHECK(s.rounds_executed >= 3);
    std::filesystem::remove(path);
}

TEST_CASE("default device profiles run faster to slower") {
    auto profiles = default_device_profiles();
    REQUIRE(profiles.size() == 5);
    for (std::size_t i = 1; i < profiles.size(); ++i)
        CHECK(profiles[i - 1].steps_per_second > profiles[i].steps_per_second);
    CHECK(profiles[0].name == "Jetson");
    CHECK(profiles[4].name == "Nova9");
}

TEST_CASE("trace reader rejects malformed input") {
    auto path = temp_trace("malformed");
    {
        std::ofstream out(path);
        out << "{\"type\": \"round\"}\n";  // record before any header
    }
    CHECK_THROWS(Trace::read(path));
    {
        std::ofstream out(path);
        out << "{\"type\": \"header\", \"schema_version\": 999, \"scenario\": \"x\", "
               "\"method\": \"fedavg_lora\", \"config_hash\": 0, \"seed\": 0}\n";
    }
    CHECK_THROWS_AS(Trace::read(path), VersionError);
    {
        std::ofstream out(path);
        out << "{\"type\": \"mystery\"}\n";
    }
    CHECK_THROWS_AS(Trace::read(path), IoError);
    std::filesystem::remove(path);
}
