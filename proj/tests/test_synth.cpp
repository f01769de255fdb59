#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "tlf/synth.hpp"

using namespace tlf;
namespace fs = std::filesystem;

namespace {

SynthConfig small_config() {
    SynthConfig cfg;
    cfg.seed = 42;
    cfg.n_routes = 4;
    cfg.n_days = 3;
    cfg.stops_per_trip_min = 8;
    cfg.stops_per_trip_max = 14;
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("city generation is deterministic to the byte") {
    auto cfg = small_config();
    auto a = generate_city(cfg);
    auto b = generate_city(cfg);

    fs::path dir_a = fs::temp_directory_path() / "tlf_city_a";
    fs::path dir_b = fs::temp_directory_path() / "tlf_city_b";
    fs::create_directories(dir_a);
    fs::create_directories(dir_b);
    write_gtfs(dir_a.string(), a.gtfs);
    write_gtfs(dir_b.string(), b.gtfs);
    write_weather_csv((dir_a / "weather.csv").string(), a.weather);
    write_weather_csv((dir_b / "weather.csv").string(), b.weather);
    write_traffic_csv((dir_a / "traffic.csv").string(), a.traffic_segments, a.traffic_readings);
    write_traffic_csv((dir_b / "traffic.csv").string(), b.traffic_segments, b.traffic_readings);

    for (const char* f : {"routes.txt", "trips.txt", "stops.txt", "stop_times.txt", "shapes.txt",
                          "weather.csv", "traffic.csv"})
        REQUIRE(slurp(dir_a / f) == slurp(dir_b / f));

    auto rng_a = day_rng(cfg.seed, cfg.start_date);
    auto rng_b = day_rng(cfg.seed, cfg.start_date);
    auto day_a = simulate_service_day(a, cfg.start_date, rng_a);
    auto day_b = simulate_service_day(b, cfg.start_date, rng_b);
    REQUIRE(day_a == day_b);

    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("city honors configured scale") {
    auto cfg = small_config();
    cfg.n_routes = 30;
    auto city = generate_city(cfg);
    CHECK(city.gtfs.routes.size() == 30);
    for (const auto& t : city.gtfs.trips) {
        size_t n = city.trip_stop_times.at(t.trip_id).size();
        CHECK(n >= size_t(cfg.stops_per_trip_min));
        CHECK(n <= size_t(cfg.stops_per_trip_max));
    }
}

TEST_CASE("blocks alternate direction and never overlap in time") {
    auto city = generate_city(small_config());
    std::map<std::string, std::vector<const GtfsTrip*>> by_block;
    for (const auto& t : city.gtfs.trips) by_block[t.block_id].push_back(&t);

    for (auto& [block, trips] : by_block) {
        std::vector<std::pair<int64_t, int64_t>> spans;  // (first, last arrival)
        std::vector<std::string> dirs;
        for (const GtfsTrip* t : trips) {
            const auto& sts = city.trip_stop_times.at(t->trip_id);
            int64_t lo = city.gtfs.stop_times[sts.front()].scheduled_arrival;
            int64_t hi = city.gtfs.stop_times[sts.back()].scheduled_arrival;
            spans.push_back({lo, hi});
            dirs.push_back(t->direction);
        }
        for (size_t i = 0; i + 1 < spans.size(); ++i) {
            REQUIRE(spans[i].second < spans[i + 1].first);  // non-overlapping, in order
            REQUIRE(dirs[i] != dirs[i + 1]);                // back and forth
        }
    }
}

TEST_CASE("simulated day: loads valid, conservation holds, zero-end enforced") {
    auto cfg = small_config();
    auto city = generate_city(cfg);
    auto rng = day_rng(cfg.seed, cfg.start_date);
    auto records = simulate_service_day(city, cfg.start_date, rng);
    REQUIRE(!records.empty());

    std::map<std::string, std::vector<const ApcRecord*>> by_trip;
    for (const auto& r : records) {
        CHECK(*r.load >= 0);
        by_trip[r.trip_id].push_back(&r);
    }
    for (auto& [trip, recs] : by_trip) {
        long sum_ons = 0, sum_offs = 0;
        for (auto* r : recs) {
            sum_ons += *r->ons;
            sum_offs += *r->offs;
        }
        // conservation: sum(ons) - sum(offs) = final load (initial load 0)
        REQUIRE(sum_ons - sum_offs == *recs.back()->load);
        if (recs.front()->zero_load_at_trip_end) REQUIRE(*recs.back()->load == 0);
        // arrivals monotone, sequence strictly increasing
        for (size_t i = 1; i < recs.size(); ++i) {
            REQUIRE(recs[i]->stop_sequence > recs[i - 1]->stop_sequence);
            REQUIRE(recs[i]->actual_arrival->seconds >= recs[i - 1]->actual_arrival->seconds);
        }
    }
}

TEST_CASE("doubling a route base rate doubles its boardings") {
    SynthConfig cfg;
    cfg.seed = 7;
    cfg.n_routes = 2;
    cfg.n_days = 100;
    cfg.stops_per_trip_min = 10;
    cfg.stops_per_trip_max = 12;
    cfg.base_rates = {2.0, 3.0};
    auto base = generate_city(cfg);
    auto doubled_cfg = cfg;
    doubled_cfg.base_rates = {4.0, 3.0};
    auto doubled = generate_city(doubled_cfg);

    auto total_ons = [&](const SynthCity& city) {
        double sum = 0;
        for (int d = 0; d < city.config.n_days; ++d) {
            Date date = add_days(city.config.start_date, d);
            auto rng = day_rng(city.config.seed, date);
            for (const auto& r : simulate_service_day(city, date, rng))
                if (r.route_id == "route1") sum += *r.ons;
        }
        return sum;
    };
    double ratio = total_ons(doubled) / total_ons(base);
    CHECK(ratio == Catch::Approx(2.0).margin(0.1));  // within 5%
}

TEST_CASE("noise injection: targeted rules and exact log") {
    auto cfg = small_config();
    auto city = generate_city(cfg);
    auto rng = day_rng(cfg.seed, cfg.start_date);
    auto clean = simulate_service_day(city, cfg.start_date, rng);

    SECTION("all-zero noise is the identity") {
        auto rng2 = day_rng(cfg.seed, cfg.start_date, 1);
        auto [noisy, log] = inject_noise(clean, NoiseConfig{}, rng2);
        CHECK(noisy == clean);
        CHECK(log.entries.empty());
    }

    SECTION("large negative load rule") {
        NoiseConfig noise;
        noise.p_large_negative_load = 0.3;
        auto rng2 = day_rng(cfg.seed, cfg.start_date, 2);
        auto [noisy, log] = inject_noise(clean, noise, rng2);
        REQUIRE(!log.entries.empty());
        for (const auto& e : log.entries) {
            CHECK(e.rule == "R1");
            bool found = false;
            for (const auto& r : noisy)
                if (r.trip_id == e.trip_id && r.load && *r.load < -5) found = true;
            CHECK(found);
        }
    }

    SECTION("duplicate trips are exact copies logged under R5") {
        NoiseConfig noise;
        noise.p_duplicate_trip = 0.25;
        auto rng2 = day_rng(cfg.seed, cfg.start_date, 3);
        auto [noisy, log] = inject_noise(clean, noise, rng2);
        REQUIRE(!log.entries.empty());
        CHECK(noisy.size() > clean.size());
        for (const auto& e : log.entries) {
            CHECK(e.rule == "R5");
            CHECK(e.occurrence == 1);
            // two identical runs of the trip's records exist
            std::vector<const ApcRecord*> runs;
            for (const auto& r : noisy)
                if (r.trip_id == e.trip_id) runs.push_back(&r);
            REQUIRE(runs.size() % 2 == 0);
            size_t half = runs.size() / 2;
            for (size_t i = 0; i < half; ++i) REQUIRE(*runs[i] == *runs[half + i]);
        }
    }

    SECTION("benign count noise never unbalances a trip past the threshold") {
        NoiseConfig noise;
        noise.count_noise_sd = 3.0;
        auto rng2 = day_rng(cfg.seed, cfg.start_date, 4);
        auto [noisy, log] = inject_noise(clean, noise, rng2);
        CHECK(log.entries.empty());
        std::map<std::string, std::pair<long, long>> sums;
        for (const auto& r : noisy) {
            if (r.ons) sums[r.trip_id].first += *r.ons;
            if (r.offs) sums[r.trip_id].second += *r.offs;
        }
        for (auto& [trip, s] : sums) {
            double hi = double(std::max({s.first, s.second, 1l}));
            CHECK(double(std::abs(s.first - s.second)) / hi <= 0.2);
        }
    }
}

TEST_CASE("corruption log round trips through csv") {
    CorruptionLog log;
    log.entries = {{make_date(2020, 1, 2), "tripA", 0, "R1"}, {make_date(2020, 1, 3), "tripB", 1, "R5"}};
    fs::path p = fs::temp_directory_path() / "tlf_corruption.csv";
    write_corruption_log(p.string(), log);
    auto back = read_corruption_log(p.string());
    REQUIRE(back.entries.size() == 2);
    CHECK(back.trip_set() == log.trip_set());
    CHECK(back.entries[1].rule == "R5");
    fs::remove(p);
}

TEST_CASE("inconsistent config rejected") {
    SynthConfig cfg;
    cfg.service_start_minute = 8 * 60;
    cfg.service_end_minute = 8 * 60 + 10;  // shorter than one trip
    CHECK_THROWS_AS(generate_city(cfg), ConfigError);
    SynthConfig cfg2;
    cfg2.stops_per_trip_min = 5;
    cfg2.stops_per_trip_max = 3;
    CHECK_THROWS_AS(generate_city(cfg2), ConfigError);
}
