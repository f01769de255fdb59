#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>

#include "tlf/ingest.hpp"

using namespace tlf;
namespace fs = std::filesystem;

namespace {

fs::path write_file(const std::string& name, const std::string& content) {
    fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

const char* kApcHeader =
    "transit_date,trip_id,block_id,route_id,direction,vehicle_id,stop_id,stop_sequence,"
    "scheduled_arrival,actual_arrival,ons,offs,load,scheduled_headway,zero_load_at_trip_end\n";

}  // namespace

TEST_CASE("apc parse: optional fields and counts") {
    auto p = write_file("tlf_apc1.csv",
                        std::string(kApcHeader) +
                            "2020-01-02,t1,b1,r5,OUTBOUND,v9,s1,1,2020-01-02T08:00:00,,3,1,2,600,1\n"
                            "2020-01-02,t1,b1,r5,OUTBOUND,v9,s2,2,2020-01-02T08:02:00,2020-01-02T08:03:10,0,2,0,600,1\n");
    auto res = parse_apc_file(p.string());
    REQUIRE(res.records.size() == 2);
    CHECK(res.data_rows == 2);
    CHECK(res.fatal_rows() == 0);
    const auto& a = res.records[0];
    CHECK_FALSE(a.actual_arrival.has_value());
    CHECK(a.ons == 3);
    CHECK(a.offs == 1);
    CHECK(a.load == 2);
    CHECK(a.zero_load_at_trip_end);
    CHECK(a.scheduled_headway == 600);
    const auto& b = res.records[1];
    REQUIRE(b.actual_arrival.has_value());
    CHECK(minutes_since_midnight(*b.actual_arrival) == 8 * 60 + 3);
    fs::remove(p);
}

TEST_CASE("apc parse: negative count retained with diagnostic, bad rows fatal") {
    auto p = write_file("tlf_apc2.csv",
                        std::string(kApcHeader) +
                            "2020-01-02,t1,b1,r5,OUTBOUND,v9,s1,1,2020-01-02T08:00:00,,-4,1,2,600,0\n"
                            "not-a-date,t1,b1,r5,OUTBOUND,v9,s2,2,2020-01-02T08:02:00,,1,1,2,600,0\n"
                            "2020-01-02,t1,b1,r5,OUTBOUND,v9,s3,xyz,2020-01-02T08:04:00,,1,1,2,600,0\n"
                            "2020-01-02,t1,b1,r5,OUTBOUND,v9,s4,4,2020-01-02T08:06:00,,junk,1,2,600,0\n");
    auto res = parse_apc_file(p.string());
    // negative ons is retained; cleaning owns validity
    REQUIRE(res.records.size() == 2);
    CHECK(res.records[0].ons == -4);
    bool has_negative_diag = false;
    for (const auto& d : res.diagnostics)
        if (!d.fatal && d.reason.find("negative count") != std::string::npos) has_negative_diag = true;
    CHECK(has_negative_diag);
    // unparseable ons -> null + non-fatal diagnostic
    CHECK_FALSE(res.records[1].ons.has_value());
    // losslessness: records + fatal rows = data rows
    CHECK(res.records.size() + res.fatal_rows() == res.data_rows);
    CHECK(res.fatal_rows() == 2);
    fs::remove(p);
}

TEST_CASE("apc parse: fatal file errors") {
    CHECK_THROWS_AS(parse_apc_file("/nonexistent/apc.csv"), csv::Error);
    auto p = write_file("tlf_apc3.csv", "transit_date,trip_id\n2020-01-02,t1\n");
    CHECK_THROWS_AS(parse_apc_file(p.string()), csv::Error);  // missing mandatory columns
    fs::remove(p);
}

TEST_CASE("apc schema remapping") {
    auto p = write_file("tlf_apc4.csv",
                        "svc_date,trip,blk,rt,dir,veh,stop,seq,sched,actual,boards,alights,occupancy,hw,zle\n"
                        "2020-01-02,t1,b1,r5,OUTBOUND,v9,s1,1,2020-01-02T08:00:00,,3,1,2,600,1\n");
    ApcSchema schema;
    schema.columns = {{"transit_date", "svc_date"}, {"trip_id", "trip"},      {"block_id", "blk"},
                      {"route_id", "rt"},           {"direction", "dir"},     {"vehicle_id", "veh"},
                      {"stop_id", "stop"},          {"stop_sequence", "seq"}, {"scheduled_arrival", "sched"},
                      {"actual_arrival", "actual"}, {"ons", "boards"},        {"offs", "alights"},
                      {"load", "occupancy"},        {"scheduled_headway", "hw"}, {"zero_load_at_trip_end", "zle"}};
    auto res = parse_apc_file(p.string(), schema);
    REQUIRE(res.records.size() == 1);
    CHECK(res.records[0].ons == 3);
    fs::remove(p);
}

TEST_CASE("apc round trip preserves every field") {
    std::vector<ApcRecord> recs;
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        ApcRecord r;
        r.transit_date = make_date(2020, 1 + i % 12, 1 + i % 28);
        r.trip_id = "t" + std::to_string(i % 17);
        r.block_id = "b" + std::to_string(i % 5);
        r.route_id = "r" + std::to_string(i % 7);
        r.direction = i % 2 ? "INBOUND" : "OUTBOUND";
        r.vehicle_id = "v" + std::to_string(i % 11);
        r.stop_id = "s" + std::to_string(i % 40);
        r.stop_sequence = 1 + i % 40;
        r.scheduled_arrival = make_timestamp(r.transit_date, 4 * 3600 + (i % 1200) * 60);
        if (i % 3) r.actual_arrival = Timestamp{r.scheduled_arrival.seconds + int64_t(rng() % 300)};
        if (i % 5) r.ons = int(rng() % 20);
        if (i % 7) r.offs = int(rng() % 20);
        if (i % 4) r.load = int(rng() % 80) - 8;
        r.scheduled_headway = double(600 + (rng() % 5) * 300);
        r.zero_load_at_trip_end = i % 2 == 0;
        recs.push_back(std::move(r));
    }
    fs::path p = fs::temp_directory_path() / "tlf_apc_rt.csv";
    write_apc_csv(p.string(), recs, {" test provenance"});
    auto res = parse_apc_file(p.string());
    REQUIRE(res.records.size() == recs.size());
    for (size_t i = 0; i < recs.size(); ++i) REQUIRE(res.records[i] == recs[i]);
    fs::remove(p);
}

TEST_CASE("weather parse and dedup") {
    auto p1 = write_file("tlf_w1.csv",
                         "station_id,latitude,longitude,timestamp,temperature,humidity,precipitation_intensity\n"
                         "sta1,36.1,-86.7,2020-01-02T08:00:00,12.5,0.55,0\n"
                         "sta1,36.1,-86.7,2020-01-02T08:30:00,12.5,0.55,0\n"
                         "sta1,36.1,-86.7,2020-01-02T09:00:00,13,1.5,0\n");
    auto res = parse_weather_file(p1.string());
    REQUIRE(res.records.size() == 1);
    CHECK(res.records[0].humidity == 0.55);
    CHECK(res.fatal_rows() == 2);  // misaligned hour, humidity out of range
    CHECK(res.records.size() + res.fatal_rows() == res.data_rows);

    auto p2 = write_file("tlf_w2.csv",
                         "station_id,latitude,longitude,timestamp,temperature,humidity,precipitation_intensity\n"
                         "sta1,36.1,-86.7,2020-01-02T08:00:00,99,0.9,0\n"
                         "sta2,36.2,-86.8,2020-01-02T08:00:00,11,0.4,1.5\n");
    auto merged = parse_weather_files({p1.string(), p2.string()});
    REQUIRE(merged.records.size() == 2);
    // first-listed source wins on (station, hour)
    CHECK(merged.records[0].temperature == 12.5);
    CHECK(merged.records[1].station_id == "sta2");
    fs::remove(p1);
    fs::remove(p2);
}

TEST_CASE("traffic parse: alignment and geometry convention") {
    auto p = write_file("tlf_t1.csv",
                        "segment_id,timestamp,speed,geometry\n"
                        "seg1,2020-01-02T09:00:00,31.5,36.1 -86.7;36.11 -86.71\n"
                        "seg1,2020-01-02T09:03:00,30,\n"
                        "seg1,2020-01-02T09:05:00,28,\n"
                        "seg2,2020-01-02T09:00:00,44,\n");
    auto res = parse_traffic_file(p.string());
    REQUIRE(res.readings.records.size() == 2);  // 09:03 misaligned, seg2 lacks geometry
    CHECK(res.segments.size() == 1);
    CHECK(res.segments[0].geometry.size() == 2);
    bool misaligned = false, nogeom = false;
    for (const auto& d : res.readings.diagnostics) {
        if (d.reason.find("not 5-minute aligned") != std::string::npos) misaligned = true;
        if (d.reason.find("lacks geometry") != std::string::npos) nogeom = true;
    }
    CHECK(misaligned);
    CHECK(nogeom);
    CHECK(res.readings.records.size() + res.readings.fatal_rows() == res.readings.data_rows);
    fs::remove(p);
}

TEST_CASE("calendar parse") {
    auto p = write_file("tlf_c1.csv",
                        "date,is_school_break,is_national_holiday\n"
                        "2020-01-01,1,1\n"
                        "2020-01-02,0,0\n");
    auto entries = parse_calendar_file(p.string());
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].is_national_holiday);
    CHECK_FALSE(entries[1].is_school_break);
    fs::remove(p);

    auto dup = write_file("tlf_c2.csv",
                          "date,is_school_break,is_national_holiday\n"
                          "2020-01-01,1,1\n"
                          "2020-01-01,0,0\n");
    CHECK_THROWS_AS(parse_calendar_file(dup.string()), IngestError);
    fs::remove(dup);
}

TEST_CASE("gtfs parse and referential integrity") {
    fs::path dir = fs::temp_directory_path() / "tlf_gtfs1";
    fs::create_directories(dir);
    auto wf = [&](const char* name, const std::string& content) {
        std::ofstream(dir / name, std::ios::binary) << content;
    };
    wf("routes.txt", "route_id,route_long_name\nr1,Route One\n");
    wf("trips.txt", "route_id,trip_id,direction_id,block_id,shape_id\nr1,t1,0,b1,sh1\n");
    wf("stops.txt", "stop_id,stop_name,stop_lat,stop_lon\ns1,First,36.1,-86.7\ns2,Second,36.11,-86.71\n");
    wf("stop_times.txt",
       "trip_id,arrival_time,departure_time,stop_id,stop_sequence\n"
       "t1,08:00:00,08:00:00,s1,1\nt1,25:30:00,25:30:00,s2,2\n");
    wf("shapes.txt", "shape_id,shape_pt_lat,shape_pt_lon,shape_pt_sequence\nsh1,36.1,-86.7,1\nsh1,36.11,-86.71,2\n");

    auto g = parse_gtfs(dir.string());
    CHECK(g.routes.size() == 1);
    CHECK(g.trips[0].direction == "OUTBOUND");
    CHECK(g.stop_times[1].scheduled_arrival == 25 * 3600 + 30 * 60);
    REQUIRE(g.find_stop("s2") != nullptr);
    CHECK(g.find_stop("s2")->position.lat == 36.11);
    CHECK(g.shapes.at("sh1").size() == 2);

    // unknown trip in stop_times is fatal and names the id
    wf("stop_times.txt",
       "trip_id,arrival_time,departure_time,stop_id,stop_sequence\nghost,08:00:00,08:00:00,s1,1\n");
    CHECK_THROWS_WITH(parse_gtfs(dir.string()), Catch::Matchers::ContainsSubstring("ghost"));
    fs::remove_all(dir);
}

TEST_CASE("gtfs write/parse round trip") {
    GtfsBundle g;
    g.routes = {{"r1", "Route One"}, {"r2", "Route Two"}};
    g.stops = {{"s1", "First", {36.1, -86.7}}, {"s2", "Second", {36.12, -86.72}}};
    g.trips = {{"t1", "r1", "OUTBOUND", "b1", "shape_r1_OUTBOUND"},
               {"t2", "r1", "INBOUND", "b1", "shape_r1_INBOUND"}};
    g.stop_times = {{"t1", "s1", 1, 8 * 3600}, {"t1", "s2", 2, 8 * 3600 + 120},
                    {"t2", "s2", 1, 9 * 3600}, {"t2", "s1", 2, 9 * 3600 + 120}};
    g.shapes["shape_r1_OUTBOUND"] = {{36.1, -86.7}, {36.12, -86.72}};
    g.shapes["shape_r1_INBOUND"] = {{36.12, -86.72}, {36.1, -86.7}};
    g.rebuild_indices();

    fs::path dir = fs::temp_directory_path() / "tlf_gtfs_rt";
    fs::create_directories(dir);
    write_gtfs(dir.string(), g);
    auto back = parse_gtfs(dir.string());
    CHECK(back.routes.size() == 2);
    CHECK(back.trips.size() == 2);
    CHECK(back.trips[1].direction == "INBOUND");
    CHECK(back.stop_times.size() == 4);
    CHECK(back.stop_times[1].scheduled_arrival == 8 * 3600 + 120);
    CHECK(back.shapes == g.shapes);
    fs::remove_all(dir);
}
