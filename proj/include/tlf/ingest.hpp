#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tlf/csv.hpp"
#include "tlf/domain.hpp"
#include "tlf/geo.hpp"

// File ingestion for the five input datasets. Parsers are lossless: every
// data row either becomes a record or a fatal diagnostic, never silently
// dropped. Validity beyond parseability (negative counts, inconsistent
// loads) is the cleaning stage's business, not ours.

namespace tlf {

class IngestError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RowDiagnostic {
    size_t row = 0;  // 1-based data row
    std::string reason;
    bool fatal = false;  // fatal rows yield no record
};

template <typename T>
struct ParseResult {
    std::vector<T> records;
    std::vector<RowDiagnostic> diagnostics;
    size_t data_rows = 0;

    size_t fatal_rows() const {
        size_t n = 0;
        for (const auto& d : diagnostics)
            if (d.fatal) ++n;
        return n;
    }
};

// Logical -> actual column names for the APC export; agencies rename columns
// freely, so the mapping is config-overridable.
struct ApcSchema {
    std::map<std::string, std::string> columns = {
        {"transit_date", "transit_date"},
        {"trip_id", "trip_id"},
        {"block_id", "block_id"},
        {"route_id", "route_id"},
        {"direction", "direction"},
        {"vehicle_id", "vehicle_id"},
        {"stop_id", "stop_id"},
        {"stop_sequence", "stop_sequence"},
        {"scheduled_arrival", "scheduled_arrival"},
        {"actual_arrival", "actual_arrival"},
        {"ons", "ons"},
        {"offs", "offs"},
        {"load", "load"},
        {"scheduled_headway", "scheduled_headway"},
        {"zero_load_at_trip_end", "zero_load_at_trip_end"},
    };

    const std::string& name(const std::string& logical) const {
        auto it = columns.find(logical);
        if (it == columns.end()) throw IngestError("unknown logical APC column: " + logical);
        return it->second;
    }
};

namespace detail {

inline std::optional<bool> parse_bool(std::string_view s) {
    if (s == "1" || s == "true" || s == "TRUE" || s == "True") return true;
    if (s == "0" || s == "false" || s == "FALSE" || s == "False") return false;
    return std::nullopt;
}

}  // namespace detail

inline ParseResult<ApcRecord> parse_apc_file(const std::string& path, const ApcSchema& schema = {}) {
    csv::Reader r(path);
    int c_date = r.require_column(schema.name("transit_date"));
    int c_trip = r.require_column(schema.name("trip_id"));
    int c_block = r.require_column(schema.name("block_id"));
    int c_route = r.require_column(schema.name("route_id"));
    int c_dir = r.require_column(schema.name("direction"));
    int c_veh = r.require_column(schema.name("vehicle_id"));
    int c_stop = r.require_column(schema.name("stop_id"));
    int c_seq = r.require_column(schema.name("stop_sequence"));
    int c_sched = r.require_column(schema.name("scheduled_arrival"));
    int c_actual = r.require_column(schema.name("actual_arrival"));
    int c_ons = r.require_column(schema.name("ons"));
    int c_offs = r.require_column(schema.name("offs"));
    int c_load = r.require_column(schema.name("load"));
    int c_hw = r.require_column(schema.name("scheduled_headway"));
    int c_zle = r.require_column(schema.name("zero_load_at_trip_end"));

    ParseResult<ApcRecord> out;
    std::vector<std::string> row;
    while (r.next(row)) {
        ++out.data_rows;
        size_t rn = r.data_row();
        auto field = [&](int c) -> const std::string& { return row[size_t(c)]; };
        if (row.size() < r.header().size()) {
            out.diagnostics.push_back({rn, "short row", true});
            continue;
        }

        ApcRecord rec;
        auto date = parse_date(field(c_date));
        if (!date) {
            out.diagnostics.push_back({rn, "unparseable transit_date '" + field(c_date) + "'", true});
            continue;
        }
        rec.transit_date = *date;
        rec.trip_id = field(c_trip);
        rec.block_id = field(c_block);
        rec.route_id = field(c_route);
        rec.direction = field(c_dir);
        rec.vehicle_id = field(c_veh);
        rec.stop_id = field(c_stop);
        if (rec.trip_id.empty() || rec.route_id.empty() || rec.stop_id.empty()) {
            out.diagnostics.push_back({rn, "empty identifier field", true});
            continue;
        }
        auto seq = csv::to_int(field(c_seq));
        if (!seq) {
            out.diagnostics.push_back({rn, "unparseable stop_sequence '" + field(c_seq) + "'", true});
            continue;
        }
        rec.stop_sequence = int(*seq);
        auto sched = parse_timestamp(field(c_sched));
        if (!sched) {
            out.diagnostics.push_back({rn, "unparseable scheduled_arrival '" + field(c_sched) + "'", true});
            continue;
        }
        rec.scheduled_arrival = *sched;

        // optional fields: empty -> null, garbage -> null + diagnostic
        if (!field(c_actual).empty()) {
            auto ts = parse_timestamp(field(c_actual));
            if (ts)
                rec.actual_arrival = *ts;
            else
                out.diagnostics.push_back({rn, "unparseable actual_arrival", false});
        }
        auto opt_count = [&](int c, const char* what) -> std::optional<int> {
            if (field(c).empty()) return std::nullopt;
            auto v = csv::to_int(field(c));
            if (!v) {
                out.diagnostics.push_back({rn, std::string("unparseable ") + what, false});
                return std::nullopt;
            }
            if (*v < 0) out.diagnostics.push_back({rn, std::string("negative count in ") + what, false});
            return int(*v);
        };
        rec.ons = opt_count(c_ons, "ons");
        rec.offs = opt_count(c_offs, "offs");
        if (!field(c_load).empty()) {
            auto v = csv::to_int(field(c_load));
            if (v)
                rec.load = int(*v);
            else
                out.diagnostics.push_back({rn, "unparseable load", false});
        }
        if (!field(c_hw).empty()) {
            auto v = csv::to_double(field(c_hw));
            if (v)
                rec.scheduled_headway = *v;
            else
                out.diagnostics.push_back({rn, "unparseable scheduled_headway", false});
        }
        if (!field(c_zle).empty()) {
            auto b = detail::parse_bool(field(c_zle));
            if (b)
                rec.zero_load_at_trip_end = *b;
            else
                out.diagnostics.push_back({rn, "unparseable zero_load_at_trip_end", false});
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

struct WeatherObservation {
    std::string station_id;
    LatLon position;
    Timestamp timestamp;  // hourly aligned
    double temperature = 0;    // degC
    double humidity = 0;       // fraction [0,1]
    double precipitation = 0;  // mm/h

    bool operator==(const WeatherObservation&) const = default;
};

inline ParseResult<WeatherObservation> parse_weather_file(const std::string& path) {
    csv::Reader r(path);
    int c_sta = r.require_column("station_id");
    int c_lat = r.require_column("latitude");
    int c_lon = r.require_column("longitude");
    int c_ts = r.require_column("timestamp");
    int c_temp = r.require_column("temperature");
    int c_hum = r.require_column("humidity");
    int c_pre = r.require_column("precipitation_intensity");

    ParseResult<WeatherObservation> out;
    std::vector<std::string> row;
    while (r.next(row)) {
        ++out.data_rows;
        size_t rn = r.data_row();
        if (row.size() < r.header().size()) {
            out.diagnostics.push_back({rn, "short row", true});
            continue;
        }
        WeatherObservation w;
        w.station_id = row[size_t(c_sta)];
        auto lat = csv::to_double(row[size_t(c_lat)]);
        auto lon = csv::to_double(row[size_t(c_lon)]);
        auto ts = parse_timestamp(row[size_t(c_ts)]);
        auto temp = csv::to_double(row[size_t(c_temp)]);
        auto hum = csv::to_double(row[size_t(c_hum)]);
        auto pre = csv::to_double(row[size_t(c_pre)]);
        if (w.station_id.empty() || !lat || !lon || !ts || !temp || !hum || !pre) {
            out.diagnostics.push_back({rn, "unparseable weather row", true});
            continue;
        }
        if (seconds_since_midnight(*ts) % 3600 != 0) {
            out.diagnostics.push_back({rn, "timestamp not hourly aligned", true});
            continue;
        }
        if (*hum < 0 || *hum > 1) {
            out.diagnostics.push_back({rn, "humidity outside [0,1]", true});
            continue;
        }
        if (*pre < 0) {
            out.diagnostics.push_back({rn, "negative precipitation", true});
            continue;
        }
        w.position = LatLon{*lat, *lon};
        w.timestamp = *ts;
        w.temperature = *temp;
        w.humidity = *hum;
        w.precipitation = *pre;
        out.records.push_back(std::move(w));
    }
    return out;
}

// Multiple providers export the same stations; first-listed file wins on a
// (station, hour) collision.
inline ParseResult<WeatherObservation> parse_weather_files(const std::vector<std::string>& paths) {
    ParseResult<WeatherObservation> merged;
    std::set<std::pair<std::string, int64_t>> seen;
    for (const auto& p : paths) {
        auto part = parse_weather_file(p);
        merged.data_rows += part.data_rows;
        for (auto& d : part.diagnostics) merged.diagnostics.push_back(std::move(d));
        for (auto& w : part.records) {
            if (seen.insert({w.station_id, w.timestamp.seconds}).second)
                merged.records.push_back(std::move(w));
            else
                merged.diagnostics.push_back({0, "duplicate (station,hour) from " + p, true});
        }
    }
    return merged;
}

struct TrafficSegmentReading {
    std::string segment_id;
    Timestamp timestamp;  // 5-minute aligned
    double speed = 0;     // mph
};

struct TrafficSegment {
    std::string segment_id;
    Polyline geometry;
};

struct TrafficData {
    ParseResult<TrafficSegmentReading> readings;
    std::vector<TrafficSegment> segments;
};

namespace detail {

inline std::optional<Polyline> parse_polyline(std::string_view s) {
    Polyline line;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t end = s.find(';', pos);
        if (end == std::string_view::npos) end = s.size();
        std::string_view pt = s.substr(pos, end - pos);
        size_t sp = pt.find(' ');
        if (sp == std::string_view::npos) return std::nullopt;
        auto lat = csv::to_double(pt.substr(0, sp));
        auto lon = csv::to_double(pt.substr(sp + 1));
        if (!lat || !lon) return std::nullopt;
        line.push_back(LatLon{*lat, *lon});
        pos = end + 1;
    }
    if (line.size() < 2) return std::nullopt;
    return line;
}

inline std::string format_polyline(const Polyline& line) {
    std::string out;
    for (size_t i = 0; i < line.size(); ++i) {
        if (i) out.push_back(';');
        out += csv::fmt(line[i].lat);
        out.push_back(' ');
        out += csv::fmt(line[i].lon);
    }
    return out;
}

}  // namespace detail

// traffic.csv carries the segment polyline inline; it must be present on a
// segment's first row and may be left empty afterwards.
inline TrafficData parse_traffic_file(const std::string& path) {
    csv::Reader r(path);
    int c_seg = r.require_column("segment_id");
    int c_ts = r.require_column("timestamp");
    int c_speed = r.require_column("speed");
    int c_geom = r.require_column("geometry");

    TrafficData out;
    std::unordered_set<std::string> seen_segments;
    std::vector<std::string> row;
    while (r.next(row)) {
        ++out.readings.data_rows;
        size_t rn = r.data_row();
        if (row.size() < r.header().size()) {
            out.readings.diagnostics.push_back({rn, "short row", true});
            continue;
        }
        const std::string& seg = row[size_t(c_seg)];
        auto ts = parse_timestamp(row[size_t(c_ts)]);
        auto speed = csv::to_double(row[size_t(c_speed)]);
        if (seg.empty() || !ts || !speed) {
            out.readings.diagnostics.push_back({rn, "unparseable traffic row", true});
            continue;
        }
        if (seconds_since_midnight(*ts) % 300 != 0) {
            out.readings.diagnostics.push_back({rn, "timestamp not 5-minute aligned", true});
            continue;
        }
        if (*speed < 0) {
            out.readings.diagnostics.push_back({rn, "negative speed", true});
            continue;
        }
        if (!seen_segments.count(seg)) {
            auto line = detail::parse_polyline(row[size_t(c_geom)]);
            if (!line) {
                out.readings.diagnostics.push_back({rn, "segment '" + seg + "' first row lacks geometry", true});
                continue;
            }
            seen_segments.insert(seg);
            out.segments.push_back({seg, std::move(*line)});
        }
        out.readings.records.push_back({seg, *ts, *speed});
    }
    return out;
}

struct CalendarEntry {
    Date date;
    bool is_school_break = false;
    bool is_national_holiday = false;

    bool operator==(const CalendarEntry&) const = default;
};

inline std::vector<CalendarEntry> parse_calendar_file(const std::string& path) {
    csv::Reader r(path);
    int c_date = r.require_column("date");
    int c_sb = r.require_column("is_school_break");
    int c_nh = r.require_column("is_national_holiday");

    std::vector<CalendarEntry> out;
    std::set<int32_t> seen;
    std::vector<std::string> row;
    while (r.next(row)) {
        auto d = parse_date(row[size_t(c_date)]);
        auto sb = detail::parse_bool(row[size_t(c_sb)]);
        auto nh = detail::parse_bool(row[size_t(c_nh)]);
        if (!d || !sb || !nh)
            throw IngestError(path + ": unparseable calendar row " + std::to_string(r.data_row()));
        if (!seen.insert(d->days).second)
            throw IngestError(path + ": duplicate calendar date " + row[size_t(c_date)]);
        out.push_back({*d, *sb, *nh});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.date < b.date; });
    return out;
}

// --- GTFS -------------------------------------------------------------

struct GtfsRoute {
    std::string route_id;
    std::string route_long_name;
};

struct GtfsTrip {
    std::string trip_id;
    std::string route_id;
    std::string direction;  // direction_id 0 -> OUTBOUND, 1 -> INBOUND
    std::string block_id;
    std::string shape_id;
};

struct GtfsStopTime {
    std::string trip_id;
    std::string stop_id;
    int stop_sequence = 0;
    int64_t scheduled_arrival = 0;  // seconds of service day, may exceed 24h
};

struct GtfsStop {
    std::string stop_id;
    std::string stop_name;
    LatLon position;
};

struct GtfsBundle {
    std::vector<GtfsRoute> routes;
    std::vector<GtfsTrip> trips;
    std::vector<GtfsStopTime> stop_times;
    std::vector<GtfsStop> stops;
    std::map<std::string, Polyline> shapes;

    const GtfsStop* find_stop(const std::string& id) const {
        auto it = stop_index.find(id);
        return it == stop_index.end() ? nullptr : &stops[it->second];
    }
    const GtfsTrip* find_trip(const std::string& id) const {
        auto it = trip_index.find(id);
        return it == trip_index.end() ? nullptr : &trips[it->second];
    }

    void rebuild_indices() {
        stop_index.clear();
        trip_index.clear();
        for (size_t i = 0; i < stops.size(); ++i) stop_index[stops[i].stop_id] = i;
        for (size_t i = 0; i < trips.size(); ++i) trip_index[trips[i].trip_id] = i;
    }

  private:
    std::unordered_map<std::string, size_t> stop_index;
    std::unordered_map<std::string, size_t> trip_index;
};

inline std::string gtfs_direction_name(std::string_view direction_id) {
    if (direction_id == "0") return "OUTBOUND";
    if (direction_id == "1") return "INBOUND";
    return std::string(direction_id);
}

inline std::string gtfs_direction_id(std::string_view name) {
    if (name == "OUTBOUND") return "0";
    if (name == "INBOUND") return "1";
    return std::string(name);
}

inline GtfsBundle parse_gtfs(const std::string& dir) {
    GtfsBundle g;
    std::vector<std::string> row;
    {
        csv::Reader r(dir + "/routes.txt");
        int c_id = r.require_column("route_id");
        int c_name = r.require_column("route_long_name");
        while (r.next(row)) g.routes.push_back({row[size_t(c_id)], row[size_t(c_name)]});
    }
    std::unordered_set<std::string> route_ids;
    for (const auto& rt : g.routes) route_ids.insert(rt.route_id);
    {
        csv::Reader r(dir + "/trips.txt");
        int c_route = r.require_column("route_id");
        int c_trip = r.require_column("trip_id");
        int c_dir = r.require_column("direction_id");
        int c_block = r.require_column("block_id");
        int c_shape = r.column("shape_id");
        while (r.next(row)) {
            GtfsTrip t;
            t.route_id = row[size_t(c_route)];
            t.trip_id = row[size_t(c_trip)];
            t.direction = gtfs_direction_name(row[size_t(c_dir)]);
            t.block_id = row[size_t(c_block)];
            if (c_shape >= 0) t.shape_id = row[size_t(c_shape)];
            if (!route_ids.count(t.route_id))
                throw IngestError("trips.txt: trip '" + t.trip_id + "' references unknown route '" + t.route_id + "'");
            g.trips.push_back(std::move(t));
        }
    }
    {
        csv::Reader r(dir + "/stops.txt");
        int c_id = r.require_column("stop_id");
        int c_name = r.require_column("stop_name");
        int c_lat = r.require_column("stop_lat");
        int c_lon = r.require_column("stop_lon");
        while (r.next(row)) {
            auto lat = csv::to_double(row[size_t(c_lat)]);
            auto lon = csv::to_double(row[size_t(c_lon)]);
            if (!lat || !lon)
                throw IngestError("stops.txt: unparseable coordinates for stop '" + row[size_t(c_id)] + "'");
            g.stops.push_back({row[size_t(c_id)], row[size_t(c_name)], LatLon{*lat, *lon}});
        }
    }
    g.rebuild_indices();
    {
        csv::Reader r(dir + "/stop_times.txt");
        int c_trip = r.require_column("trip_id");
        int c_arr = r.require_column("arrival_time");
        int c_stop = r.require_column("stop_id");
        int c_seq = r.require_column("stop_sequence");
        while (r.next(row)) {
            GtfsStopTime st;
            st.trip_id = row[size_t(c_trip)];
            st.stop_id = row[size_t(c_stop)];
            if (!g.find_trip(st.trip_id))
                throw IngestError("stop_times.txt: unknown trip '" + st.trip_id + "'");
            if (!g.find_stop(st.stop_id))
                throw IngestError("stop_times.txt: unknown stop '" + st.stop_id + "'");
            auto seq = csv::to_int(row[size_t(c_seq)]);
            auto arr = parse_gtfs_time(row[size_t(c_arr)]);
            if (!seq || !arr)
                throw IngestError("stop_times.txt: unparseable row for trip '" + st.trip_id + "'");
            st.stop_sequence = int(*seq);
            st.scheduled_arrival = *arr;
            g.stop_times.push_back(std::move(st));
        }
    }
    // stop_sequence must be strictly increasing per trip (file order)
    {
        std::unordered_map<std::string, int> last_seq;
        for (const auto& st : g.stop_times) {
            auto it = last_seq.find(st.trip_id);
            if (it != last_seq.end() && st.stop_sequence <= it->second)
                throw IngestError("stop_times.txt: non-increasing stop_sequence in trip '" + st.trip_id + "'");
            last_seq[st.trip_id] = st.stop_sequence;
        }
    }
    {
        csv::Reader r(dir + "/shapes.txt");
        int c_id = r.require_column("shape_id");
        int c_lat = r.require_column("shape_pt_lat");
        int c_lon = r.require_column("shape_pt_lon");
        int c_seq = r.require_column("shape_pt_sequence");
        std::map<std::string, std::vector<std::pair<int, LatLon>>> pts;
        while (r.next(row)) {
            auto lat = csv::to_double(row[size_t(c_lat)]);
            auto lon = csv::to_double(row[size_t(c_lon)]);
            auto seq = csv::to_int(row[size_t(c_seq)]);
            if (!lat || !lon || !seq)
                throw IngestError("shapes.txt: unparseable row for shape '" + row[size_t(c_id)] + "'");
            pts[row[size_t(c_id)]].push_back({int(*seq), LatLon{*lat, *lon}});
        }
        for (auto& [id, v] : pts) {
            std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            Polyline line;
            line.reserve(v.size());
            for (auto& [_, ll] : v) line.push_back(ll);
            g.shapes[id] = std::move(line);
        }
    }
    for (const auto& t : g.trips)
        if (!t.shape_id.empty() && !g.shapes.count(t.shape_id))
            throw IngestError("trips.txt: trip '" + t.trip_id + "' references unknown shape '" + t.shape_id + "'");
    return g;
}

// --- writers (synth emits exactly what the parsers read) ---------------

inline void write_apc_csv(const std::string& path, const std::vector<ApcRecord>& records,
                          const std::vector<std::string>& comments = {}) {
    csv::Writer w(path);
    for (const auto& c : comments) w.comment(c);
    w.row({"transit_date", "trip_id", "block_id", "route_id", "direction", "vehicle_id", "stop_id",
           "stop_sequence", "scheduled_arrival", "actual_arrival", "ons", "offs", "load",
           "scheduled_headway", "zero_load_at_trip_end"});
    for (const auto& r : records) {
        w.row({format_date(r.transit_date), r.trip_id, r.block_id, r.route_id, r.direction, r.vehicle_id,
               r.stop_id, csv::fmt(r.stop_sequence), format_timestamp(r.scheduled_arrival),
               r.actual_arrival ? format_timestamp(*r.actual_arrival) : "",
               r.ons ? csv::fmt(*r.ons) : "", r.offs ? csv::fmt(*r.offs) : "",
               r.load ? csv::fmt(*r.load) : "", csv::fmt(r.scheduled_headway),
               r.zero_load_at_trip_end ? "1" : "0"});
    }
}

inline void write_weather_csv(const std::string& path, const std::vector<WeatherObservation>& obs,
                              const std::vector<std::string>& comments = {}) {
    csv::Writer w(path);
    for (const auto& c : comments) w.comment(c);
    w.row({"station_id", "latitude", "longitude", "timestamp", "temperature", "humidity",
           "precipitation_intensity"});
    for (const auto& o : obs) {
        w.row({o.station_id, csv::fmt(o.position.lat), csv::fmt(o.position.lon),
               format_timestamp(o.timestamp), csv::fmt(o.temperature), csv::fmt(o.humidity),
               csv::fmt(o.precipitation)});
    }
}

inline void write_traffic_csv(const std::string& path, const std::vector<TrafficSegment>& segments,
                              const std::vector<TrafficSegmentReading>& readings,
                              const std::vector<std::string>& comments = {}) {
    csv::Writer w(path);
    for (const auto& c : comments) w.comment(c);
    w.row({"segment_id", "timestamp", "speed", "geometry"});
    std::unordered_map<std::string, const Polyline*> geom;
    for (const auto& s : segments) geom[s.segment_id] = &s.geometry;
    std::unordered_set<std::string> emitted;
    for (const auto& r : readings) {
        std::string g;
        if (emitted.insert(r.segment_id).second) {
            auto it = geom.find(r.segment_id);
            if (it == geom.end()) throw IngestError("write_traffic_csv: no geometry for " + r.segment_id);
            g = detail::format_polyline(*it->second);
        }
        w.row({r.segment_id, format_timestamp(r.timestamp), csv::fmt(r.speed), g});
    }
}

inline void write_calendar_csv(const std::string& path, const std::vector<CalendarEntry>& entries,
                               const std::vector<std::string>& comments = {}) {
    csv::Writer w(path);
    for (const auto& c : comments) w.comment(c);
    w.row({"date", "is_school_break", "is_national_holiday"});
    for (const auto& e : entries)
        w.row({format_date(e.date), e.is_school_break ? "1" : "0", e.is_national_holiday ? "1" : "0"});
}

inline void write_gtfs(const std::string& dir, const GtfsBundle& g,
                       const std::vector<std::string>& comments = {}) {
    {
        csv::Writer w(dir + "/routes.txt");
        for (const auto& c : comments) w.comment(c);
        w.row({"route_id", "route_long_name"});
        for (const auto& r : g.routes) w.row({r.route_id, r.route_long_name});
    }
    {
        csv::Writer w(dir + "/trips.txt");
        for (const auto& c : comments) w.comment(c);
        w.row({"route_id", "trip_id", "direction_id", "block_id", "shape_id"});
        for (const auto& t : g.trips)
            w.row({t.route_id, t.trip_id, gtfs_direction_id(t.direction), t.block_id, t.shape_id});
    }
    {
        csv::Writer w(dir + "/stops.txt");
        for (const auto& c : comments) w.comment(c);
        w.row({"stop_id", "stop_name", "stop_lat", "stop_lon"});
        for (const auto& s : g.stops)
            w.row({s.stop_id, s.stop_name, csv::fmt(s.position.lat), csv::fmt(s.position.lon)});
    }
    {
        csv::Writer w(dir + "/stop_times.txt");
        for (const auto& c : comments) w.comment(c);
        w.row({"trip_id", "arrival_time", "departure_time", "stop_id", "stop_sequence"});
        for (const auto& st : g.stop_times) {
            std::string t = format_gtfs_time(st.scheduled_arrival);
            w.row({st.trip_id, t, t, st.stop_id, csv::fmt(st.stop_sequence)});
        }
    }
    {
        csv::Writer w(dir + "/shapes.txt");
        for (const auto& c : comments) w.comment(c);
        w.row({"shape_id", "shape_pt_lat", "shape_pt_lon", "shape_pt_sequence"});
        for (const auto& [id, line] : g.shapes)
            for (size_t i = 0; i < line.size(); ++i)
                w.row({id, csv::fmt(line[i].lat), csv::fmt(line[i].lon), csv::fmt(int(i) + 1)});
    }
}

}  // namespace tlf
