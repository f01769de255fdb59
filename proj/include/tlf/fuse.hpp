#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "tlf/clean.hpp"
#include "tlf/csv.hpp"
#include "tlf/domain.hpp"
#include "tlf/geo.hpp"
#include "tlf/ingest.hpp"

// Spatiotemporal joins (weather by nearest station/hour, traffic by grid
// cell/5-minute slot, calendar by date), actual headway, and the trip/stop
// aggregations. Joins only ever add context; APC fields pass through.

namespace tlf {

struct FusedRecord {
    ApcRecord apc;
    std::optional<double> temperature;
    std::optional<double> humidity;
    std::optional<double> precipitation;
    std::optional<double> traffic_speed;
    std::optional<double> actual_headway;  // seconds since previous vehicle
    bool is_holiday = false;
    bool is_school_break = false;
};

struct FuseDiagnostics {
    size_t weather_misses = 0;
    size_t traffic_misses = 0;
    size_t calendar_misses = 0;
    size_t empty_groups = 0;
};

class WeatherIndex {
  public:
    explicit WeatherIndex(const std::vector<WeatherObservation>& obs) {
        for (const auto& o : obs) {
            size_t si;
            auto it = station_of_.find(o.station_id);
            if (it == station_of_.end()) {
                si = stations_.size();
                station_of_[o.station_id] = si;
                stations_.push_back({o.station_id, o.position});
                series_.emplace_back();
            } else {
                si = it->second;
            }
            series_[si][o.timestamp.seconds / 3600] = &o;
        }
        order_.resize(stations_.size());
        for (size_t i = 0; i < order_.size(); ++i) order_[i] = i;
        std::sort(order_.begin(), order_.end(),
                  [&](size_t a, size_t b) { return stations_[a].first < stations_[b].first; });
    }

    // nearest station (ties -> lowest station_id), observation at the floor
    // hour, else nearest within +-3h preferring the earlier one
    const WeatherObservation* lookup(LatLon pos, Timestamp t) const {
        if (stations_.empty()) return nullptr;
        size_t best = order_[0];
        double best_d = haversine_m(pos, stations_[best].second);
        for (size_t oi = 1; oi < order_.size(); ++oi) {
            size_t si = order_[oi];
            double d = haversine_m(pos, stations_[si].second);
            if (d < best_d - 1e-9) {
                best = si;
                best_d = d;
            }
        }
        const auto& series = series_[best];
        int64_t hour = detail::floor_div(t.seconds, 3600);
        for (int64_t delta : {0, -1, 1, -2, 2, -3, 3}) {
            auto it = series.find(hour + delta);
            if (it != series.end()) return it->second;
        }
        return nullptr;
    }

  private:
    std::vector<std::pair<std::string, LatLon>> stations_;
    std::unordered_map<std::string, size_t> station_of_;
    std::vector<std::unordered_map<int64_t, const WeatherObservation*>> series_;
    std::vector<size_t> order_;  // by station_id
};

// 1x1 mile axis-aligned grid in a local projection anchored at the network
// centroid; maps cells to the traffic segments crossing them.
class GridIndex {
  public:
    GridIndex(LatLon anchor, const std::vector<TrafficSegment>& segments)
        : proj_(LocalProjection::around(anchor)) {
        for (size_t si = 0; si < segments.size(); ++si)
            for (auto cell : cells_of_polyline(segments[si].geometry)) cells_[cell].push_back(si);
        for (auto& [cell, v] : cells_) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    }

    // segment indices in every cell the polyline crosses, deterministic order
    std::vector<size_t> segments_near(const Polyline& shape) const {
        std::set<size_t> found;
        for (auto cell : cells_of_polyline(shape)) {
            auto it = cells_.find(cell);
            if (it != cells_.end()) found.insert(it->second.begin(), it->second.end());
        }
        return {found.begin(), found.end()};
    }

    size_t cell_count() const { return cells_.size(); }

  private:
    using Cell = std::pair<int32_t, int32_t>;

    Cell cell_of(XY p) const {
        return {int32_t(std::floor(p.x / kMileM)), int32_t(std::floor(p.y / kMileM))};
    }

    // exact grid traversal along each edge (2D DDA), so a segment appears in
    // every cell it intersects
    std::set<Cell> cells_of_polyline(const Polyline& line) const {
        std::set<Cell> cells;
        if (line.empty()) return cells;
        for (size_t i = 0; i + 1 < line.size(); ++i) {
            XY a = proj_.to_xy(line[i]), b = proj_.to_xy(line[i + 1]);
            Cell ca = cell_of(a), cb = cell_of(b);
            cells.insert(ca);
            double dx = b.x - a.x, dy = b.y - a.y;
            int stepx = dx > 0 ? 1 : -1, stepy = dy > 0 ? 1 : -1;
            double tmaxx = dx != 0 ? (((ca.first + (stepx > 0 ? 1 : 0)) * kMileM) - a.x) / dx : 1e300;
            double tmaxy = dy != 0 ? (((ca.second + (stepy > 0 ? 1 : 0)) * kMileM) - a.y) / dy : 1e300;
            double tdx = dx != 0 ? kMileM / std::abs(dx) : 1e300;
            double tdy = dy != 0 ? kMileM / std::abs(dy) : 1e300;
            Cell cur = ca;
            int guard = 0;
            while (cur != cb && guard++ < 100000) {
                if (tmaxx < tmaxy) {
                    cur.first += stepx;
                    tmaxx += tdx;
                } else {
                    cur.second += stepy;
                    tmaxy += tdy;
                }
                cells.insert(cur);
            }
        }
        if (line.size() == 1) cells.insert(cell_of(proj_.to_xy(line[0])));
        return cells;
    }

    LocalProjection proj_;
    std::map<Cell, std::vector<size_t>> cells_;
};

class TrafficIndex {
  public:
    TrafficIndex(const std::vector<TrafficSegment>& segments,
                 const std::vector<TrafficSegmentReading>& readings, LatLon anchor)
        : segments_(segments), grid_(anchor, segments) {
        for (size_t i = 0; i < segments.size(); ++i) index_of_[segments[i].segment_id] = i;
        speeds_.resize(segments.size());
        for (const auto& r : readings) {
            auto it = index_of_.find(r.segment_id);
            if (it == index_of_.end()) continue;
            speeds_[it->second][r.timestamp.seconds / 300] = r.speed;
        }
    }

    // mean speed over all segments in cells crossed by the shape at the
    // record's 5-minute slot; per segment, missing slots fall back up to
    // 15 minutes into the past
    std::optional<double> mean_speed(const Polyline& shape, Timestamp t) const {
        auto key = std::make_pair(&shape, detail::floor_div(t.seconds, 300));
        auto memo_it = memo_.find(key);
        if (memo_it != memo_.end()) return memo_it->second;

        auto seg_it = shape_segments_.find(&shape);
        if (seg_it == shape_segments_.end())
            seg_it = shape_segments_.emplace(&shape, grid_.segments_near(shape)).first;

        int64_t slot = detail::floor_div(t.seconds, 300);
        double sum = 0;
        int count = 0;
        for (size_t si : seg_it->second) {
            for (int64_t back = 0; back <= 3; ++back) {
                auto it = speeds_[si].find(slot - back);
                if (it != speeds_[si].end()) {
                    sum += it->second;
                    ++count;
                    break;
                }
            }
        }
        std::optional<double> result;
        if (count) result = sum / count;
        memo_[key] = result;
        return result;
    }

    const GridIndex& grid() const { return grid_; }

  private:
    std::vector<TrafficSegment> segments_;
    GridIndex grid_;
    std::unordered_map<std::string, size_t> index_of_;
    std::vector<std::unordered_map<int64_t, double>> speeds_;
    mutable std::map<std::pair<const Polyline*, int64_t>, std::optional<double>> memo_;
    mutable std::map<const Polyline*, std::vector<size_t>> shape_segments_;
};

inline LatLon network_centroid(const GtfsBundle& gtfs) {
    if (gtfs.stops.empty()) return {0, 0};
    double lat = 0, lon = 0;
    for (const auto& s : gtfs.stops) {
        lat += s.position.lat;
        lon += s.position.lon;
    }
    return {lat / double(gtfs.stops.size()), lon / double(gtfs.stops.size())};
}

struct CalendarIndex {
    std::unordered_map<int32_t, CalendarEntry> by_day;

    explicit CalendarIndex(const std::vector<CalendarEntry>& entries) {
        for (const auto& e : entries) by_day[e.date.days] = e;
    }
};

// Weather/traffic/calendar joins in one pass; each join is independent and
// pure per record.
inline std::vector<FusedRecord> join_context(const std::vector<ApcRecord>& records, const GtfsBundle& gtfs,
                                             const WeatherIndex& weather, const TrafficIndex& traffic,
                                             const CalendarIndex& calendar, FuseDiagnostics& diag) {
    std::vector<FusedRecord> out;
    out.reserve(records.size());
    for (const auto& rec : records) {
        FusedRecord f;
        f.apc = rec;

        const GtfsStop* stop = gtfs.find_stop(rec.stop_id);
        if (stop) {
            if (const WeatherObservation* w = weather.lookup(stop->position, rec.scheduled_arrival)) {
                f.temperature = w->temperature;
                f.humidity = w->humidity;
                f.precipitation = w->precipitation;
            } else {
                ++diag.weather_misses;
            }
        } else {
            ++diag.weather_misses;
        }

        const GtfsTrip* trip = gtfs.find_trip(rec.trip_id);
        const Polyline* shape = nullptr;
        if (trip && !trip->shape_id.empty()) {
            auto it = gtfs.shapes.find(trip->shape_id);
            if (it != gtfs.shapes.end()) shape = &it->second;
        }
        if (shape) {
            f.traffic_speed = traffic.mean_speed(*shape, rec.scheduled_arrival);
            if (!f.traffic_speed) ++diag.traffic_misses;
        } else {
            ++diag.traffic_misses;
        }

        auto cal = calendar.by_day.find(rec.transit_date.days);
        if (cal != calendar.by_day.end()) {
            f.is_holiday = cal->second.is_national_holiday;
            f.is_school_break = cal->second.is_school_break;
        } else {
            ++diag.calendar_misses;
        }
        out.push_back(std::move(f));
    }
    return out;
}

// headway = gap to the previous vehicle at the same (route, direction, stop)
// on the same service date, by actual arrival; first vehicle gets null
inline void compute_actual_headway(std::vector<FusedRecord>& records) {
    std::map<std::tuple<std::string, std::string, std::string, int32_t>, std::vector<size_t>> groups;
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& a = records[i].apc;
        if (!a.actual_arrival) continue;
        groups[{a.route_id, a.direction, a.stop_id, a.transit_date.days}].push_back(i);
    }
    for (auto& [key, idx] : groups) {
        std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
            return records[a].apc.actual_arrival->seconds < records[b].apc.actual_arrival->seconds;
        });
        for (size_t k = 1; k < idx.size(); ++k)
            records[idx[k]].actual_headway =
                double(records[idx[k]].apc.actual_arrival->seconds - records[idx[k - 1]].apc.actual_arrival->seconds);
    }
}

namespace fuse_detail {

struct Mean {
    double sum = 0;
    int n = 0;

    void add(std::optional<double> v) {
        if (v) {
            sum += *v;
            ++n;
        }
    }
    void add(double v) {
        sum += v;
        ++n;
    }
    std::optional<double> value() const {
        if (!n) return std::nullopt;
        return sum / n;
    }
};

}  // namespace fuse_detail

// Aggregation of one trip instance: means for context, max for load, first
// instance for identifiers; the window comes from the first stop.
inline std::optional<TripAggregate> aggregate_trip(const std::vector<FusedRecord>& records,
                                                   const std::vector<size_t>& rows, int window_minutes) {
    if (rows.empty()) return std::nullopt;
    const FusedRecord& first = records[rows.front()];
    TripAggregate t;
    t.key = TripKey{first.apc.transit_date, first.apc.trip_id, first.apc.route_id, first.apc.direction,
                    time_window_of(first.apc.scheduled_arrival, window_minutes)};
    t.block_id = first.apc.block_id;
    t.vehicle_id = first.apc.vehicle_id;
    t.n_stops = int(rows.size());
    t.first_scheduled = first.apc.scheduled_arrival;
    t.is_holiday = first.is_holiday;
    t.is_school_break = first.is_school_break;

    fuse_detail::Mean temp, hum, precip, sched_hw, actual_hw, speed;
    int max_load = 0;
    for (size_t i : rows) {
        const FusedRecord& r = records[i];
        temp.add(r.temperature);
        hum.add(r.humidity);
        precip.add(r.precipitation);
        speed.add(r.traffic_speed);
        sched_hw.add(r.apc.scheduled_headway);
        actual_hw.add(r.actual_headway);
        if (r.apc.load) max_load = std::max(max_load, *r.apc.load);
    }
    t.mean_temperature = temp.value();
    t.mean_humidity = hum.value();
    t.mean_precipitation = precip.value();
    t.mean_scheduled_headway = sched_hw.value().value_or(0.0);
    t.mean_actual_headway = actual_hw.value();
    t.mean_traffic_speed = speed.value();
    t.max_load = max_load;
    t.target_bin = bin_trip_load(max_load);

    CivilDate c = civil_of(first.apc.transit_date);
    t.year = c.year;
    t.month = c.month;
    t.day = c.day;
    t.hour = seconds_since_midnight(first.apc.scheduled_arrival) / 3600;
    t.day_of_week = day_of_week(first.apc.transit_date);
    return t;
}

inline std::vector<TripAggregate> aggregate_trips(const std::vector<FusedRecord>& records,
                                                  int window_minutes, FuseDiagnostics& diag) {
    std::vector<ApcRecord> apc;
    apc.reserve(records.size());
    for (const auto& r : records) apc.push_back(r.apc);
    auto instances = group_trip_instances(apc);

    std::vector<TripAggregate> out;
    out.reserve(instances.size());
    for (const auto& inst : instances) {
        auto t = aggregate_trip(records, inst.rows, window_minutes);
        if (t)
            out.push_back(std::move(*t));
        else
            ++diag.empty_groups;
    }
    return out;
}

// Stop grouping per (date, route, direction, stop, window); loads are summed
// across the group, context features averaged.
inline std::vector<StopObservation> aggregate_stops(const std::vector<FusedRecord>& records,
                                                    int window_minutes) {
    // trip start times give stop rows a stable within-block ordering
    std::vector<ApcRecord> apc;
    apc.reserve(records.size());
    for (const auto& r : records) apc.push_back(r.apc);
    auto instances = group_trip_instances(apc);
    std::vector<Timestamp> trip_start(records.size());
    for (const auto& inst : instances) {
        Timestamp start = records[inst.rows.front()].apc.scheduled_arrival;
        for (size_t i : inst.rows) start = std::min(start, records[i].apc.scheduled_arrival);
        for (size_t i : inst.rows) trip_start[i] = start;
    }

    std::map<std::tuple<int32_t, std::string, std::string, std::string, int>, std::vector<size_t>> groups;
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& a = records[i].apc;
        groups[{a.transit_date.days, a.route_id, a.direction, a.stop_id,
                time_window_of(a.scheduled_arrival, window_minutes)}]
            .push_back(i);
    }

    std::vector<StopObservation> out;
    out.reserve(groups.size());
    for (auto& [key, rows] : groups) {
        const FusedRecord& first = records[rows.front()];
        StopObservation s;
        s.transit_date = first.apc.transit_date;
        s.route_id = first.apc.route_id;
        s.direction = first.apc.direction;
        s.stop_id = first.apc.stop_id;
        s.stop_sequence = first.apc.stop_sequence;
        s.time_window = std::get<4>(key);
        s.zero_load_at_trip_end = first.apc.zero_load_at_trip_end;
        s.is_holiday = first.is_holiday;
        s.is_school_break = first.is_school_break;
        s.block_id = first.apc.block_id;
        s.first_scheduled = trip_start[rows.front()];

        fuse_detail::Mean temp, hum, precip, speed, sched_hw, actual_hw;
        long sum = 0;
        for (size_t i : rows) {
            const FusedRecord& r = records[i];
            temp.add(r.temperature);
            hum.add(r.humidity);
            precip.add(r.precipitation);
            speed.add(r.traffic_speed);
            sched_hw.add(r.apc.scheduled_headway);
            actual_hw.add(r.actual_headway);
            if (r.apc.load) sum += *r.apc.load;
        }
        s.summed_load = int(std::max(0l, sum));
        s.target_bin = bin_stop_load(s.summed_load);
        s.temperature = temp.value();
        s.humidity = hum.value();
        s.precipitation = precip.value();
        s.traffic_speed = speed.value();
        s.scheduled_headway = sched_hw.value().value_or(0.0);
        s.actual_headway = actual_hw.value();

        CivilDate c = civil_of(s.transit_date);
        s.year = c.year;
        s.month = c.month;
        s.day = c.day;
        s.hour = seconds_since_midnight(first.apc.scheduled_arrival) / 3600;
        s.day_of_week = day_of_week(s.transit_date);
        out.push_back(std::move(s));
    }
    return out;
}

// --- fused dataset files ------------------------------------------------

inline void write_trips_csv(const std::string& path, const std::vector<TripAggregate>& trips,
                            const std::vector<std::string>& comments = {}) {
    csv::Writer w(path);
    for (const auto& c : comments) w.comment(c);
    w.row({"transit_date", "trip_id", "route_id", "direction", "time_window", "block_id", "vehicle_id",
           "n_stops", "first_scheduled", "mean_temperature", "mean_humidity", "mean_precipitation",
           "mean_scheduled_headway", "mean_actual_headway", "mean_traffic_speed", "max_load",
           "target_bin", "is_holiday", "is_school_break", "year", "month", "day", "day_of_week", "hour"});
    auto opt = [](const std::optional<double>& v) { return v ? csv::fmt(*v) : std::string(); };
    for (const auto& t : trips) {
        w.row({format_date(t.key.transit_date), t.key.trip_id, t.key.route_id, t.key.direction,
               csv::fmt(t.key.time_window), t.block_id, t.vehicle_id, csv::fmt(t.n_stops),
               format_timestamp(t.first_scheduled), opt(t.mean_temperature), opt(t.mean_humidity),
               opt(t.mean_precipitation), csv::fmt(t.mean_scheduled_headway), opt(t.mean_actual_headway),
               opt(t.mean_traffic_speed), csv::fmt(t.max_load), csv::fmt(t.target_bin.value()),
               t.is_holiday ? "1" : "0", t.is_school_break ? "1" : "0", csv::fmt(t.year),
               csv::fmt(t.month), csv::fmt(t.day), csv::fmt(t.day_of_week), csv::fmt(t.hour)});
    }
}

inline std::vector<TripAggregate> read_trips_csv(const std::string& path) {
    csv::Reader r(path);
    auto c = [&](const char* n) { return r.require_column(n); };
    int c_date = c("transit_date"), c_trip = c("trip_id"), c_route = c("route_id"), c_dir = c("direction"),
        c_win = c("time_window"), c_block = c("block_id"), c_veh = c("vehicle_id"), c_n = c("n_stops"),
        c_first = c("first_scheduled"), c_temp = c("mean_temperature"), c_hum = c("mean_humidity"),
        c_pre = c("mean_precipitation"), c_shw = c("mean_scheduled_headway"), c_ahw = c("mean_actual_headway"),
        c_spd = c("mean_traffic_speed"), c_load = c("max_load"), c_hol = c("is_holiday"),
        c_sb = c("is_school_break"), c_year = c("year"), c_month = c("month"), c_day = c("day"),
        c_dow = c("day_of_week"), c_hour = c("hour");
    std::vector<TripAggregate> out;
    std::vector<std::string> row;
    while (r.next(row)) {
        TripAggregate t;
        auto date = parse_date(row[size_t(c_date)]);
        auto first = parse_timestamp(row[size_t(c_first)]);
        auto win = csv::to_int(row[size_t(c_win)]);
        auto n = csv::to_int(row[size_t(c_n)]);
        auto load = csv::to_int(row[size_t(c_load)]);
        if (!date || !first || !win || !n || !load)
            throw IngestError(path + ": bad trips row " + std::to_string(r.data_row()));
        t.key = TripKey{*date, row[size_t(c_trip)], row[size_t(c_route)], row[size_t(c_dir)], int(*win)};
        t.block_id = row[size_t(c_block)];
        t.vehicle_id = row[size_t(c_veh)];
        t.n_stops = int(*n);
        t.first_scheduled = *first;
        t.mean_temperature = csv::to_double(row[size_t(c_temp)]);
        t.mean_humidity = csv::to_double(row[size_t(c_hum)]);
        t.mean_precipitation = csv::to_double(row[size_t(c_pre)]);
        t.mean_scheduled_headway = csv::to_double(row[size_t(c_shw)]).value_or(0.0);
        t.mean_actual_headway = csv::to_double(row[size_t(c_ahw)]);
        t.mean_traffic_speed = csv::to_double(row[size_t(c_spd)]);
        t.max_load = int(*load);
        t.target_bin = bin_trip_load(t.max_load);
        t.is_holiday = row[size_t(c_hol)] == "1";
        t.is_school_break = row[size_t(c_sb)] == "1";
        t.year = int(csv::to_int(row[size_t(c_year)]).value_or(0));
        t.month = int(csv::to_int(row[size_t(c_month)]).value_or(0));
        t.day = int(csv::to_int(row[size_t(c_day)]).value_or(0));
        t.day_of_week = int(csv::to_int(row[size_t(c_dow)]).value_or(0));
        t.hour = int(csv::to_int(row[size_t(c_hour)]).value_or(0));
        out.push_back(std::move(t));
    }
    return out;
}

inline void write_stops_csv(const std::string& path, const std::vector<StopObservation>& stops,
                            const std::vector<std::string>& comments = {}) {
    csv::Writer w(path);
    for (const auto& c : comments) w.comment(c);
    w.row({"transit_date", "route_id", "direction", "stop_id", "stop_sequence", "time_window", "block_id",
           "trip_start", "summed_load", "target_bin", "scheduled_headway", "actual_headway", "temperature",
           "humidity", "precipitation", "traffic_speed", "is_holiday", "is_school_break",
           "zero_load_at_trip_end", "year", "month", "day", "day_of_week", "hour"});
    auto opt = [](const std::optional<double>& v) { return v ? csv::fmt(*v) : std::string(); };
    for (const auto& s : stops) {
        w.row({format_date(s.transit_date), s.route_id, s.direction, s.stop_id, csv::fmt(s.stop_sequence),
               csv::fmt(s.time_window), s.block_id, format_timestamp(s.first_scheduled),
               csv::fmt(s.summed_load), csv::fmt(s.target_bin.value()), csv::fmt(s.scheduled_headway),
               opt(s.actual_headway), opt(s.temperature), opt(s.humidity), opt(s.precipitation),
               opt(s.traffic_speed), s.is_holiday ? "1" : "0", s.is_school_break ? "1" : "0",
               s.zero_load_at_trip_end ? "1" : "0", csv::fmt(s.year), csv::fmt(s.month), csv::fmt(s.day),
               csv::fmt(s.day_of_week), csv::fmt(s.hour)});
    }
}

inline std::vector<StopObservation> read_stops_csv(const std::string& path) {
    csv::Reader r(path);
    auto c = [&](const char* n) { return r.require_column(n); };
    int c_date = c("transit_date"), c_route = c("route_id"), c_dir = c("direction"), c_stop = c("stop_id"),
        c_seq = c("stop_sequence"), c_win = c("time_window"), c_block = c("block_id"),
        c_start = c("trip_start"), c_load = c("summed_load"), c_shw = c("scheduled_headway"),
        c_ahw = c("actual_headway"), c_temp = c("temperature"), c_hum = c("humidity"),
        c_pre = c("precipitation"), c_spd = c("traffic_speed"), c_hol = c("is_holiday"),
        c_sb = c("is_school_break"), c_zle = c("zero_load_at_trip_end"), c_year = c("year"),
        c_month = c("month"), c_day = c("day"), c_dow = c("day_of_week"), c_hour = c("hour");
    std::vector<StopObservation> out;
    std::vector<std::string> row;
    while (r.next(row)) {
        StopObservation s;
        auto date = parse_date(row[size_t(c_date)]);
        auto start = parse_timestamp(row[size_t(c_start)]);
        auto load = csv::to_int(row[size_t(c_load)]);
        auto seq = csv::to_int(row[size_t(c_seq)]);
        auto win = csv::to_int(row[size_t(c_win)]);
        if (!date || !start || !load || !seq || !win)
            throw IngestError(path + ": bad stops row " + std::to_string(r.data_row()));
        s.transit_date = *date;
        s.route_id = row[size_t(c_route)];
        s.direction = row[size_t(c_dir)];
        s.stop_id = row[size_t(c_stop)];
        s.stop_sequence = int(*seq);
        s.time_window = int(*win);
        s.block_id = row[size_t(c_block)];
        s.first_scheduled = *start;
        s.summed_load = int(*load);
        s.target_bin = bin_stop_load(s.summed_load);
        s.scheduled_headway = csv::to_double(row[size_t(c_shw)]).value_or(0.0);
        s.actual_headway = csv::to_double(row[size_t(c_ahw)]);
        s.temperature = csv::to_double(row[size_t(c_temp)]);
        s.humidity = csv::to_double(row[size_t(c_hum)]);
        s.precipitation = csv::to_double(row[size_t(c_pre)]);
        s.traffic_speed = csv::to_double(row[size_t(c_spd)]);
        s.is_holiday = row[size_t(c_hol)] == "1";
        s.is_school_break = row[size_t(c_sb)] == "1";
        s.zero_load_at_trip_end = row[size_t(c_zle)] == "1";
        s.year = int(csv::to_int(row[size_t(c_year)]).value_or(0));
        s.month = int(csv::to_int(row[size_t(c_month)]).value_or(0));
        s.day = int(csv::to_int(row[size_t(c_day)]).value_or(0));
        s.day_of_week = int(csv::to_int(row[size_t(c_dow)]).value_or(0));
        s.hour = int(csv::to_int(row[size_t(c_hour)]).value_or(0));
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace tlf
