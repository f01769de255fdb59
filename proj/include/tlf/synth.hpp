#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tlf/csv.hpp"
#include "tlf/domain.hpp"
#include "tlf/geo.hpp"
#include "tlf/ingest.hpp"

// Seeded synthetic city: routes, blocks, trips, demand, weather, traffic and
// calendar, plus an APC-style noise injector. The generator is the ground
// truth oracle for the cleaning and aggregation stages, so corruption is
// logged trip by trip.

namespace tlf {

struct NoiseConfig {
    double count_noise_sd = 0.0;        // benign additive noise on ons/offs, rebalanced per trip
    double p_large_negative_load = 0.0;  // R1
    double p_count_imbalance = 0.0;      // R2
    double p_null_arrivals = 0.0;        // R3
    double p_null_offs = 0.0;            // R4
    double p_duplicate_trip = 0.0;       // R5
    double p_shuffle_sequence = 0.0;     // R6
};

struct SynthConfig {
    uint64_t seed = 42;
    int n_routes = 30;
    int n_directions_per_route = 2;
    int stops_per_trip_min = 10;
    int stops_per_trip_max = 40;
    int service_start_minute = 4 * 60;        // 04:00
    int service_end_minute = 25 * 60 + 30;    // 01:30 next day
    Date start_date = make_date(2020, 1, 1);
    int n_days = 60;

    // demand model: ons ~ Poisson(base * hour * month * holiday * rain)
    std::vector<double> base_rates;  // per route; drawn log-uniform from the range below when empty
    double base_rate_low = 0.6;
    double base_rate_high = 7.0;
    std::array<double, 24> hour_curve = {0.2, 0.1, 0.1, 0.1, 0.3, 0.6, 1.2, 1.8, 1.6, 1.0, 0.8, 0.9,
                                         1.0, 0.9, 0.9, 1.1, 1.6, 1.8, 1.3, 0.9, 0.7, 0.5, 0.4, 0.3};
    std::array<double, 12> month_curve = {1.0, 1.0, 1.05, 1.05, 1.0, 0.85, 0.8, 0.9, 1.1, 1.15, 1.05, 0.9};
    double holiday_multiplier = 0.6;
    double rain_dampening = 0.75;
    double p_zero_load_at_trip_end = 0.8;

    // schedule shape
    int dwell_minutes = 2;        // scheduled time between consecutive stops
    int layover_minutes = 10;     // gap between trips of one block
    int headway_min_minutes = 90;
    int headway_max_minutes = 150;
    double arrival_delay_sd_s = 45.0;

    // context generators
    int n_weather_stations = 3;
    double p_rain_day = 0.25;
    double p_traffic_gap = 0.02;  // dropped 5-minute readings

    NoiseConfig noise;
};

struct CorruptionEntry {
    Date transit_date;
    std::string trip_id;
    int occurrence = 0;  // >0 only for duplicated copies (R5)
    std::string rule;    // R1..R6
};

struct CorruptionLog {
    std::vector<CorruptionEntry> entries;

    std::set<std::tuple<int32_t, std::string, int>> trip_set() const {
        std::set<std::tuple<int32_t, std::string, int>> s;
        for (const auto& e : entries) s.insert({e.transit_date.days, e.trip_id, e.occurrence});
        return s;
    }
};

struct SynthCity {
    SynthConfig config;
    GtfsBundle gtfs;
    std::vector<CalendarEntry> calendar;
    std::vector<WeatherObservation> weather;
    std::vector<TrafficSegment> traffic_segments;
    std::vector<TrafficSegmentReading> traffic_readings;

    std::vector<double> route_base_rates;                      // by route index
    std::unordered_map<std::string, double> rain_mmh_by_hour;  // "YYYY-MM-DDTHH" -> intensity
    std::set<int32_t> holidays;                                // day numbers
    std::unordered_map<std::string, int> route_index;

    // schedule-static lookups, filled by generate_city
    std::unordered_map<std::string, std::vector<size_t>> trip_stop_times;  // trip_id -> stop_time indices
    std::vector<double> scheduled_headway_s;                               // parallel to gtfs.stop_times
};

namespace detail {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace detail

// Independent per-day random stream; days can be simulated in parallel
// without changing the output.
inline std::mt19937_64 day_rng(uint64_t seed, Date date, uint64_t salt = 0) {
    return std::mt19937_64(detail::splitmix64(seed ^ detail::splitmix64(uint64_t(uint32_t(date.days)) + salt)));
}

namespace synth_detail {

inline std::string route_id_of(int r) { return "route" + std::to_string(r + 1); }

struct RainEvent {
    int start_hour = 0;
    int duration = 0;
    double intensity = 0;
};

}  // namespace synth_detail

inline SynthCity generate_city(const SynthConfig& cfg) {
    if (cfg.n_routes <= 0) throw ConfigError("n_routes must be positive");
    if (cfg.stops_per_trip_min < 2 || cfg.stops_per_trip_max < cfg.stops_per_trip_min)
        throw ConfigError("bad stops_per_trip range");
    if (cfg.service_end_minute <= cfg.service_start_minute)
        throw ConfigError("service span is empty");
    if (!cfg.base_rates.empty() && int(cfg.base_rates.size()) != cfg.n_routes)
        throw ConfigError("base_rates size must equal n_routes");
    int span = cfg.service_end_minute - cfg.service_start_minute;
    int max_trip_minutes = (cfg.stops_per_trip_max - 1) * cfg.dwell_minutes;
    if (span < max_trip_minutes) throw ConfigError("service span shorter than one trip");

    SynthCity city;
    city.config = cfg;
    std::mt19937_64 rng(detail::splitmix64(cfg.seed));

    const LatLon center{36.1627, -86.7816};
    const double mile_deg_lat = kMileM / (kEarthRadiusM * kPi / 180.0);
    const double mile_deg_lon = mile_deg_lat / std::cos(deg2rad(center.lat));

    // routes radiate from the center; stops every ~0.35 mile
    std::uniform_int_distribution<int> stops_dist(cfg.stops_per_trip_min, cfg.stops_per_trip_max);
    std::uniform_int_distribution<int> headway_dist(cfg.headway_min_minutes, cfg.headway_max_minutes);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    city.route_base_rates.resize(size_t(cfg.n_routes));
    for (int r = 0; r < cfg.n_routes; ++r) {
        if (!cfg.base_rates.empty())
            city.route_base_rates[size_t(r)] = cfg.base_rates[size_t(r)];
        else
            city.route_base_rates[size_t(r)] =
                cfg.base_rate_low * std::pow(cfg.base_rate_high / cfg.base_rate_low, unit(rng));
    }

    for (int r = 0; r < cfg.n_routes; ++r) {
        std::string rid = synth_detail::route_id_of(r);
        city.route_index[rid] = r;
        city.gtfs.routes.push_back({rid, "Synthetic Route " + std::to_string(r + 1)});

        int n_stops = stops_dist(rng);
        double angle = 2 * kPi * r / cfg.n_routes + 0.05 * unit(rng);
        Polyline outbound_shape;
        for (int k = 0; k < n_stops; ++k) {
            double dist_mi = 0.2 + 0.35 * k;
            // slight meander so shapes cross multiple grid cells
            double wobble = 0.15 * std::sin(k * 0.9 + r);
            LatLon pos{center.lat + dist_mi * std::sin(angle) * mile_deg_lat + wobble * mile_deg_lat * 0.3,
                       center.lon + dist_mi * std::cos(angle) * mile_deg_lon + wobble * mile_deg_lon * 0.3};
            std::string sid = rid + "_s" + std::to_string(k + 1);
            city.gtfs.stops.push_back({sid, rid + " stop " + std::to_string(k + 1), pos});
            outbound_shape.push_back(pos);
        }
        Polyline inbound_shape(outbound_shape.rbegin(), outbound_shape.rend());
        city.gtfs.shapes["shape_" + rid + "_0"] = outbound_shape;
        city.gtfs.shapes["shape_" + rid + "_1"] = inbound_shape;

        // blocks: enough vehicles to sustain the drawn headway
        int headway = headway_dist(rng);
        int trip_minutes = (n_stops - 1) * cfg.dwell_minutes;
        int cycle = 2 * (trip_minutes + cfg.layover_minutes);
        int n_blocks = std::max(1, (cycle + headway - 1) / headway);
        for (int b = 0; b < n_blocks; ++b) {
            std::string block_id = rid + "_blk" + std::to_string(b + 1);
            int depart = cfg.service_start_minute + b * headway;
            int trip_no = 0;
            int direction = 0;
            while (depart + trip_minutes <= cfg.service_end_minute) {
                std::string trip_id = block_id + "_t" + std::to_string(++trip_no);
                city.gtfs.trips.push_back({trip_id, rid, gtfs_direction_name(direction ? "1" : "0"), block_id,
                                           "shape_" + rid + (direction ? "_1" : "_0")});
                for (int k = 0; k < n_stops; ++k) {
                    int idx = direction ? n_stops - 1 - k : k;
                    city.gtfs.stop_times.push_back({trip_id, rid + "_s" + std::to_string(idx + 1), k + 1,
                                                    int64_t(depart + k * cfg.dwell_minutes) * 60});
                }
                depart += trip_minutes + cfg.layover_minutes;
                direction ^= 1;
            }
        }
    }
    city.gtfs.rebuild_indices();

    // calendar: fixed civic holidays + school break windows
    for (int d = 0; d < cfg.n_days; ++d) {
        Date date = add_days(cfg.start_date, d);
        CivilDate c = civil_of(date);
        bool holiday = (c.month == 1 && c.day == 1) || (c.month == 7 && c.day == 4) ||
                       (c.month == 12 && c.day == 25) ||
                       (c.month == 11 && day_of_week(date) == 4 && c.day >= 22 && c.day <= 28);
        bool school_break = (c.month == 6) || (c.month == 7) || (c.month == 8 && c.day <= 15) ||
                            (c.month == 12 && c.day >= 20) || (c.month == 1 && c.day <= 5) ||
                            (c.month == 3 && c.day >= 8 && c.day <= 14);
        city.calendar.push_back({date, school_break, holiday});
        if (holiday) city.holidays.insert(date.days);
    }

    // weather: shared annual/diurnal cycles, per-station offsets, city-wide rain events
    std::vector<LatLon> stations;
    for (int s = 0; s < cfg.n_weather_stations; ++s) {
        double a = 2 * kPi * s / std::max(1, cfg.n_weather_stations);
        stations.push_back({center.lat + 3.0 * std::sin(a) * mile_deg_lat,
                            center.lon + 3.0 * std::cos(a) * mile_deg_lon});
    }
    std::normal_distribution<double> temp_noise(0.0, 1.2);
    std::exponential_distribution<double> rain_intensity(0.6);
    for (int d = 0; d < cfg.n_days + 1; ++d) {  // +1 day covers service past midnight
        Date date = add_days(cfg.start_date, d);
        CivilDate c = civil_of(date);
        int doy = date.days - make_date(c.year, 1, 1).days;
        synth_detail::RainEvent rain;
        if (unit(rng) < cfg.p_rain_day) {
            rain.start_hour = int(unit(rng) * 18);
            rain.duration = 2 + int(unit(rng) * 6);
            rain.intensity = 0.5 + rain_intensity(rng);
        }
        for (int h = 0; h < 24; ++h) {
            double annual = 15.0 - 12.0 * std::cos(2 * kPi * (doy - 15) / 365.0);
            double diurnal = 5.0 * std::sin(2 * kPi * (h - 9) / 24.0);
            bool raining = rain.duration > 0 && h >= rain.start_hour && h < rain.start_hour + rain.duration;
            double mmh = raining ? rain.intensity : 0.0;
            if (raining)
                city.rain_mmh_by_hour[format_date(date) + "T" + std::to_string(h)] = mmh;
            for (int s = 0; s < cfg.n_weather_stations; ++s) {
                WeatherObservation w;
                w.station_id = "sta" + std::to_string(s + 1);
                w.position = stations[size_t(s)];
                w.timestamp = make_timestamp(date, int64_t(h) * 3600);
                w.temperature = annual + diurnal + 0.4 * s + temp_noise(rng);
                double hum = 0.55 + 0.2 * std::sin(2 * kPi * (doy + 40) / 365.0) + (raining ? 0.2 : 0.0) +
                             0.05 * temp_noise(rng);
                w.humidity = std::min(0.98, std::max(0.05, hum));
                w.precipitation = mmh;
                city.weather.push_back(std::move(w));
            }
        }
    }

    // traffic: one segment per route direction, two readings per 5-minute slot
    // span of the service day; rush-hour dips
    std::uniform_real_distribution<double> ff_dist(28.0, 46.0);
    std::normal_distribution<double> speed_noise(0.0, 2.0);
    std::vector<double> free_flow;
    for (const auto& [shape_id, line] : city.gtfs.shapes) {
        city.traffic_segments.push_back({"seg_" + shape_id, line});
        free_flow.push_back(ff_dist(rng));
    }
    int slot_lo = (cfg.service_start_minute / 5) * 5;
    int slot_hi = ((cfg.service_end_minute + 9) / 5) * 5;
    for (int d = 0; d < cfg.n_days; ++d) {
        Date date = add_days(cfg.start_date, d);
        for (int minute = slot_lo; minute <= slot_hi; minute += 5) {
            int hour = (minute / 60) % 24;
            double rush = 1.0;
            if (hour >= 7 && hour < 9) rush = 0.62;
            if (hour >= 16 && hour < 18) rush = 0.58;
            for (size_t s = 0; s < city.traffic_segments.size(); ++s) {
                if (unit(rng) < cfg.p_traffic_gap) continue;
                double speed = std::max(3.0, free_flow[s] * rush + speed_noise(rng));
                city.traffic_readings.push_back(
                    {city.traffic_segments[s].segment_id, make_timestamp(date, int64_t(minute) * 60), speed});
            }
        }
    }

    // schedule-static lookups shared by every simulated day
    for (size_t i = 0; i < city.gtfs.stop_times.size(); ++i)
        city.trip_stop_times[city.gtfs.stop_times[i].trip_id].push_back(i);
    city.scheduled_headway_s.assign(city.gtfs.stop_times.size(), 0.0);
    {
        std::unordered_map<std::string, std::vector<std::pair<int64_t, size_t>>> arrivals_by_key;
        for (size_t i = 0; i < city.gtfs.stop_times.size(); ++i) {
            const auto& st = city.gtfs.stop_times[i];
            const GtfsTrip* trip = city.gtfs.find_trip(st.trip_id);
            arrivals_by_key[trip->route_id + "|" + trip->direction + "|" + st.stop_id].push_back(
                {st.scheduled_arrival, i});
        }
        for (auto& [key, v] : arrivals_by_key) {
            std::sort(v.begin(), v.end());
            for (size_t i = 1; i < v.size(); ++i)
                city.scheduled_headway_s[v[i].second] = double(v[i].first - v[i - 1].first);
        }
    }
    return city;
}

namespace synth_detail {

// Spread service-day minutes across civic hours; minute may exceed 1440.
inline int hour_of_service_minute(int minute) { return (minute / 60) % 24; }

}  // namespace synth_detail

// Ground-truth demand for one (route, stop-time) slot; exposed so tests can
// compare generator output against the analytic rate.
inline double demand_rate(const SynthCity& city, int route_index, Date date, int64_t second_of_service_day) {
    const SynthConfig& cfg = city.config;
    Timestamp ts = make_timestamp(date, second_of_service_day);
    Date civil_date = date_of(ts);
    CivilDate c = civil_of(civil_date);
    int hour = seconds_since_midnight(ts) / 3600;
    double rate = city.route_base_rates[size_t(route_index)];
    rate *= cfg.hour_curve[size_t(hour)];
    rate *= cfg.month_curve[size_t(c.month - 1)];
    if (city.holidays.count(civil_date.days)) rate *= cfg.holiday_multiplier;
    auto it = city.rain_mmh_by_hour.find(format_date(civil_date) + "T" + std::to_string(hour));
    if (it != city.rain_mmh_by_hour.end() && it->second > 0) rate *= cfg.rain_dampening;
    return rate;
}

// One service day of ground-truth stop events. Loads are running sums of
// ons - offs, never negative, zero at trip end when the trip demands it.
inline std::vector<ApcRecord> simulate_service_day(const SynthCity& city, Date date, std::mt19937_64& rng) {
    const SynthConfig& cfg = city.config;
    std::vector<ApcRecord> out;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> delay_noise(0.0, cfg.arrival_delay_sd_s);

    for (const auto& trip : city.gtfs.trips) {
        const auto& sts = city.trip_stop_times.at(trip.trip_id);
        int n = int(sts.size());
        int route_idx = city.route_index.at(trip.route_id);
        bool zero_end = unit(rng) < cfg.p_zero_load_at_trip_end;

        std::vector<int> ons, offs, loads;
        ons.resize(size_t(n));
        offs.resize(size_t(n));
        loads.resize(size_t(n));
        int load = 0;
        long sum_ons = 0, sum_offs = 0;
        for (int k = 0; k < n; ++k) {
            const GtfsStopTime& st = city.gtfs.stop_times[sts[size_t(k)]];
            double rate = demand_rate(city, route_idx, date, st.scheduled_arrival);
            int on = 0;
            if (k < n - 1) {
                std::poisson_distribution<int> pois(rate);
                on = pois(rng);
            }
            int off = 0;
            if (k == n - 1) {
                if (zero_end) {
                    off = load;
                } else {
                    std::binomial_distribution<int> bin(load, 0.8);
                    off = bin(rng);
                }
            } else if (k > 0 && load > 0) {
                double p_off = 0.15 + 0.55 * double(k) / n;
                std::binomial_distribution<int> bin(load, p_off);
                off = bin(rng);
            }
            load += on - off;
            ons[size_t(k)] = on;
            offs[size_t(k)] = off;
            loads[size_t(k)] = load;
            sum_ons += on;
            sum_offs += off;
        }
        // keep clean trips inside the ons/offs balance tolerance: leftover
        // occupants may be at most 20% of total boardings
        long leftover = sum_ons - sum_offs;
        long allowed = long(0.2 * double(std::max({sum_ons, sum_offs, 1l})));
        if (leftover > allowed) {
            int extra = int(leftover - allowed);
            offs[size_t(n - 1)] += extra;
            loads[size_t(n - 1)] -= extra;
        }

        double delay = std::max(0.0, delay_noise(rng));
        int64_t prev_arrival = 0;
        for (int k = 0; k < n; ++k) {
            size_t sti = sts[size_t(k)];
            const GtfsStopTime& st = city.gtfs.stop_times[sti];
            ApcRecord rec;
            rec.transit_date = date;
            rec.trip_id = trip.trip_id;
            rec.block_id = trip.block_id;
            rec.route_id = trip.route_id;
            rec.direction = trip.direction;
            rec.vehicle_id = "veh_" + trip.block_id;
            rec.stop_id = st.stop_id;
            rec.stop_sequence = st.stop_sequence;
            rec.scheduled_arrival = make_timestamp(date, st.scheduled_arrival);
            delay = std::max(0.0, delay + delay_noise(rng) * 0.3);
            int64_t arrival = std::max(rec.scheduled_arrival.seconds + int64_t(delay), prev_arrival + 5);
            prev_arrival = arrival;
            rec.actual_arrival = Timestamp{arrival};
            rec.ons = ons[size_t(k)];
            rec.offs = offs[size_t(k)];
            rec.load = loads[size_t(k)];
            rec.scheduled_headway = city.scheduled_headway_s[sti];
            rec.zero_load_at_trip_end = zero_end;
            out.push_back(std::move(rec));
        }
    }
    return out;
}

namespace synth_detail {

struct TripSlice {
    size_t begin = 0, end = 0;  // record range, contiguous per trip
};

inline std::vector<TripSlice> slice_trips(const std::vector<ApcRecord>& records) {
    std::vector<TripSlice> slices;
    size_t i = 0;
    while (i < records.size()) {
        size_t j = i + 1;
        while (j < records.size() && records[j].trip_id == records[i].trip_id &&
               records[j].transit_date == records[i].transit_date &&
               records[j].stop_sequence > records[j - 1].stop_sequence)
            ++j;
        slices.push_back({i, j});
        i = j;
    }
    return slices;
}

inline std::pair<long, long> count_sums(const std::vector<ApcRecord>& records, TripSlice s) {
    long sum_ons = 0, sum_offs = 0;
    for (size_t i = s.begin; i < s.end; ++i) {
        if (records[i].ons) sum_ons += *records[i].ons;
        if (records[i].offs) sum_offs += *records[i].offs;
    }
    return {sum_ons, sum_offs};
}

}  // namespace synth_detail

// Applies APC-style corruption. Exactly the returned log's trips violate a
// cleaning rule afterwards; benign count noise is rebalanced so it never
// pushes an unlogged trip over a rule threshold.
inline std::pair<std::vector<ApcRecord>, CorruptionLog> inject_noise(std::vector<ApcRecord> records,
                                                                     const NoiseConfig& noise,
                                                                     std::mt19937_64& rng) {
    CorruptionLog log;
    auto slices = synth_detail::slice_trips(records);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // benign noise first, then rule-targeted corruption
    if (noise.count_noise_sd > 0) {
        std::normal_distribution<double> cn(0.0, noise.count_noise_sd);
        for (auto s : slices) {
            for (size_t i = s.begin; i < s.end; ++i) {
                if (records[i].ons) records[i].ons = std::max(0, *records[i].ons + int(std::lround(cn(rng))));
                if (records[i].offs) records[i].offs = std::max(0, *records[i].offs + int(std::lround(cn(rng))));
            }
            // rebalance so the imbalance rule cannot fire on a benign trip
            auto [sum_ons, sum_offs] = synth_detail::count_sums(records, s);
            long hi = std::max({sum_ons, sum_offs, 1l});
            long diff = sum_ons - sum_offs;
            long allowed = long(0.2 * double(hi));
            if (std::abs(diff) > allowed) {
                long excess = std::abs(diff) - allowed;
                for (size_t i = s.end; i-- > s.begin && excess > 0;) {
                    auto& field = diff > 0 ? records[i].offs : records[i].ons;
                    if (!field) continue;
                    // raising the smaller sum shrinks the gap without
                    // touching the max() denominator
                    int add = int(std::min<long>(excess, 1000));
                    field = *field + add;
                    excess -= add;
                }
            }
        }
    }

    std::vector<size_t> duplicate_slices;
    for (size_t si = 0; si < slices.size(); ++si) {
        auto s = slices[si];
        auto& first = records[s.begin];
        const char* rule = nullptr;
        if (unit(rng) < noise.p_large_negative_load)
            rule = "R1";
        else if (unit(rng) < noise.p_count_imbalance)
            rule = "R2";
        else if (unit(rng) < noise.p_null_arrivals)
            rule = "R3";
        else if (unit(rng) < noise.p_null_offs)
            rule = "R4";
        else if (unit(rng) < noise.p_shuffle_sequence)
            rule = "R6";
        else if (unit(rng) < noise.p_duplicate_trip) {
            duplicate_slices.push_back(si);
            continue;
        }
        if (!rule) continue;

        size_t n = s.end - s.begin;
        if (std::string_view(rule) == "R1") {
            size_t k = s.begin + rng() % n;
            records[k].load = -6 - int(rng() % 45);
        } else if (std::string_view(rule) == "R2") {
            // inflate boardings until the imbalance ratio clears 0.2
            for (int guard = 0; guard < 64; ++guard) {
                auto [sum_ons, sum_offs] = synth_detail::count_sums(records, s);
                long hi = std::max({sum_ons, sum_offs, 1l});
                if (std::abs(sum_ons - sum_offs) > long(0.25 * double(hi)) &&
                    double(std::abs(sum_ons - sum_offs)) > 0.2 * double(hi) + 1.0)
                    break;
                auto& field = records[s.begin].ons;
                field = (field ? *field : 0) + std::max<long>(3, hi / 3);
            }
        } else if (std::string_view(rule) == "R3") {
            for (size_t i = s.begin; i < s.end; ++i) records[i].actual_arrival.reset();
        } else if (std::string_view(rule) == "R4") {
            for (size_t i = s.begin; i < s.end; ++i) records[i].offs.reset();
        } else {  // R6: swap two adjacent arrivals out of order
            if (n < 2) continue;
            size_t k = s.begin + rng() % (n - 1);
            if (records[k].actual_arrival && records[k + 1].actual_arrival) {
                if (*records[k].actual_arrival == *records[k + 1].actual_arrival)
                    records[k + 1].actual_arrival = Timestamp{records[k + 1].actual_arrival->seconds + 30};
                std::swap(records[k].actual_arrival, records[k + 1].actual_arrival);
            } else {
                continue;
            }
        }
        log.entries.push_back({first.transit_date, first.trip_id, 0, rule});
    }

    // duplicates appended at the end of their service date, exact copies
    std::sort(duplicate_slices.begin(), duplicate_slices.end());
    std::vector<ApcRecord> result;
    result.reserve(records.size());
    std::unordered_map<int32_t, std::vector<size_t>> dup_by_date;
    for (size_t si : duplicate_slices)
        dup_by_date[records[slices[si].begin].transit_date.days].push_back(si);

    size_t si = 0;
    for (size_t i = 0; i < records.size();) {
        int32_t date = records[i].transit_date.days;
        size_t day_end = i;
        while (day_end < records.size() && records[day_end].transit_date.days == date) ++day_end;
        result.insert(result.end(), records.begin() + long(i), records.begin() + long(day_end));
        auto it = dup_by_date.find(date);
        if (it != dup_by_date.end()) {
            for (size_t dsi : it->second) {
                auto s = slices[dsi];
                result.insert(result.end(), records.begin() + long(s.begin), records.begin() + long(s.end));
                log.entries.push_back({records[s.begin].transit_date, records[s.begin].trip_id, 1, "R5"});
            }
        }
        i = day_end;
        (void)si;
    }
    return {std::move(result), std::move(log)};
}

inline void write_corruption_log(const std::string& path, const CorruptionLog& log,
                                 const std::vector<std::string>& comments = {}) {
    csv::Writer w(path);
    for (const auto& c : comments) w.comment(c);
    w.row({"transit_date", "trip_id", "occurrence", "rule"});
    for (const auto& e : log.entries)
        w.row({format_date(e.transit_date), e.trip_id, csv::fmt(e.occurrence), e.rule});
}

inline CorruptionLog read_corruption_log(const std::string& path) {
    csv::Reader r(path);
    int c_date = r.require_column("transit_date");
    int c_trip = r.require_column("trip_id");
    int c_occ = r.require_column("occurrence");
    int c_rule = r.require_column("rule");
    CorruptionLog log;
    std::vector<std::string> row;
    while (r.next(row)) {
        auto d = parse_date(row[size_t(c_date)]);
        auto occ = csv::to_int(row[size_t(c_occ)]);
        if (!d || !occ) throw IngestError(path + ": bad corruption log row");
        log.entries.push_back({*d, row[size_t(c_trip)], int(*occ), row[size_t(c_rule)]});
    }
    return log;
}

}  // namespace tlf
