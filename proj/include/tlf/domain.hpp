#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "tlf/time.hpp"

// Core vocabulary shared by every pipeline stage. All types here are plain
// immutable values and safe to hand between worker threads.

namespace tlf {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class BinScheme { Trip, Stop };

// Occupancy classes are ordinal: evaluation subtracts levels directly.
enum class BinLevel : int { Low = 0, Medium = 1, MediumHigh = 2, High = 3, VeryHigh = 4 };

constexpr int kBinCount = 5;

struct LoadBin {
    BinLevel level = BinLevel::Low;
    BinScheme scheme = BinScheme::Trip;

    int value() const { return static_cast<int>(level); }
    auto operator<=>(const LoadBin&) const = default;
};

inline const char* bin_name(BinLevel level) {
    switch (level) {
        case BinLevel::Low: return "Low";
        case BinLevel::Medium: return "Medium";
        case BinLevel::MediumHigh: return "Medium-High";
        case BinLevel::High: return "High";
        case BinLevel::VeryHigh: return "Very-High";
    }
    return "?";
}

// Trip-level scheme: Low <=6, Medium 7-12, Medium-High 13-54, High 55-75, Very-High >=76.
inline LoadBin bin_trip_load(int load) {
    if (load < 0) throw std::domain_error("bin_trip_load: negative load (clean before binning)");
    BinLevel level;
    if (load <= 6)
        level = BinLevel::Low;
    else if (load <= 12)
        level = BinLevel::Medium;
    else if (load <= 54)
        level = BinLevel::MediumHigh;
    else if (load <= 75)
        level = BinLevel::High;
    else
        level = BinLevel::VeryHigh;
    return LoadBin{level, BinScheme::Trip};
}

// Stop-level scheme: Low <=5, Medium 6-11, Medium-High 12-16, High 17-29, Very-High >=30.
inline LoadBin bin_stop_load(int load) {
    if (load < 0) throw std::domain_error("bin_stop_load: negative load (clean before binning)");
    BinLevel level;
    if (load <= 5)
        level = BinLevel::Low;
    else if (load <= 11)
        level = BinLevel::Medium;
    else if (load <= 16)
        level = BinLevel::MediumHigh;
    else if (load <= 29)
        level = BinLevel::High;
    else
        level = BinLevel::VeryHigh;
    return LoadBin{level, BinScheme::Stop};
}

inline LoadBin bin_load(int load, BinScheme scheme) {
    return scheme == BinScheme::Trip ? bin_trip_load(load) : bin_stop_load(load);
}

// Fixed-width time-of-day bucket; index = floor(minutes-since-midnight / width).
inline int time_window_of(Timestamp ts, int width_minutes) {
    if (width_minutes <= 0) throw ConfigError("time window width must be positive");
    return minutes_since_midnight(ts) / width_minutes;
}

inline int windows_per_day(int width_minutes) {
    if (width_minutes <= 0) throw ConfigError("time window width must be positive");
    return (1440 + width_minutes - 1) / width_minutes;
}

enum class LowHigh { Low, High };

// Low/high discrimination on raw occupants: 0-11 low, >=12 high.
inline LowHigh low_high_of(int load) { return load <= 11 ? LowHigh::Low : LowHigh::High; }

// At bin granularity {Low, Medium} map low, the rest high. The trip Medium
// bin (7-12) straddles the 11/12 cut; 5 of its 6 values are <=11 so it maps low.
inline LowHigh low_high_of(LoadBin bin) {
    return bin.level <= BinLevel::Medium ? LowHigh::Low : LowHigh::High;
}

// One stop-event log line as exported by the counting system. Raw rows may
// violate every invariant; `clean` is set only by the cleaning stage.
struct ApcRecord {
    Date transit_date;
    std::string trip_id;
    std::string block_id;
    std::string route_id;
    std::string direction;
    std::string vehicle_id;
    std::string stop_id;
    int stop_sequence = 0;  // 1-based within trip
    Timestamp scheduled_arrival;
    std::optional<Timestamp> actual_arrival;
    std::optional<int> ons;
    std::optional<int> offs;
    std::optional<int> load;  // occupancy after this stop
    double scheduled_headway = 0;  // seconds
    bool zero_load_at_trip_end = false;
    bool clean = false;

    bool operator==(const ApcRecord&) const = default;
};

struct TripKey {
    Date transit_date;
    std::string trip_id;
    std::string route_id;
    std::string direction;
    int time_window = 0;

    auto operator<=>(const TripKey&) const = default;
};

// Per-trip fused feature row; target is maximum load over the trip.
struct TripAggregate {
    TripKey key;
    std::string block_id;
    std::string vehicle_id;
    int n_stops = 0;
    Timestamp first_scheduled;
    std::optional<double> mean_temperature;
    std::optional<double> mean_humidity;
    std::optional<double> mean_precipitation;
    double mean_scheduled_headway = 0;
    std::optional<double> mean_actual_headway;
    std::optional<double> mean_traffic_speed;
    int max_load = 0;
    LoadBin target_bin{BinLevel::Low, BinScheme::Trip};
    bool is_holiday = false;
    bool is_school_break = false;
    int year = 0, month = 0, day = 0, hour = 0;
    int day_of_week = 0;  // 0 = Sunday
};

// Grouped per-(date, route, direction, stop, window) row; target is summed load.
struct StopObservation {
    Date transit_date;
    std::string route_id;
    std::string direction;
    std::string stop_id;
    int stop_sequence = 0;
    int time_window = 0;
    int summed_load = 0;
    LoadBin target_bin{BinLevel::Low, BinScheme::Stop};
    std::optional<double> temperature;
    std::optional<double> humidity;
    std::optional<double> precipitation;
    std::optional<double> traffic_speed;
    std::optional<double> actual_headway;
    double scheduled_headway = 0;
    bool is_holiday = false;
    bool is_school_break = false;
    bool zero_load_at_trip_end = false;
    int year = 0, month = 0, day = 0, hour = 0;
    int day_of_week = 0;
    // ordering hints for sequence reconstruction
    std::string block_id;
    Timestamp first_scheduled;
};

struct EvalRecord {
    int y_true = 0;  // bin level
    int y_pred = 0;

    int error() const { return y_true - y_pred; }
};

}  // namespace tlf
