#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tlf/csv.hpp"
#include "tlf/domain.hpp"

// Trip-level validity rules. An entry tripping any rule invalidates the
// whole trip it belongs to; invalid trips are dropped, never repaired.

namespace tlf {

enum class Rule : int { R1 = 0, R2, R3, R4, R5, R6 };

struct ValidityRule {
    const char* id;
    const char* description;
};

inline const std::array<ValidityRule, 6>& validity_rules() {
    static const std::array<ValidityRule, 6> rules = {{
        {"R1", "recorded occupancy below the negative threshold"},
        {"R2", "ons/offs imbalance ratio above threshold"},
        {"R3", "all actual arrival times null"},
        {"R4", "all offs null"},
        {"R5", "entire trip duplicates a prior trip"},
        {"R6", "stop entries out of chronological sequence"},
    }};
    return rules;
}

struct RuleMask {
    uint8_t bits = 0;

    void add(Rule r) { bits |= uint8_t(1u << int(r)); }
    bool contains(Rule r) const { return bits & (1u << int(r)); }
    bool any() const { return bits != 0; }

    std::string names() const {
        std::string s;
        for (int i = 0; i < 6; ++i)
            if (bits & (1u << i)) {
                if (!s.empty()) s.push_back('+');
                s += validity_rules()[size_t(i)].id;
            }
        return s;
    }

    bool operator==(const RuleMask&) const = default;
};

struct CleanConfig {
    double r1_load_threshold = -5.0;  // R1 fires on load strictly below this
    double r2_imbalance_threshold = 0.2;
};

// One observed traversal. Duplicate uploads share (date, trip_id); they are
// told apart by stop_sequence resets in file order, numbered as occurrences.
struct TripInstance {
    Date transit_date;
    std::string trip_id;
    int occurrence = 0;
    std::vector<size_t> rows;  // record indices in file order
};

inline std::vector<TripInstance> group_trip_instances(const std::vector<ApcRecord>& records) {
    std::map<std::pair<int32_t, std::string>, std::vector<size_t>> groups;
    for (size_t i = 0; i < records.size(); ++i)
        groups[{records[i].transit_date.days, records[i].trip_id}].push_back(i);

    std::vector<TripInstance> out;
    for (auto& [key, rows] : groups) {
        TripInstance cur;
        cur.transit_date = Date{key.first};
        cur.trip_id = key.second;
        cur.occurrence = 0;
        for (size_t k = 0; k < rows.size(); ++k) {
            if (!cur.rows.empty() &&
                records[rows[k]].stop_sequence <= records[cur.rows.back()].stop_sequence) {
                out.push_back(cur);
                int next_occ = cur.occurrence + 1;
                cur.rows.clear();
                cur.occurrence = next_occ;
            }
            cur.rows.push_back(rows[k]);
        }
        out.push_back(std::move(cur));
    }
    // deterministic processing order: by date, then first record position
    std::sort(out.begin(), out.end(), [](const TripInstance& a, const TripInstance& b) {
        if (a.transit_date != b.transit_date) return a.transit_date < b.transit_date;
        return a.rows.front() < b.rows.front();
    });
    return out;
}

// Content rules R1-R4 and R6; R5 needs cross-trip state and lives in
// filter_trips. Records are re-ordered by stop_sequence internally.
inline RuleMask classify_trip_content(const std::vector<ApcRecord>& records,
                                      const std::vector<size_t>& rows, const CleanConfig& cfg = {}) {
    RuleMask mask;
    if (rows.empty()) {  // no observations: treat as all-null arrivals
        mask.add(Rule::R3);
        return mask;
    }
    std::vector<size_t> order(rows);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return records[a].stop_sequence < records[b].stop_sequence;
    });

    long sum_ons = 0, sum_offs = 0;
    bool any_arrival = false, any_off = false;
    int64_t last_arrival = INT64_MIN;
    bool out_of_order = false;
    for (size_t i : order) {
        const ApcRecord& r = records[i];
        if (r.load && double(*r.load) < cfg.r1_load_threshold) mask.add(Rule::R1);
        if (r.ons) sum_ons += *r.ons;
        if (r.offs) {
            any_off = true;
            sum_offs += *r.offs;
        }
        if (r.actual_arrival) {
            any_arrival = true;
            if (r.actual_arrival->seconds < last_arrival) out_of_order = true;
            last_arrival = r.actual_arrival->seconds;
        }
    }
    double hi = double(std::max({sum_ons, sum_offs, 1l}));
    if (double(std::abs(sum_ons - sum_offs)) / hi > cfg.r2_imbalance_threshold) mask.add(Rule::R2);
    if (!any_arrival) mask.add(Rule::R3);
    if (!any_off) mask.add(Rule::R4);
    if (out_of_order) mask.add(Rule::R6);
    return mask;
}

// Spec'd entry point for a single already-grouped trip.
inline RuleMask classify_trip(std::span<const ApcRecord> trip, const CleanConfig& cfg = {}) {
    std::vector<ApcRecord> recs(trip.begin(), trip.end());
    std::vector<size_t> rows(recs.size());
    std::iota(rows.begin(), rows.end(), size_t(0));
    return classify_trip_content(recs, rows, cfg);
}

namespace clean_detail {

// R5 payload identity: (stop_id, stop_sequence, ons, offs, scheduled_arrival)
inline std::string payload_key(const std::vector<ApcRecord>& records, const std::vector<size_t>& rows) {
    std::string key;
    for (size_t i : rows) {
        const ApcRecord& r = records[i];
        key += r.stop_id;
        key.push_back('|');
        key += csv::fmt(r.stop_sequence);
        key.push_back('|');
        key += r.ons ? csv::fmt(*r.ons) : std::string("-");
        key.push_back('|');
        key += r.offs ? csv::fmt(*r.offs) : std::string("-");
        key.push_back('|');
        key += csv::fmt(r.scheduled_arrival.seconds);
        key.push_back(';');
    }
    return key;
}

}  // namespace clean_detail

struct RejectedTrip {
    Date transit_date;
    std::string trip_id;
    int occurrence = 0;
    RuleMask rules;
};

struct CleanReport {
    std::array<size_t, 6> rejected_by_rule{};  // a trip counts under every rule it violates
    size_t trips_in = 0;
    size_t trips_out = 0;
    size_t rejected_trips = 0;  // unique trips
    size_t records_in = 0;
    size_t records_out = 0;
    size_t clamp_events = 0;  // negative running loads clamped by derive_load

    double fraction_clean() const { return trips_in ? double(trips_out) / double(trips_in) : 1.0; }
};

// load_k = max(0, sum_{j<=k} (ons_j - offs_j)); null counts contribute 0.
// Returns the number of clamped stops.
inline size_t derive_load(std::vector<ApcRecord>& records, const std::vector<size_t>& rows) {
    long running = 0;
    size_t clamps = 0;
    for (size_t i : rows) {
        ApcRecord& r = records[i];
        running += (r.ons ? *r.ons : 0) - (r.offs ? *r.offs : 0);
        if (running < 0) {
            running = 0;
            ++clamps;
        }
        r.load = int(running);
    }
    return clamps;
}

struct CleanResult {
    std::vector<ApcRecord> records;  // surviving trips, loads re-derived, clean flag set
    CleanReport report;
    std::vector<RejectedTrip> rejected;
};

inline CleanResult filter_trips(const std::vector<ApcRecord>& raw, const CleanConfig& cfg = {}) {
    CleanResult out;
    out.report.records_in = raw.size();
    auto instances = group_trip_instances(raw);
    out.report.trips_in = instances.size();

    // R5: payload seen earlier the same date (file order decides "earlier")
    std::unordered_map<int32_t, std::unordered_map<std::string, bool>> seen_by_date;

    std::vector<ApcRecord> mutable_records(raw);
    std::vector<const TripInstance*> keep;
    for (const auto& inst : instances) {
        RuleMask mask = classify_trip_content(mutable_records, inst.rows, cfg);
        std::string payload = clean_detail::payload_key(mutable_records, inst.rows);
        auto& seen = seen_by_date[inst.transit_date.days];
        std::string dedup_key = inst.trip_id + "\x1f" + payload;
        if (seen.count(dedup_key))
            mask.add(Rule::R5);
        else
            seen.emplace(dedup_key, true);

        if (mask.any()) {
            ++out.report.rejected_trips;
            for (int r = 0; r < 6; ++r)
                if (mask.contains(Rule(r))) ++out.report.rejected_by_rule[size_t(r)];
            out.rejected.push_back({inst.transit_date, inst.trip_id, inst.occurrence, mask});
        } else {
            keep.push_back(&inst);
        }
    }

    out.report.trips_out = keep.size();
    for (const TripInstance* inst : keep) {
        out.report.clamp_events += derive_load(mutable_records, inst->rows);
        for (size_t i : inst->rows) {
            ApcRecord rec = mutable_records[i];
            rec.clean = true;
            out.records.push_back(std::move(rec));
        }
    }
    out.report.records_out = out.records.size();
    return out;
}

inline void write_clean_report_csv(const std::string& path, const CleanReport& rep,
                                   const std::vector<std::string>& comments = {}) {
    csv::Writer w(path);
    for (const auto& c : comments) w.comment(c);
    w.row({"key", "value"});
    for (size_t i = 0; i < 6; ++i)
        w.row({validity_rules()[i].id, csv::fmt(int64_t(rep.rejected_by_rule[i]))});
    w.row({"trips_in", csv::fmt(int64_t(rep.trips_in))});
    w.row({"trips_out", csv::fmt(int64_t(rep.trips_out))});
    w.row({"rejected_trips", csv::fmt(int64_t(rep.rejected_trips))});
    w.row({"records_in", csv::fmt(int64_t(rep.records_in))});
    w.row({"records_out", csv::fmt(int64_t(rep.records_out))});
    w.row({"clamp_events", csv::fmt(int64_t(rep.clamp_events))});
    w.row({"fraction_clean", csv::fmt(rep.fraction_clean())});
}

}  // namespace tlf
