#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Minimal CSV layer shared by all file formats in the toolkit.
// Quoted fields (embedded commas, quotes, newlines) are supported; CRLF is
// tolerated. Leading lines starting with '#' are provenance comments and are
// skipped by the reader.

namespace tlf::csv {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class Reader {
  public:
    explicit Reader(const std::string& path) : path_(path), in_(path, std::ios::binary) {
        if (!in_) throw Error("cannot open file: " + path);
        std::string line;
        while (peek_comment()) {
            read_physical_line(line);
            comments_.push_back(line);
        }
        std::vector<std::string> hdr;
        if (!next(hdr)) throw Error("empty file (no header row): " + path);
        header_ = std::move(hdr);
        data_row_ = 0;
    }

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::string>& comments() const { return comments_; }
    const std::string& path() const { return path_; }

    // Index of a header column, or -1.
    int column(std::string_view name) const {
        for (size_t i = 0; i < header_.size(); ++i)
            if (header_[i] == name) return int(i);
        return -1;
    }

    int require_column(std::string_view name) const {
        int c = column(name);
        if (c < 0) throw Error(path_ + ": missing mandatory column '" + std::string(name) + "'");
        return c;
    }

    // Reads the next record into `fields` (reused between calls).
    // Returns false at end of file. Blank lines are skipped.
    bool next(std::vector<std::string>& fields) {
        fields.clear();
        int ch = in_.get();
        while (ch == '\r' || ch == '\n') ch = in_.get();
        if (ch == EOF) return false;
        ++data_row_;
        std::string field;
        bool quoted = false;
        while (true) {
            if (quoted) {
                if (ch == EOF) throw Error(path_ + ": unterminated quoted field");
                if (ch == '"') {
                    int nxt = in_.get();
                    if (nxt == '"') {
                        field.push_back('"');
                    } else {
                        quoted = false;
                        ch = nxt;
                        continue;
                    }
                } else {
                    field.push_back(char(ch));
                }
            } else {
                if (ch == EOF || ch == '\n') {
                    if (!field.empty() && field.back() == '\r') field.pop_back();
                    fields.push_back(std::move(field));
                    return true;
                }
                if (ch == '"' && field.empty()) {
                    quoted = true;
                } else if (ch == ',') {
                    fields.push_back(std::move(field));
                    field.clear();
                } else {
                    field.push_back(char(ch));
                }
            }
            ch = in_.get();
        }
    }

    // 1-based index of the last record returned by next().
    size_t data_row() const { return data_row_; }

  private:
    bool peek_comment() { return in_.peek() == '#'; }

    void read_physical_line(std::string& line) {
        std::getline(in_, line);
        if (!line.empty() && line.back() == '\r') line.pop_back();
    }

    std::string path_;
    std::ifstream in_;
    std::vector<std::string> header_;
    std::vector<std::string> comments_;
    size_t data_row_ = 0;
};

class Writer {
  public:
    explicit Writer(const std::string& path) : path_(path), out_(path, std::ios::binary) {
        if (!out_) throw Error("cannot open file for writing: " + path);
    }

    // Must be emitted before the header row.
    void comment(std::string_view text) {
        out_ << '#' << text << '\n';
    }

    void row(const std::vector<std::string>& fields) {
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            write_field(fields[i]);
        }
        out_ << '\n';
    }

    const std::string& path() const { return path_; }

  private:
    void write_field(const std::string& f) {
        bool needs_quote = f.find_first_of(",\"\n\r") != std::string::npos;
        if (!needs_quote) {
            out_ << f;
            return;
        }
        out_ << '"';
        for (char c : f) {
            if (c == '"') out_ << '"';
            out_ << c;
        }
        out_ << '"';
    }

    std::string path_;
    std::ofstream out_;
};

inline std::optional<int64_t> to_int(std::string_view s) {
    if (s.empty()) return std::nullopt;
    int64_t v;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::optional<double> to_double(std::string_view s) {
    if (s.empty()) return std::nullopt;
    double v;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

// Shortest round-trip representation; deterministic across runs.
inline std::string fmt(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

inline std::string fmt(int64_t v) {
    char buf[24];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

inline std::string fmt(int v) { return fmt(int64_t(v)); }

}  // namespace tlf::csv
