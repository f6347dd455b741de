#include "citesim/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>

namespace citesim {

InputFormatError::InputFormatError(std::string source, std::size_t line, const std::string& what)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " +
                         what),
      source_(std::move(source)),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    s = trim(s);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

bool skippable(std::string_view line) {
    const auto t = trim(line);
    return t.empty() || t.front() == '#';
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputFormatError(path.string(), 0, "cannot open file");
    return in;
}

std::vector<std::string> split_fields(std::string_view line, const std::string& source,
                                      std::size_t line_no) {
    try {
        return split_csv_line(trim(line));
    } catch (const std::invalid_argument& e) {
        throw InputFormatError(source, line_no, e.what());
    }
}

// Reads to the header row; returns its fields and leaves `line_no` on it.
std::vector<std::string> read_header(std::istream& in, const std::string& source,
                                     std::size_t& line_no) {
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (skippable(line)) continue;
        auto fields = split_fields(line, source, line_no);
        for (auto& f : fields) f = std::string(trim(f));
        return fields;
    }
    throw InputFormatError(source, line_no, "missing header");
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    if (quoted) throw std::invalid_argument("unterminated quoted field");
    fields.push_back(std::move(field));
    return fields;
}

EmpiricalDiscrete parse_citation_counts(std::istream& in, const std::string& source) {
    std::size_t line_no = 0;
    const auto header = read_header(in, source, line_no);
    if (header != std::vector<std::string>{"citations", "count"}) {
        throw InputFormatError(source, line_no, "expected header 'citations,count'");
    }

    std::vector<ValueCount> rows;
    std::vector<std::size_t> row_lines;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        const auto fields = split_fields(line, source, line_no);
        if (fields.size() != 2) {
            throw InputFormatError(source, line_no, "expected two comma-separated fields");
        }
        const auto value = parse_int(fields[0]);
        const auto count = parse_int(fields[1]);
        if (!value || *value < 0) {
            throw InputFormatError(source, line_no, "citations must be a nonnegative integer");
        }
        if (!count) throw InputFormatError(source, line_no, "count must be an integer");
        if (*count < 1) throw InputFormatError(source, line_no, "count must be positive");
        rows.push_back({*value, *count});
        row_lines.push_back(line_no);
    }
    if (rows.empty()) throw InputFormatError(source, line_no, "no data rows");

    // Report the second occurrence of a repeated value.
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rows[a].value < rows[b].value; });
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (rows[order[k]].value == rows[order[k - 1]].value) {
            throw InputFormatError(source, row_lines[order[k]],
                                   "duplicate citation value " +
                                       std::to_string(rows[order[k]].value));
        }
    }
    return EmpiricalDiscrete(rows);
}

EmpiricalDiscrete parse_citation_counts(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_citation_counts(in, path.string());
}

std::vector<CountryRecord> parse_country_totals(std::istream& in, const std::string& source) {
    std::size_t line_no = 0;
    const auto header = read_header(in, source, line_no);
    if (header != std::vector<std::string>{"country", "documents", "citations"}) {
        throw InputFormatError(source, line_no, "expected header 'country,documents,citations'");
    }
    std::vector<CountryRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        const auto fields = split_fields(line, source, line_no);
        if (fields.size() != 3) throw InputFormatError(source, line_no, "expected three fields");
        CountryRecord r;
        r.name = std::string(trim(fields[0]));
        if (r.name.empty()) throw InputFormatError(source, line_no, "empty country name");
        const auto docs = parse_int(fields[1]);
        const auto cites = parse_int(fields[2]);
        if (!docs) throw InputFormatError(source, line_no, "documents must be an integer");
        if (*docs < 1) throw InputFormatError(source, line_no, "documents must be at least 1");
        if (!cites || *cites < 0) {
            throw InputFormatError(source, line_no, "citations must be a nonnegative integer");
        }
        r.documents = *docs;
        r.citations = *cites;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CountryRecord> parse_country_totals(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_country_totals(in, path.string());
}

std::vector<RankedCountry> rank_countries(std::vector<CountryRecord> records) {
    if (records.empty()) throw std::invalid_argument("rank_countries: no records");
    std::stable_sort(records.begin(), records.end(),
                     [](const CountryRecord& a, const CountryRecord& b) {
                         const double ra = a.ratio();
                         const double rb = b.ratio();
                         if (ra != rb) return ra > rb;
                         return a.name < b.name;
                     });
    std::vector<RankedCountry> out;
    out.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        out.push_back({static_cast<std::int64_t>(i + 1), std::move(records[i])});
    }
    return out;
}

std::vector<double> read_csv_column(const std::filesystem::path& path, const std::string& column) {
    auto in = open_input(path);
    const auto source = path.string();
    std::size_t line_no = 0;
    const auto header = read_header(in, source, line_no);
    const auto it = std::find(header.begin(), header.end(), column);
    if (it == header.end()) throw InputFormatError(source, line_no, "no column '" + column + "'");
    const auto index = static_cast<std::size_t>(it - header.begin());

    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        const auto fields = split_fields(line, source, line_no);
        if (fields.size() != header.size()) {
            throw InputFormatError(source, line_no, "field count differs from header");
        }
        const auto v = parse_double(fields[index]);
        if (!v) throw InputFormatError(source, line_no, "non-numeric value in '" + column + "'");
        values.push_back(*v);
    }
    return values;
}

std::vector<double> read_value_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    const auto source = path.string();
    std::vector<double> values;
    std::size_t line_no = 0;
    bool seen_content = false;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        const auto v = parse_double(line);
        if (!v) {
            if (!seen_content) {
                seen_content = true;
                continue;
            }
            throw InputFormatError(source, line_no, "expected one number per line");
        }
        seen_content = true;
        values.push_back(*v);
    }
    return values;
}

}  // namespace citesim
