#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "citesim/distributions.hpp"

namespace citesim {

/// Malformed input file. `line()` is 1-based, 0 when not tied to a line.
class InputFormatError : public std::runtime_error {
public:
    InputFormatError(std::string source, std::size_t line, const std::string& what);

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

/// Splits one CSV record. Fields may be double-quoted; a quoted field may
/// contain commas and "" for a literal quote. Throws std::invalid_argument
/// on an unterminated quote.
std::vector<std::string> split_csv_line(std::string_view line);

/**
 * Citation frequency table:
 *
 *     # optional comments
 *     citations,count
 *     0,368110
 *     1,70836
 *
 * Blank lines and lines starting with '#' are skipped; CRLF is accepted.
 */
EmpiricalDiscrete parse_citation_counts(std::istream& in, const std::string& source = "<stream>");
EmpiricalDiscrete parse_citation_counts(const std::filesystem::path& path);

struct CountryRecord {
    std::string name;
    std::int64_t documents = 1;
    std::int64_t citations = 0;

    double ratio() const noexcept {
        return static_cast<double>(citations) / static_cast<double>(documents);
    }
};

/// Header `country,documents,citations`; names may be quoted.
std::vector<CountryRecord> parse_country_totals(std::istream& in,
                                                const std::string& source = "<stream>");
std::vector<CountryRecord> parse_country_totals(const std::filesystem::path& path);

struct RankedCountry {
    std::int64_t rank;
    CountryRecord record;
};

/// Descending by citations per document, ties by name ascending.
std::vector<RankedCountry> rank_countries(std::vector<CountryRecord> records);

/// Numeric column of a headed CSV, selected by header name.
std::vector<double> read_csv_column(const std::filesystem::path& path, const std::string& column);

/// One value per line. '#' comments, blank lines and a single non-numeric
/// header line are skipped.
std::vector<double> read_value_file(const std::filesystem::path& path);

}  // namespace citesim
