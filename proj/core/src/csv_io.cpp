#include "rankstat/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "rankstat/errors.hpp"

namespace rankstat {

namespace {

constexpr std::string_view kBom = "\xEF\xBB\xBF";

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

// Line reader that tracks 1-based line numbers and strips CR and a leading BOM.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        if (!std::getline(in_, line)) return false;
        ++line_no_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no_ == 1 && line.starts_with(kBom)) line.erase(0, kBom.size());
        return true;
    }

    // Next line with content; false at end of input.
    bool next_nonblank(std::string& line) {
        while (next(line)) {
            if (!trim(line).empty()) return true;
        }
        return false;
    }

    std::size_t line_no() const noexcept { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

void expect_header(LineReader& reader, std::string_view header) {
    std::string line;
    if (!reader.next(line)) {
        throw ParseError(1, "header", "empty input; expected header '" + std::string(header) + "'");
    }
    if (line != header) {
        throw ParseError(reader.line_no(), "header",
                         "expected '" + std::string(header) + "', found '" + line + "'");
    }
}

std::vector<std::string> split_expect(std::string_view line, std::size_t line_no,
                                      std::size_t columns) {
    auto fields = split_csv_line(line, line_no);
    if (fields.size() != columns) {
        throw ParseError(line_no, "row",
                         "expected " + std::to_string(columns) + " fields, found " +
                             std::to_string(fields.size()));
    }
    return fields;
}

std::int64_t parse_int(std::string_view text, std::size_t line_no, const char* field) {
    const auto s = trim(text);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(line_no, field, "not an integer: '" + std::string(text) + "'");
    }
    return value;
}

double parse_real(std::string_view text, std::size_t line_no, const char* field) {
    const auto s = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
        throw ParseError(line_no, field, "not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::string parse_id(std::string_view text, std::size_t line_no) {
    const auto id = trim(text);
    if (id.empty()) throw ParseError(line_no, "institution", "empty institution name");
    return std::string(id);
}

InstitutionRecord checked_record(std::string id, std::int64_t n, std::int64_t k,
                                 std::size_t line_no) {
    if (n < 1) throw ParseError(line_no, "n_pubs", "must be at least 1");
    if (k < 0) throw ParseError(line_no, "n_top10", "must be non-negative");
    if (k > n) throw ParseError(line_no, "n_top10", "exceeds n_pubs");
    return {std::move(id), n, k};
}

template <typename RowParser>
RankingDataset parse_institutions(std::istream& in, std::string_view header, SortKey key,
                                  const RowParser& parse_row) {
    LineReader reader(in);
    expect_header(reader, header);
    std::vector<InstitutionRecord> records;
    std::unordered_set<std::string> seen;
    std::string line;
    while (reader.next_nonblank(line)) {
        auto rec = parse_row(split_expect(line, reader.line_no(), 3), reader.line_no());
        if (!seen.insert(rec.id).second) throw DuplicateIdError(rec.id, reader.line_no());
        records.push_back(std::move(rec));
    }
    return RankingDataset(std::move(records), key);
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c != '"') {
                current += c;
            } else if (i + 1 < line.size() && line[i + 1] == '"') {
                current += '"';
                ++i;
            } else {
                quoted = false;
            }
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
            was_quoted = false;
        } else if (c == '"') {
            if (was_quoted || !trim(current).empty()) {
                throw ParseError(line_no, "row", "unexpected quote inside a field");
            }
            current.clear();
            quoted = true;
            was_quoted = true;
        } else if (was_quoted && c != ' ' && c != '\t') {
            throw ParseError(line_no, "row", "text after a closing quote");
        } else if (!was_quoted) {
            current += c;
        }
    }
    if (quoted) throw ParseError(line_no, "row", "unterminated quoted field");
    fields.push_back(std::move(current));
    return fields;
}

std::string quote_csv_field(std::string_view field) {
    const bool needs = field.find_first_of(",\"\r\n") != std::string_view::npos ||
                       (!field.empty() && (field.front() == ' ' || field.back() == ' '));
    if (!needs) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

RankingDataset parse_ranking_csv(std::istream& in, SortKey key) {
    return parse_institutions(in, kRankingHeader, key,
                              [](const std::vector<std::string>& f, std::size_t line) {
                                  return checked_record(parse_id(f[0], line),
                                                        parse_int(f[1], line, "n_pubs"),
                                                        parse_int(f[2], line, "n_top10"), line);
                              });
}

RankingDataset parse_ranking_percent_csv(std::istream& in, SortKey key) {
    return parse_institutions(
        in, kRankingPercentHeader, key, [](const std::vector<std::string>& f, std::size_t line) {
            const auto n = parse_int(f[1], line, "n_pubs");
            const auto pct = parse_real(f[2], line, "pct_top10");
            if (pct < 0.0 || pct > 100.0) {
                throw ParseError(line, "pct_top10", "percentage must lie in [0, 100]");
            }
            const auto k = static_cast<std::int64_t>(std::llround(static_cast<double>(n) * pct / 100.0));
            return checked_record(parse_id(f[0], line), n, k, line);
        });
}

std::vector<PublicationRecord> parse_publication_csv(std::istream& in, YearRange years) {
    LineReader reader(in);
    expect_header(reader, kPublicationHeader);
    std::vector<PublicationRecord> pubs;
    std::string line;
    while (reader.next_nonblank(line)) {
        const auto f = split_expect(line, reader.line_no(), 2);
        const auto year = parse_int(f[0], reader.line_no(), "year");
        if (year < years.first || year > years.last) {
            throw ParseError(reader.line_no(), "year",
                             "outside " + std::to_string(years.first) + "-" +
                                 std::to_string(years.last));
        }
        const auto flag = parse_int(f[1], reader.line_no(), "is_top10");
        if (flag != 0 && flag != 1) throw ParseError(reader.line_no(), "is_top10", "must be 0 or 1");
        pubs.push_back({static_cast<int>(year), flag == 1});
    }
    return pubs;
}

void write_ranking_csv(std::ostream& out, const RankingDataset& ds) {
    out << kRankingHeader << '\n';
    for (const auto& r : ds.records()) {
        out << quote_csv_field(r.id) << ',' << std::to_string(r.n_pubs) << ','
            << std::to_string(r.n_top10) << '\n';
    }
}

}  // namespace rankstat
