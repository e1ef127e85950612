#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rankstat/cluster_sampling.hpp"
#include "rankstat/ranking_analysis.hpp"

namespace rankstat {

inline constexpr std::string_view kRankingHeader = "institution,n_pubs,n_top10";
inline constexpr std::string_view kRankingPercentHeader = "institution,n_pubs,pct_top10";
inline constexpr std::string_view kPublicationHeader = "year,is_top10";

// Splits one CSV line. Fields may be double-quoted with "" as an escaped quote;
// quoted fields cannot span lines. `line_no` is used in ParseError messages.
std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no);

// Quotes a field when it contains a comma, quote or leading/trailing space.
std::string quote_csv_field(std::string_view field);

// Reads `institution,n_pubs,n_top10` rows. LF or CRLF line ends and a UTF-8 BOM
// are accepted; blank lines are skipped. Errors name the 1-based line and field.
RankingDataset parse_ranking_csv(std::istream& in, SortKey key = SortKey::proportion);

// Reads `institution,n_pubs,pct_top10` rows where pct_top10 is a percentage in
// [0, 100]; n_top10 = round(n_pubs * pct / 100).
RankingDataset parse_ranking_percent_csv(std::istream& in, SortKey key = SortKey::proportion);

// Reads `year,is_top10` rows with is_top10 in {0, 1}.
std::vector<PublicationRecord> parse_publication_csv(std::istream& in, YearRange years = {});

// Writes the dataset in rank order with the `institution,n_pubs,n_top10` header.
void write_ranking_csv(std::ostream& out, const RankingDataset& ds);

}  // namespace rankstat
