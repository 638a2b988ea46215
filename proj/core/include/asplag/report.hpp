#pragma once

#include <asplag/corpus.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace asplag {

/// Escapes &, <, >, " and ' for HTML text and attribute values.
[[nodiscard]] std::string html_escape(std::string_view text);

/// Relative path of a pair's detail page inside the report directory.
[[nodiscard]] std::string pair_page_name(std::size_t index);

[[nodiscard]] std::string report_index_html(const ResultSet& results);
[[nodiscard]] std::string report_pair_html(const ResultSet& results, std::size_t index);

/// Writes index.html and one page per pair under `dir`. Throws CorpusError when
/// the results are empty or a file cannot be written. Returns the written paths.
std::vector<std::filesystem::path> write_report(const ResultSet& results, const std::filesystem::path& dir);

} // namespace asplag
