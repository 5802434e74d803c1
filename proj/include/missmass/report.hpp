#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "missmass/experiments.hpp"

namespace missmass {

enum class OutputFormat { Csv, Json };

std::optional<OutputFormat> parse_format(std::string_view name);

// %.12g; "nan"/"inf"/"-inf" for non-finite values.
std::string format_number(double x);

/// RFC 4180 writer: CRLF line endings, fields quoted when they contain a
/// comma, quote, CR or LF.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

void write_comparison(std::ostream& out, const std::vector<ComparisonRow>& rows,
                      OutputFormat format = OutputFormat::Csv);
void write_curve(std::ostream& out, const std::vector<CurvePoint>& curve,
                 OutputFormat format = OutputFormat::Csv);
void write_table1(std::ostream& out, const Table1Summary& summary,
                  OutputFormat format = OutputFormat::Csv);
void write_birthday(std::ostream& out, const std::vector<BirthdayRow>& rows,
                    OutputFormat format = OutputFormat::Csv);

// Writes content to `path`, or to stdout for "-". Throws InputError if the
// file cannot be written.
void write_to_path(const std::string& path, const std::string& content);

}  // namespace missmass
