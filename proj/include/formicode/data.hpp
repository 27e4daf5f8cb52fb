#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "formicode/simulation.hpp"

namespace formicode {

enum class ColumnType { integer, seconds, text, probability };

using Cell = std::variant<std::int64_t, double, std::string>;

struct Column {
  std::string name;
  ColumnType type;
};

// An embedded replica of one published data table. Values are immutable and
// pinned by a checksum test; rows flagged non_replicable carry summary
// statistics only (the underlying raw samples were never published).
struct PaperTable {
  int table_id = 0;
  std::string caption;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  std::string provenance;
  bool non_replicable = false;

  std::size_t column_index(std::string_view name) const;  // throws if absent
  const Cell& at(std::size_t row, std::string_view column) const;
};

// Embedded tables 1..6. Throws std::invalid_argument for other ids.
const PaperTable& load_table(int table_id);

// Stable line-oriented rendering used for checksum pinning.
std::string canonical_serialization(const PaperTable& table);
std::uint64_t table_checksum(const PaperTable& table);

struct DataPoint {
  double x = 0.0;
  double t = 0.0;
  std::string label;
};

struct Dataset {
  std::vector<DataPoint> points;
};

struct DatasetMapping {
  std::string x_column;
  std::string t_column;      // numeric, or comma-separated multi-observation text
  std::string label_column;  // optional
};

// Flattens a table into (x, t) records, one per observation: a text cell
// like "35,30" under the t role becomes two records sharing the row's x.
Dataset table_to_dataset(const PaperTable& table, const DatasetMapping& mapping);

// trials.csv schema: UTF-8, comma-separated, header mandatory, fixed column
// order: trial_id,stage,goal,code_length,contact_duration_s,decoded_goal,
// success,search_time_s.
extern const char* const kTrialsCsvHeader;

void write_trials_csv(std::ostream& out, std::span<const TrialRecord> records);
std::string trials_csv_text(std::span<const TrialRecord> records);

// Strict parse: exact header, typed fields, unique trial ids, CRLF or LF.
// Failures raise CsvError carrying the 1-based line number.
std::vector<TrialRecord> read_trials_csv(std::istream& in);
std::vector<TrialRecord> read_trials_csv_file(const std::string& path);

// Column selection over trial records for generic fitting; success maps to
// 0/1. Throws std::invalid_argument for unknown column names.
Dataset trials_to_dataset(std::span<const TrialRecord> records,
                          std::string_view x_column,
                          std::string_view y_column);

}  // namespace formicode
