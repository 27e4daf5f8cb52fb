#include "formicode/data.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "formicode/errors.hpp"
#include "formicode/hashing.hpp"

namespace formicode {

namespace {

std::int64_t I(std::int64_t v) { return v; }

// Shortest round-trip decimal form, for CSV cells and canonical table text.
std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::logic_error("double formatting failed");
  return std::string(buf, ptr);
}

const char* to_string(ColumnType type) {
  switch (type) {
    case ColumnType::integer: return "integer";
    case ColumnType::seconds: return "seconds";
    case ColumnType::text: return "text";
    case ColumnType::probability: return "probability";
  }
  throw std::logic_error("unreachable column type");
}

std::vector<PaperTable> build_tables() {
  std::vector<PaperTable> tables;

  {
    PaperTable t;
    t.table_id = 1;
    t.caption =
        "Search time for the trough on a binary tree: uninformed (U) "
        "F. pratensis foragers vs foragers that had contacted a successful "
        "scout (informed, I)";
    t.columns = {{"turn_sequence", ColumnType::text},
                 {"group", ColumnType::text},
                 {"mean_search_s", ColumnType::seconds},
                 {"sample_size", ColumnType::integer},
                 {"significance", ColumnType::text}};
    t.rows = {
        {"RRRR", "U", 345.7, I(9), "<0.01"}, {"RRRR", "I", 36.3, I(9), ""},
        {"LLLL", "U", 508.0, I(9), "<0.01"}, {"LLLL", "I", 37.3, I(9), ""},
        {"LRRL", "U", 118.7, I(7), "<0.01"}, {"LRRL", "I", 16.6, I(7), ""},
        {"RRRR", "U", 565.9, I(7), "<0.01"}, {"RRRR", "I", 16.3, I(7), ""},
    };
    t.provenance =
        "Replicated study, table 1: informed/uninformed search-time "
        "comparison; only group means and sample sizes were printed";
    t.non_replicable = true;  // rank-sum needs the unpublished raw samples
    tables.push_back(std::move(t));
  }

  {
    PaperTable t;
    t.table_id = 2;
    t.caption =
        "Duration of transmitting the route to the trough by F. sanguinea "
        "scouts; rows 1-8 regular turn patterns, rows 9-15 random ones";
    t.columns = {{"row", ColumnType::integer},
                 {"sequence", ColumnType::text},
                 {"mean_duration_s", ColumnType::seconds},
                 {"trials", ColumnType::integer},
                 {"pattern", ColumnType::text}};
    t.rows = {
        {I(1), "LL", 72.0, I(18), "regular"},
        {I(2), "RRR", 75.0, I(15), "regular"},
        {I(3), "LLLL", 84.0, I(9), "regular"},
        {I(4), "RRRRR", 78.0, I(10), "regular"},
        {I(5), "LLLLLL", 90.0, I(8), "regular"},
        {I(6), "RRRRRR", 88.0, I(5), "regular"},
        {I(7), "LRLRLR", 130.0, I(4), "regular"},
        {I(8), "RLRLRL", 135.0, I(8), "regular"},
        {I(9), "LLR", 69.0, I(12), "random"},
        {I(10), "LRLL", 100.0, I(10), "random"},
        {I(11), "RLLR", 120.0, I(6), "random"},
        {I(12), "RRLRL", 150.0, I(8), "random"},
        {I(13), "RLRRRL", 180.0, I(6), "random"},
        {I(14), "RRLRRR", 220.0, I(7), "random"},
        {I(15), "LRLLRL", 200.0, I(5), "random"},
    };
    t.provenance =
        "Replicated study, table 2: per-sequence mean contact durations";
    tables.push_back(std::move(t));
  }

  {
    PaperTable t;
    t.table_id = 3;
    t.caption =
        "Vertical trunk 1 with F. polyctena: scout-forager contact duration "
        "by food-containing branch";
    t.columns = {{"row", ColumnType::integer},
                 {"branch", ColumnType::integer},
                 {"contact_duration_s", ColumnType::seconds},
                 {"scout", ColumnType::text}};
    t.rows = {
        {I(1), I(10), 42.0, "I"},   {I(2), I(10), 40.0, "II"},
        {I(3), I(10), 45.0, "III"}, {I(4), I(40), 300.0, "II"},
        {I(5), I(40), 280.0, "IX"}, {I(6), I(13), 90.0, "II"},
        {I(7), I(13), 98.0, "I"},   {I(8), I(28), 110.0, "III"},
        {I(9), I(28), 120.0, "X"},  {I(10), I(20), 120.0, "X"},
        {I(11), I(20), 110.0, "III"}, {I(12), I(35), 260.0, "III"},
        {I(13), I(35), 250.0, "X"}, {I(14), I(30), 160.0, "I"},
        {I(15), I(30), 170.0, "III"},
    };
    t.provenance =
        "Replicated study, table 3: the 15 printed vertical-trunk "
        "observations (the published fit may use a larger sample)";
    tables.push_back(std::move(t));
  }

  {
    PaperTable t;
    t.table_id = 4;
    t.caption =
        "Correlation and regression coefficients of contact duration on "
        "branch number for the comb set-ups, F. polyctena";
    t.columns = {{"setup", ColumnType::text},
                 {"sample_size", ColumnType::integer},
                 {"branch_count", ColumnType::integer},
                 {"r", ColumnType::probability},
                 {"slope_s_per_branch", ColumnType::seconds},
                 {"intercept_s", ColumnType::seconds}};
    t.rows = {
        {"Vert.1", I(15), I(40), 0.93, 7.3, -28.9},
        {"Vert.2", I(16), I(60), 0.99, 5.88, -17.11},
        {"Horiz.1", I(30), I(25), 0.91, 8.54, -22.2},
        {"Horiz.2", I(21), I(25), 0.88, 4.92, -18.94},
        {"Circle", I(38), I(25), 0.98, 8.62, -24.4},
    };
    t.provenance = "Replicated study, table 4: published per-setup fits";
    tables.push_back(std::move(t));
  }

  {
    PaperTable t;
    t.table_id = 5;
    t.caption =
        "Third-stage transmission times by distance from the rewarded branch "
        "to the nearest special branch (special branches 10 and 20); "
        "multiple times per row come from different scouts";
    t.columns = {{"branch", ColumnType::integer},
                 {"distance_to_anchor", ColumnType::integer},
                 {"times_s", ColumnType::text}};
    t.rows = {
        {I(26), I(6), "35,30"},     {I(30), I(10), "70,65"},
        {I(27), I(7), "65,72"},     {I(24), I(4), "58,60,62"},
        {I(8), I(2), "22,20,25"},   {I(16), I(4), "25,8,25"},
        {I(16), I(4), "25"},        {I(22), I(2), "15,18"},
        {I(18), I(2), "20,25,18,20"}, {I(15), I(5), "30,28,35,30"},
        {I(20), I(0), "10,12,10"},  {I(6), I(4), "25,28"},
        {I(16), I(4), "30,25"},     {I(15), I(5), "20,25,20"},
        {I(14), I(4), "25,28,30,26"}, {I(17), I(3), "17,15"},
        {I(11), I(1), "10,12"},
    };
    t.provenance =
        "Replicated study, table 5: one year of third-stage data, branches "
        "1-4 excluded as printed";
    tables.push_back(std::move(t));
  }

  {
    PaperTable t;
    t.table_id = 6;
    t.caption =
        "Correlation between transmission time and branch number at the "
        "first stage vs distance-based coding at the third stage, for the "
        "special-branch variants";
    t.columns = {{"sample_size", ColumnType::integer},
                 {"anchor_branches", ColumnType::text},
                 {"r_stage1", ColumnType::probability},
                 {"r_stage3", ColumnType::probability}};
    t.rows = {
        {I(150), "10,20", 0.95, 0.80},
        {I(92), "10,19", 0.96, 0.91},
        {I(99), "15", 0.99, 0.82},
    };
    t.provenance =
        "Replicated study, table 6: published stage correlations per "
        "special-branch variant";
    tables.push_back(std::move(t));
  }

  return tables;
}

const std::vector<PaperTable>& tables() {
  static const std::vector<PaperTable> all = build_tables();
  return all;
}

double numeric_cell(const Cell& cell, const std::string& column) {
  if (std::holds_alternative<std::int64_t>(cell)) {
    return static_cast<double>(std::get<std::int64_t>(cell));
  }
  if (std::holds_alternative<double>(cell)) return std::get<double>(cell);
  throw std::invalid_argument("column '" + column +
                              "' holds text where a number is required");
}

std::string cell_text(const Cell& cell) {
  if (std::holds_alternative<std::string>(cell)) return std::get<std::string>(cell);
  if (std::holds_alternative<std::int64_t>(cell)) {
    return std::to_string(std::get<std::int64_t>(cell));
  }
  return format_double(std::get<double>(cell));
}

}  // namespace

std::size_t PaperTable::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return i;
  }
  throw std::invalid_argument("table " + std::to_string(table_id) +
                              " has no column '" + std::string(name) + "'");
}

const Cell& PaperTable::at(std::size_t row, std::string_view column) const {
  return rows.at(row)[column_index(column)];
}

const PaperTable& load_table(int table_id) {
  if (table_id < 1 || table_id > static_cast<int>(tables().size())) {
    throw std::invalid_argument("unknown table id " + std::to_string(table_id));
  }
  return tables()[static_cast<std::size_t>(table_id - 1)];
}

std::string canonical_serialization(const PaperTable& table) {
  std::string out = "table " + std::to_string(table.table_id) + "\n";
  out += "caption " + table.caption + "\n";
  out += "columns";
  for (const Column& c : table.columns) {
    out += " " + c.name + ":" + to_string(c.type);
  }
  out += "\n";
  for (const auto& row : table.rows) {
    out += "row";
    for (const Cell& cell : row) {
      out += " ";
      if (std::holds_alternative<std::string>(cell)) {
        out += "\"" + std::get<std::string>(cell) + "\"";
      } else {
        out += cell_text(cell);
      }
    }
    out += "\n";
  }
  return out;
}

std::uint64_t table_checksum(const PaperTable& table) {
  return fnv1a64(canonical_serialization(table));
}

Dataset table_to_dataset(const PaperTable& table,
                         const DatasetMapping& mapping) {
  if (mapping.x_column.empty() || mapping.t_column.empty()) {
    throw std::invalid_argument("dataset mapping needs x and t columns");
  }
  const std::size_t xi = table.column_index(mapping.x_column);
  const std::size_t ti = table.column_index(mapping.t_column);
  const std::size_t li = mapping.label_column.empty()
                             ? table.columns.size()
                             : table.column_index(mapping.label_column);

  Dataset out;
  for (const auto& row : table.rows) {
    const double x = numeric_cell(row[xi], mapping.x_column);
    const std::string label =
        li < table.columns.size() ? cell_text(row[li]) : std::string();

    const Cell& tcell = row[ti];
    if (std::holds_alternative<std::string>(tcell)) {
      // Multi-observation cell: one record per comma-separated time.
      std::stringstream ss(std::get<std::string>(tcell));
      std::string piece;
      bool any = false;
      while (std::getline(ss, piece, ',')) {
        double value = 0.0;
        auto [ptr, ec] =
            std::from_chars(piece.data(), piece.data() + piece.size(), value);
        if (ec != std::errc() || ptr != piece.data() + piece.size()) {
          throw std::invalid_argument("column '" + mapping.t_column +
                                      "' holds non-numeric text '" + piece +
                                      "'");
        }
        out.points.push_back({x, value, label});
        any = true;
      }
      if (!any) {
        throw std::invalid_argument("column '" + mapping.t_column +
                                    "' holds an empty observation list");
      }
    } else {
      out.points.push_back({x, numeric_cell(tcell, mapping.t_column), label});
    }
  }
  if (out.points.empty()) {
    throw std::invalid_argument("selection produced no records");
  }
  return out;
}

const char* const kTrialsCsvHeader =
    "trial_id,stage,goal,code_length,contact_duration_s,decoded_goal,"
    "success,search_time_s";

void write_trials_csv(std::ostream& out, std::span<const TrialRecord> records) {
  out << kTrialsCsvHeader << "\n";
  for (const TrialRecord& r : records) {
    out << r.trial_id << ',' << r.stage << ',' << r.goal << ','
        << format_double(r.code_length) << ','
        << format_double(r.contact_duration_s) << ',' << r.decoded_goal << ','
        << (r.success ? "true" : "false") << ','
        << format_double(r.search_time_s) << "\n";
  }
}

std::string trials_csv_text(std::span<const TrialRecord> records) {
  std::ostringstream out;
  write_trials_csv(out, records);
  return out.str();
}

namespace {

// Comma split honoring double quotes; the writer never quotes, but the
// dialect allows it.
std::vector<std::string> split_csv_line(const std::string& line, int line_no) {
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
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) throw CsvError(line_no, "unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

template <typename T>
T parse_number(const std::string& field, const char* column, int line_no) {
  T value{};
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw CsvError(line_no, std::string("field '") + column +
                                "' is not a valid number: '" + field + "'");
  }
  return value;
}

bool parse_bool(const std::string& field, const char* column, int line_no) {
  if (field == "true") return true;
  if (field == "false") return false;
  throw CsvError(line_no, std::string("field '") + column +
                              "' must be true or false, got '" + field + "'");
}

}  // namespace

std::vector<TrialRecord> read_trials_csv(std::istream& in) {
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line)) throw CsvError(1, "missing header row");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrialsCsvHeader) {
    throw CsvError(line_no, "header mismatch; expected '" +
                                std::string(kTrialsCsvHeader) + "'");
  }

  std::vector<TrialRecord> records;
  std::unordered_set<int> seen_ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const std::vector<std::string> f = split_csv_line(line, line_no);
    if (f.size() != 8) {
      throw CsvError(line_no, "expected 8 fields, got " +
                                  std::to_string(f.size()));
    }
    TrialRecord r;
    r.trial_id = parse_number<int>(f[0], "trial_id", line_no);
    r.stage = parse_number<int>(f[1], "stage", line_no);
    r.goal = parse_number<std::int64_t>(f[2], "goal", line_no);
    r.code_length = parse_number<double>(f[3], "code_length", line_no);
    r.contact_duration_s =
        parse_number<double>(f[4], "contact_duration_s", line_no);
    r.decoded_goal = parse_number<std::int64_t>(f[5], "decoded_goal", line_no);
    r.success = parse_bool(f[6], "success", line_no);
    r.search_time_s = parse_number<double>(f[7], "search_time_s", line_no);

    if (!seen_ids.insert(r.trial_id).second) {
      throw CsvError(line_no,
                     "duplicate trial_id " + std::to_string(r.trial_id));
    }
    records.push_back(r);
  }
  return records;
}

std::vector<TrialRecord> read_trials_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_trials_csv(in);
}

Dataset trials_to_dataset(std::span<const TrialRecord> records,
                          std::string_view x_column,
                          std::string_view y_column) {
  using Getter = std::function<double(const TrialRecord&)>;
  static const std::vector<std::pair<std::string_view, Getter>> getters = {
      {"trial_id", [](const TrialRecord& r) { return double(r.trial_id); }},
      {"stage", [](const TrialRecord& r) { return double(r.stage); }},
      {"goal", [](const TrialRecord& r) { return double(r.goal); }},
      {"code_length", [](const TrialRecord& r) { return r.code_length; }},
      {"contact_duration_s",
       [](const TrialRecord& r) { return r.contact_duration_s; }},
      {"decoded_goal",
       [](const TrialRecord& r) { return double(r.decoded_goal); }},
      {"success", [](const TrialRecord& r) { return r.success ? 1.0 : 0.0; }},
      {"search_time_s", [](const TrialRecord& r) { return r.search_time_s; }},
  };
  auto find = [&](std::string_view name) -> const Getter& {
    for (const auto& [n, g] : getters) {
      if (n == name) return g;
    }
    std::string valid;
    for (const auto& [n, g] : getters) {
      if (!valid.empty()) valid += ", ";
      valid += n;
    }
    throw std::invalid_argument("unknown column '" + std::string(name) +
                                "'; valid columns: " + valid);
  };
  const Getter& gx = find(x_column);
  const Getter& gy = find(y_column);

  Dataset out;
  out.points.reserve(records.size());
  for (const TrialRecord& r : records) {
    out.points.push_back(
        {gx(r), gy(r), "stage" + std::to_string(r.stage)});
  }
  return out;
}

}  // namespace formicode
