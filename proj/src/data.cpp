#include "rocinf/data.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rocinf {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  std::string out(s.substr(b, e - b));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"')
    out = out.substr(1, out.size() - 2);
  return out;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    fields.push_back(trim(std::string_view(line).substr(
        start, pos == std::string::npos ? std::string::npos : pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return fields;
}

double parse_number(const std::string& field, std::size_t line_no) {
  std::string lower;
  for (char ch : field) lower.push_back(static_cast<char>(std::tolower(ch)));
  if (lower == "nan" || lower.empty() || lower == "na") return std::nan("");
  if (lower == "inf" || lower == "+inf") return HUGE_VAL;
  if (lower == "-inf") return -HUGE_VAL;
  double value = 0.0;
  const char* first = field.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                           ": not a number: '" + field + "'");
  return value;
}

}  // namespace

int Table::column_index(const std::string& name) const {
  for (std::size_t j = 0; j < columns.size(); ++j)
    if (columns[j] == name) return static_cast<int>(j);
  return -1;
}

Table parse_csv(const std::string& text) {
  Table table;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_line(line);
    if (table.columns.empty()) {
      table.columns = std::move(fields);
      continue;
    }
    if (fields.size() != table.columns.size())
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": expected " +
                      std::to_string(table.columns.size()) + " fields, got " +
                      std::to_string(fields.size()));
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_number(f, line_no));
    table.rows.push_back(std::move(row));
  }
  if (table.columns.empty()) throw Error(ErrorCode::ParseError, "missing header row");
  return table;
}

Table read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

Dataset::Dataset(VectorXd y, MatrixXd x, std::vector<std::string> names)
    : y_(std::move(y)), x_(std::move(x)), names_(std::move(names)) {
  if (x_.rows() != y_.size())
    throw Error(ErrorCode::DimensionMismatch, "x and y row counts differ");
  if (y_.size() < 2) throw Error(ErrorCode::InvalidConfig, "need at least 2 rows");
  if (names_.empty())
    for (int j = 0; j < x_.cols(); ++j) names_.push_back("x" + std::to_string(j + 1));
  if (static_cast<int>(names_.size()) != x_.cols())
    throw Error(ErrorCode::DimensionMismatch, "predictor name count differs from columns");
  for (int i = 0; i < y_.size(); ++i) {
    if (y_[i] == 1.0) {
      pos_.push_back(i);
    } else if (y_[i] == 0.0) {
      neg_.push_back(i);
    } else {
      throw Error(ErrorCode::NonBinaryOutcome,
                  "row " + std::to_string(i) + " has outcome " + std::to_string(y_[i]));
    }
  }
  if (!x_.allFinite()) throw Error(ErrorCode::NonFiniteValue, "predictor matrix has NaN/Inf");
  n1_ = static_cast<int>(pos_.size());
  n0_ = static_cast<int>(neg_.size());
  if (n1_ == 0 || n0_ == 0)
    throw Error(ErrorCode::DegenerateOutcome, "outcome takes a single value");
}

MatrixXd Dataset::design() const {
  MatrixXd d(n(), k() + 1);
  d.col(0).setOnes();
  d.rightCols(k()) = x_;
  return d;
}

Dataset Dataset::select(const std::vector<int>& columns) const {
  MatrixXd sub(n(), static_cast<Eigen::Index>(columns.size()));
  std::vector<std::string> names;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] < 0 || columns[j] >= k())
      throw Error(ErrorCode::MissingColumn, "predictor column " + std::to_string(columns[j]));
    sub.col(static_cast<Eigen::Index>(j)) = x_.col(columns[j]);
    names.push_back(names_[columns[j]]);
  }
  return Dataset(y_, std::move(sub), std::move(names));
}

int Dataset::column_index(const std::string& name) const {
  for (std::size_t j = 0; j < names_.size(); ++j)
    if (names_[j] == name) return static_cast<int>(j);
  return -1;
}

Dataset load_dataset(const Table& table, const std::string& outcome_column) {
  const int oc = table.column_index(outcome_column);
  if (oc < 0) throw Error(ErrorCode::MissingColumn, "outcome column '" + outcome_column + "'");
  if (table.rows.size() < 2) throw Error(ErrorCode::InvalidConfig, "need at least 2 rows");
  const auto n = static_cast<Eigen::Index>(table.rows.size());
  const auto k = static_cast<Eigen::Index>(table.columns.size() - 1);
  VectorXd y(n);
  MatrixXd x(n, k);
  std::vector<std::string> names;
  for (std::size_t j = 0; j < table.columns.size(); ++j)
    if (static_cast<int>(j) != oc) names.push_back(table.columns[j]);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = table.rows[static_cast<std::size_t>(i)];
    if (!std::isfinite(row[oc]))
      throw Error(ErrorCode::NonBinaryOutcome, "row " + std::to_string(i) + " outcome missing");
    y[i] = row[oc];
    Eigen::Index col = 0;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (static_cast<int>(j) != oc) x(i, col++) = row[j];
  }
  return Dataset(std::move(y), std::move(x), std::move(names));
}

IndexValues::IndexValues(VectorXd g_, VectorXd beta_) : g(std::move(g_)), beta(std::move(beta_)) {
  if (!g.allFinite()) throw Error(ErrorCode::NonFiniteValue, "index values contain NaN/Inf");
  if (g.size() < 2) throw Error(ErrorCode::DegenerateIndex, "fewer than two index values");
  const double mean = g.mean();
  if ((g.array() - mean).square().sum() <= 0.0)
    throw Error(ErrorCode::DegenerateIndex, "index has zero sample variance");
}

void GridConfig::validate() const {
  if (!(tau_l >= 0.0 && tau_u <= 1.0 && tau_l < tau_u))
    throw Error(ErrorCode::InvalidConfig, "grid requires 0 <= tau_l < tau_u <= 1");
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidConfig, "grid step must be positive");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidConfig, "epsilon must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::InvalidConfig, "alpha must be in (0,1)");
}

std::vector<double> make_t_grid(const GridConfig& cfg) {
  cfg.validate();
  std::vector<double> grid;
  const double tol = 1e-9 * cfg.step;
  for (long j = 0;; ++j) {
    // rounded so that 0.1 + 2 * 0.1 is reported as 0.3
    const double t = std::round((cfg.tau_l + static_cast<double>(j) * cfg.step) * 1e10) / 1e10;
    if (t >= cfg.tau_u - tol) break;
    grid.push_back(t);
  }
  grid.push_back(cfg.tau_u);
  return grid;
}

MonotoneMap make_transform(const std::string& name) {
  if (name.empty() || name == "identity") return [](double v) { return v; };
  if (name == "exp") return [](double v) { return std::exp(v); };
  if (name == "cube") return [](double v) { return v * v * v; };
  throw Error(ErrorCode::InvalidConfig, "unknown index transform '" + name + "'");
}

}  // namespace rocinf
