#include "mug/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "mug/errors.hpp"

namespace mug {

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  return out;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double to_double(const std::string& path, const std::string& token) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw DataError(path + ": expected a number, got '" + token + "'");
  }
  return v;
}

int to_int(const std::string& path, const std::string& token) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw DataError(path + ": expected an integer, got '" + token + "'");
  }
  return v;
}

}  // namespace

void write_trials_csv(const std::string& path, const std::vector<TrialRecord>& records, bool with_beta_min) {
  auto out = open_out(path);
  out << "method,K,m," << (with_beta_min ? "beta_min," : "") << "trial,cardinality,fpr,fnr,contains_truth\n";
  for (const auto& r : records) {
    out << r.method << ',' << r.big_k << ',' << r.m_max << ',';
    if (with_beta_min) out << format_double(r.beta_min) << ',';
    out << r.trial << ',' << r.cardinality << ',' << format_double(r.fpr) << ',' << format_double(r.fnr) << ','
        << (r.contains_truth ? 1 : 0) << '\n';
  }
}

void write_timings_csv(const std::string& path, const std::vector<TrialRecord>& records) {
  auto out = open_out(path);
  out << "method,K,m,trial,wall_time_s\n";
  for (const auto& r : records) {
    out << r.method << ',' << r.big_k << ',' << r.m_max << ',' << r.trial << ',' << format_double(r.wall_time_s)
        << '\n';
  }
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows, bool with_beta_min) {
  auto out = open_out(path);
  out << "method,K,m," << (with_beta_min ? "beta_min," : "")
      << "fpr_mean,fpr_std,fnr_mean,fnr_std,card_mean,containment_rate,trials\n";
  for (const auto& r : rows) {
    out << r.method << ',' << r.big_k << ',' << r.m_max << ',';
    if (with_beta_min) out << format_double(r.beta_min) << ',';
    out << format_double(r.fpr_mean) << ',' << format_double(r.fpr_std) << ',' << format_double(r.fnr_mean) << ','
        << format_double(r.fnr_std) << ',' << format_double(r.card_mean) << ',' << format_double(r.containment_rate)
        << ',' << r.trials << '\n';
  }
}

std::vector<TrialRecord> read_trials_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_line(line);
  const bool with_beta_min = header.size() > 3 && header[3] == "beta_min";
  const std::size_t expected = with_beta_min ? 9 : 8;
  if (header.size() != expected) throw DataError(path + ": unexpected trials.csv header");

  std::vector<TrialRecord> records;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != expected) {
      throw RaggedRowsError(path, line_number, static_cast<int>(cells.size()), static_cast<int>(expected));
    }
    TrialRecord r;
    std::size_t c = 0;
    r.method = cells[c++];
    r.big_k = to_int(path, cells[c++]);
    r.m_max = to_int(path, cells[c++]);
    if (with_beta_min) r.beta_min = to_double(path, cells[c++]);
    r.trial = to_int(path, cells[c++]);
    r.cardinality = to_int(path, cells[c++]);
    r.fpr = to_double(path, cells[c++]);
    r.fnr = to_double(path, cells[c++]);
    r.contains_truth = to_int(path, cells[c++]) != 0;
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<SummaryRow> read_summary_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_line(line);
  const bool with_beta_min = header.size() > 3 && header[3] == "beta_min";
  const std::size_t expected = with_beta_min ? 11 : 10;
  if (header.size() != expected) throw DataError(path + ": unexpected summary.csv header");

  std::vector<SummaryRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != expected) throw DataError(path + ": ragged summary row");
    SummaryRow r;
    std::size_t c = 0;
    r.method = cells[c++];
    r.big_k = to_int(path, cells[c++]);
    r.m_max = to_int(path, cells[c++]);
    if (with_beta_min) r.beta_min = to_double(path, cells[c++]);
    r.fpr_mean = to_double(path, cells[c++]);
    r.fpr_std = to_double(path, cells[c++]);
    r.fnr_mean = to_double(path, cells[c++]);
    r.fnr_std = to_double(path, cells[c++]);
    r.card_mean = to_double(path, cells[c++]);
    r.containment_rate = to_double(path, cells[c++]);
    r.trials = to_int(path, cells[c++]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace mug
