#include "pspankit/cli/io.hpp"

#include <json.hpp>

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

namespace pspankit::cli {

namespace {

using nlohmann::json;

std::string slurp(const std::string& path, std::istream& stdin_stream) {
  if (path == "-") return {std::istreambuf_iterator<char>(stdin_stream), {}};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError(path + ": cannot open file");
  return {std::istreambuf_iterator<char>(f), {}};
}

std::string display(const std::string& path) { return path == "-" ? "<stdin>" : path; }

bool ends_with(const std::string& s, const std::string& suffix) {
  if (s.size() < suffix.size()) return false;
  for (std::size_t i = 0; i < suffix.size(); ++i) {
    const char c = s[s.size() - suffix.size() + i];
    if (std::tolower(static_cast<unsigned char>(c)) != suffix[i]) return false;
  }
  return true;
}

bool looks_like_json(const std::string& path, const std::string& text) {
  if (ends_with(path, ".json")) return true;
  if (ends_with(path, ".csv")) return false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

std::string location(const std::string& src, const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return src + ":" + std::to_string(line) + ":" + std::to_string(col);
}

Rows json_rows(const json& j, const std::string& src, const std::string& path, std::vector<std::string>* where) {
  if (!j.is_array()) throw InputError(src + ": " + path + ": expected an array of rows");
  Rows rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    const json& row = j[r];
    if (!row.is_array()) throw InputError(src + ": " + rp + ": expected an array of numbers");
    std::vector<double> v;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!row[c].is_number()) {
        throw InputError(src + ": " + rp + "[" + std::to_string(c) + "]: expected a number, got " + row[c].type_name());
      }
      v.push_back(row[c].get<double>());
    }
    rows.push_back(std::move(v));
    if (where) where->push_back(src + ": " + rp);
  }
  return rows;
}

json parse_json(const std::string& src, const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    std::string msg = e.what();
    const auto cut = msg.find(": ", msg.find("parse error"));
    throw InputError(location(src, text, byte) + ": malformed JSON" + (cut == std::string::npos ? "" : msg.substr(cut)));
  }
}

std::optional<double> json_number(const json& obj, const char* key, const std::string& src) {
  if (!obj.contains(key)) return std::nullopt;
  const json& v = obj.at(key);
  if (!v.is_number()) throw InputError(src + ": tolerances." + key + ": expected a number");
  return v.get<double>();
}

Rows csv_rows(const std::string& src, const std::string& text, std::vector<std::string>* where) {
  Rows rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> v;
    std::size_t pos = 0;
    while (true) {
      const std::size_t end = std::min(line.find(',', pos), line.size());
      const std::string field = line.substr(pos, end - pos);
      const auto a = field.find_first_not_of(" \t");
      const auto b = field.find_last_not_of(" \t");
      const std::string tok = a == std::string::npos ? std::string() : field.substr(a, b - a + 1);
      const std::size_t col = pos + (a == std::string::npos ? 0 : a) + 1;
      const std::string at = src + ":" + std::to_string(lineno) + ":" + std::to_string(col);
      if (tok.empty()) throw InputError(at + ": empty field");
      char* stop = nullptr;
      errno = 0;
      const double x = std::strtod(tok.c_str(), &stop);
      if (stop != tok.c_str() + tok.size() || errno == ERANGE || !std::isfinite(x)) {
        throw InputError(at + ": not a finite number: '" + tok + "'");
      }
      v.push_back(x);
      if (end >= line.size()) break;
      pos = end + 1;
    }
    rows.push_back(std::move(v));
    if (where) where->push_back(src + ":" + std::to_string(lineno));
  }
  return rows;
}

std::optional<double> env_double(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  char* stop = nullptr;
  const double x = std::strtod(v, &stop);
  if (*stop != '\0') throw InputError(std::string("environment variable ") + name + ": not a number: '" + v + "'");
  return x;
}

}  // namespace

void Overrides::apply_to(Tolerances& tol, EnumerationBudget& budget) const {
  if (rank_tol) tol.rank_tol = *rank_tol;
  if (zero_tol) tol.zero_tol = *zero_tol;
  if (active_tol) tol.active_tol = *active_tol;
  if (feas_tol) tol.feas_tol = *feas_tol;
  if (gap_tol) tol.gap_tol = *gap_tol;
  if (max_bases) budget.max_bases = *max_bases;
}

InputDocument read_input(const std::string& path, std::istream& stdin_stream) {
  InputDocument doc;
  doc.source = display(path);
  const std::string text = slurp(path, stdin_stream);

  if (!looks_like_json(path, text)) {
    doc.vectors = csv_rows(doc.source, text, &doc.where);
  } else {
    const json j = parse_json(doc.source, text);
    if (j.is_array()) {
      doc.vectors = json_rows(j, doc.source, "vectors", &doc.where);
    } else if (j.is_object()) {
      if (!j.contains("vectors")) throw InputError(doc.source + ": missing \"vectors\"");
      doc.vectors = json_rows(j.at("vectors"), doc.source, "vectors", &doc.where);
      if (j.contains("subspace") && !j.at("subspace").is_null()) {
        doc.subspace = json_rows(j.at("subspace"), doc.source, "subspace", nullptr);
      }
      if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        if (!t.is_object()) throw InputError(doc.source + ": tolerances: expected an object");
        doc.overrides.rank_tol = json_number(t, "rank_tol", doc.source);
        doc.overrides.zero_tol = json_number(t, "zero_tol", doc.source);
        doc.overrides.active_tol = json_number(t, "active_tol", doc.source);
        doc.overrides.feas_tol = json_number(t, "feas_tol", doc.source);
        doc.overrides.gap_tol = json_number(t, "gap_tol", doc.source);
      }
      if (j.contains("budget")) {
        const json& b = j.at("budget");
        if (!b.is_object() || !b.contains("max_bases") || !b.at("max_bases").is_number_unsigned()) {
          throw InputError(doc.source + ": budget.max_bases: expected a positive integer");
        }
        doc.overrides.max_bases = b.at("max_bases").get<std::uint64_t>();
      }
    } else {
      throw InputError(doc.source + ": expected a JSON object or array");
    }
  }
  if (doc.vectors.empty()) throw InputError(doc.source + ": no vectors");
  return doc;
}

Rows read_rows(const std::string& path, std::istream& stdin_stream) {
  const std::string src = display(path);
  const std::string text = slurp(path, stdin_stream);
  Rows rows;
  if (!looks_like_json(path, text)) {
    rows = csv_rows(src, text, nullptr);
  } else {
    const json j = parse_json(src, text);
    if (j.is_array()) {
      rows = json_rows(j, src, "rows", nullptr);
    } else if (j.is_object() && j.contains("subspace")) {
      rows = json_rows(j.at("subspace"), src, "subspace", nullptr);
    } else if (j.is_object() && j.contains("vectors")) {
      rows = json_rows(j.at("vectors"), src, "vectors", nullptr);
    } else {
      throw InputError(src + ": expected an array of rows or an object with \"subspace\"");
    }
  }
  if (rows.empty()) throw InputError(src + ": no rows");
  return rows;
}

Overrides environment_overrides() {
  Overrides o;
  o.rank_tol = env_double("PSPANKIT_RANK_TOL");
  o.zero_tol = env_double("PSPANKIT_ZERO_TOL");
  o.active_tol = env_double("PSPANKIT_ACTIVE_TOL");
  o.feas_tol = env_double("PSPANKIT_FEAS_TOL");
  o.gap_tol = env_double("PSPANKIT_GAP_TOL");
  if (const char* v = std::getenv("PSPANKIT_MAX_BASES"); v && *v) {
    char* stop = nullptr;
    errno = 0;
    const unsigned long long x = std::strtoull(v, &stop, 10);
    if (*stop != '\0' || errno == ERANGE || x == 0) {
      throw InputError(std::string("environment variable PSPANKIT_MAX_BASES: not a positive integer: '") + v + "'");
    }
    o.max_bases = x;
  }
  return o;
}

DirectionSet to_directions(const InputDocument& doc, const Tolerances& tol) {
  const std::size_t n = doc.vectors.front().size();
  if (n == 0) throw InputError(doc.where.front() + ": empty vector");
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(doc.vectors.size()));
  for (std::size_t j = 0; j < doc.vectors.size(); ++j) {
    const auto& row = doc.vectors[j];
    if (row.size() != n) {
      throw InputError(doc.where[j] + ": row " + std::to_string(j) + " has " + std::to_string(row.size()) +
                       " entries, expected " + std::to_string(n));
    }
    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(row[i])) throw InputError(doc.where[j] + ": row " + std::to_string(j) + " is not finite");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[i];
      sq += row[i] * row[i];
    }
    if (std::sqrt(sq) <= tol.zero_tol) {
      std::ostringstream os;
      os << doc.where[j] << ": row " << j << " has norm " << std::sqrt(sq) << " <= zero_tol " << tol.zero_tol;
      throw InputError(os.str());
    }
  }
  return DirectionSet(std::move(m), tol.zero_tol);
}

Subspace to_subspace(const Rows& rows, std::size_t n, const Tolerances& tol) {
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j].size() != n) {
      throw InputError("subspace row " + std::to_string(j) + " has " + std::to_string(rows[j].size()) +
                       " entries, expected " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[j][i];
  }
  return Subspace::from_spanning_columns(m, tol);
}

}  // namespace pspankit::cli
