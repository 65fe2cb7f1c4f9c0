#include "stylemark/report.hpp"

#include "stylemark/errors.hpp"
#include "stylemark/format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace stylemark {

namespace {

bool needs_quotes(std::string_view s) {
  return s.find_first_of(",\"\n\r") != std::string_view::npos;
}

std::string csv_field(std::string_view s) {
  if (!needs_quotes(s)) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ParseError(line_no, "unterminated quoted field");
  fields.push_back(std::move(cur));
  return fields;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string matrix_to_csv(const SimilarityMatrix& m) {
  std::string out = "label";
  for (const auto& l : m.labels) out += "," + csv_field(l);
  out += '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += csv_field(m.labels[i]);
    for (std::size_t j = 0; j < m.size(); ++j) out += "," + fixed6(m.at(i, j));
    out += '\n';
  }
  return out;
}

SimilarityMatrix matrix_from_csv(std::string_view csv) {
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < csv.size()) {
    auto end = csv.find('\n', pos);
    if (end == std::string_view::npos) end = csv.size();
    auto line = csv.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    rows.push_back(split_csv_line(line, line_no));
  }
  if (rows.empty()) throw ValidationError("matrix CSV is empty");
  SimilarityMatrix m;
  m.labels.assign(rows[0].begin() + 1, rows[0].end());
  const auto n = m.labels.size();
  if (rows.size() != n + 1) throw ValidationError("matrix CSV must have one row per label");
  m.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i + 1];
    if (row.size() != n + 1) throw ParseError(i + 2, "expected " + std::to_string(n + 1) + " fields");
    if (row[0] != m.labels[i]) throw ParseError(i + 2, "row label does not match header order");
    for (std::size_t j = 0; j < n; ++j) {
      const auto& f = row[j + 1];
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(v)) {
        throw ParseError(i + 2, "bad number \"" + f + "\"");
      }
      m.at(i, j) = v;
    }
  }
  m.validate(1e-6);
  return m;
}

nlohmann::ordered_json matrix_to_json(const SimilarityMatrix& m) {
  nlohmann::ordered_json j;
  j["labels"] = m.labels;
  auto& rows = j["values"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < m.size(); ++k) row.push_back(m.at(i, k));
    rows.push_back(std::move(row));
  }
  return j;
}

std::string matrix_to_svg(const SimilarityMatrix& m, std::string_view title) {
  const int cell = 56;
  std::size_t longest = 0;
  for (const auto& l : m.labels) longest = std::max(longest, l.size());
  const int margin = 20 + static_cast<int>(longest) * 7;
  const int n = static_cast<int>(m.size());
  const int width = margin + n * cell + 20;
  const int height = margin + n * cell + 40;

  std::string out;
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                "viewBox=\"0 0 %d %d\" font-family=\"sans-serif\">\n",
                width, height, width, height);
  out += buf;
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<text x=\"%d\" y=\"20\" font-size=\"14\">", margin);
  out += buf;
  out += xml_escape(title);
  out += "</text>\n";
  for (int i = 0; i < n; ++i) {
    const auto label = xml_escape(m.labels[static_cast<std::size_t>(i)]);
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%d\" font-size=\"11\" text-anchor=\"end\">",
                  margin - 6, margin + i * cell + cell / 2 + 4);
    out += buf;
    out += label + "</text>\n";
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%d\" font-size=\"11\" text-anchor=\"start\" "
                  "transform=\"rotate(-45 %d %d)\">",
                  margin + i * cell + cell / 2, margin - 6, margin + i * cell + cell / 2, margin - 6);
    out += buf;
    out += label + "</text>\n";
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = std::clamp(m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)), 0.0, 1.0);
      // White (0) to dark blue (1).
      const int r = static_cast<int>(std::lround(255 - v * (255 - 8)));
      const int g = static_cast<int>(std::lround(255 - v * (255 - 48)));
      const int b = static_cast<int>(std::lround(255 - v * (255 - 107)));
      const int x = margin + j * cell;
      const int y = margin + i * cell;
      std::snprintf(buf, sizeof buf,
                    "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"#%02x%02x%02x\" "
                    "stroke=\"#cccccc\"/>\n",
                    x, y, cell, cell, r, g, b);
      out += buf;
      std::snprintf(buf, sizeof buf,
                    "<text x=\"%d\" y=\"%d\" font-size=\"11\" text-anchor=\"middle\" fill=\"%s\">%.2f</text>\n",
                    x + cell / 2, y + cell / 2 + 4, v > 0.55 ? "white" : "black", v);
      out += buf;
    }
  }
  out += "</svg>\n";
  return out;
}

std::string consistency_to_csv(std::span<const ConsistencyReport> rows) {
  std::string out = "player,min,max,avg\n";
  for (const auto& r : rows) {
    out += csv_field(r.player_id) + "," + trimmed6(r.min) + "," + trimmed6(r.max) + "," + trimmed6(r.avg) + "\n";
  }
  return out;
}

std::string cross_group_to_csv(std::span<const CrossGroupRow> rows) {
  std::string out = "label,similarity_with_ai,avg_similarity_with_humans,median_similarity_with_humans\n";
  for (const auto& r : rows) {
    out += csv_field(r.label) + ",";
    out += trimmed6(r.similarity_with_ai) + ",";
    if (r.avg_with_humans) out += trimmed6(*r.avg_with_humans);
    out += ",";
    if (r.median_with_humans) out += trimmed6(*r.median_with_humans);
    out += "\n";
  }
  return out;
}

std::map<std::string, Group, std::less<>> groups_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("groups file must be a JSON object of label -> \"human\"|\"ai\"");
  std::map<std::string, Group, std::less<>> out;
  for (const auto& [label, v] : j.items()) {
    if (v == "human") {
      out[label] = Group::Human;
    } else if (v == "ai") {
      out[label] = Group::Ai;
    } else {
      throw ValidationError("group of \"" + label + "\" must be \"human\" or \"ai\"");
    }
  }
  return out;
}

std::string ranking_to_csv(const IdentificationResult& r) {
  std::string out = "rank,label,similarity\n";
  for (std::size_t i = 0; i < r.ranking.size(); ++i) {
    out += std::to_string(i + 1) + "," + csv_field(r.ranking[i].first) + "," + fixed6(r.ranking[i].second) + "\n";
  }
  return out;
}

std::string separation_to_csv(std::span<const SeparationRow> rows) {
  std::string out = "player,same,cross,gap\n";
  for (const auto& r : rows) {
    out += csv_field(r.player_id) + "," + fixed6(r.same) + "," + fixed6(r.cross) + "," + fixed6(r.gap()) + "\n";
  }
  return out;
}

std::string identification_to_csv(const LeaveOneOutResult& r) {
  std::string out = "player,queries,correct,accuracy\n";
  for (std::size_t i = 0; i < r.players.size(); ++i) {
    int queries = 0;
    for (int c : r.confusion[i]) queries += c;
    out += csv_field(r.players[i]) + "," + std::to_string(queries) + "," + std::to_string(r.confusion[i][i]) +
           "," + fixed6(r.accuracy_of(r.players[i])) + "\n";
  }
  out += "all," + std::to_string(r.total()) + "," + std::to_string(r.correct()) + "," + fixed6(r.accuracy()) + "\n";
  return out;
}

std::string confusion_to_csv(const LeaveOneOutResult& r) {
  std::string out = "actual";
  for (const auto& p : r.players) out += "," + csv_field(p);
  out += "\n";
  for (std::size_t i = 0; i < r.players.size(); ++i) {
    out += csv_field(r.players[i]);
    for (int c : r.confusion[i]) out += "," + std::to_string(c);
    out += "\n";
  }
  return out;
}

}  // namespace stylemark
