#pragma once

// Score fixtures for the consistency and cross-group tables. The recordings behind the
// human rows are not available, so the tables are checked as arithmetic over these.

#include "stylemark/profile.hpp"

#include <string>
#include <vector>

namespace fixtures {

struct ConsistencyRow {
  std::string player;
  std::vector<double> scores;  // every pairwise similarity among 4 per-opponent profiles
  double min, max, avg;        // printed row
};

// Six pairwise scores per player, chosen so that the printed min, max and average hold.
inline const std::vector<ConsistencyRow>& consistency_rows() {
  static const std::vector<ConsistencyRow> rows{
      {"AI-normal", {0.76, 0.98, 0.88, 0.88, 0.89, 0.89}, 0.76, 0.98, 0.88},
      {"Ippo", {0.61, 0.93, 0.84, 0.84, 0.85, 0.85}, 0.61, 0.93, 0.82},
      {"Kaori", {0.70, 0.94, 0.86, 0.86, 0.87, 0.87}, 0.70, 0.94, 0.85},
      {"Ryoya", {0.69, 0.99, 0.85, 0.85, 0.86, 0.86}, 0.69, 0.99, 0.85},
      {"Riku", {0.70, 0.88, 0.80, 0.80, 0.81, 0.81}, 0.70, 0.88, 0.80},
  };
  return rows;
}

// Generalized-profile similarities. The AI column is the printed "similarity with AI";
// the human pairs are the unique values consistent with every human row's mean and median.
inline stylemark::SimilarityMatrix cross_group_matrix() {
  stylemark::SimilarityMatrix m;
  m.labels = {"AI", "Ippo", "Kaori", "Ryoya", "Riku"};
  m.values = {
      1.00, 0.54, 0.38, 0.73, 0.18,  //
      0.54, 1.00, 0.68, 0.68, 0.59,  //
      0.38, 0.68, 1.00, 0.62, 0.29,  //
      0.73, 0.68, 0.62, 1.00, 0.44,  //
      0.18, 0.59, 0.29, 0.44, 1.00,  //
  };
  return m;
}

inline const std::map<std::string, stylemark::Group, std::less<>>& cross_group_groups() {
  using stylemark::Group;
  static const std::map<std::string, Group, std::less<>> g{
      {"AI", Group::Ai}, {"Ippo", Group::Human}, {"Kaori", Group::Human}, {"Ryoya", Group::Human}, {"Riku", Group::Human}};
  return g;
}

struct CrossGroupExpected {
  std::string label;
  double with_ai, avg_humans, median_humans;
};

// Printed rows, verbatim.
inline const std::vector<CrossGroupExpected>& cross_group_rows() {
  static const std::vector<CrossGroupExpected> rows{
      {"AI", 1.0, 0.46, 0.46},     {"Ippo", 0.54, 0.65, 0.68},  {"Kaori", 0.38, 0.53, 0.62},
      {"Ryoya", 0.73, 0.58, 0.62}, {"Riku", 0.18, 0.44, 0.44},
  };
  return rows;
}

}  // namespace fixtures
