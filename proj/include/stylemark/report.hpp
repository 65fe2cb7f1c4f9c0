#pragma once

#include "stylemark/profile.hpp"

#include <map>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

namespace stylemark {

// Header row "label,<labels...>", then one row per label; values "%.6f".
std::string matrix_to_csv(const SimilarityMatrix& m);
// Inverse of matrix_to_csv; validates the result to 6-decimal tolerance.
SimilarityMatrix matrix_from_csv(std::string_view csv);

nlohmann::ordered_json matrix_to_json(const SimilarityMatrix& m);

// Heatmap: one shaded cell per entry with its value printed, labels on both axes.
std::string matrix_to_svg(const SimilarityMatrix& m, std::string_view title = "Play style similarity");

// "player,min,max,avg"; values rounded to 6 decimals, trailing zeros dropped.
std::string consistency_to_csv(std::span<const ConsistencyReport> rows);

// "label,similarity_with_ai,avg_similarity_with_humans,median_similarity_with_humans";
// undefined human statistics are left empty.
std::string cross_group_to_csv(std::span<const CrossGroupRow> rows);

// {"label": "human" | "ai", ...}
std::map<std::string, Group, std::less<>> groups_from_json(const nlohmann::json& j);

std::string ranking_to_csv(const IdentificationResult& r);

// "player,same,cross,gap" with "%.6f" values.
std::string separation_to_csv(std::span<const SeparationRow> rows);

// "player,queries,correct,accuracy", then an "all" row.
std::string identification_to_csv(const LeaveOneOutResult& r);
// "actual,<predicted labels...>" with match counts.
std::string confusion_to_csv(const LeaveOneOutResult& r);

}  // namespace stylemark
