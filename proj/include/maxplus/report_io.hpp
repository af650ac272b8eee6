#pragma once

/**
 * @file report_io.hpp
 * @brief JSON and CSV records for bound reports and growth-rate estimates.
 *
 * Numbers are written with 6 significant digits in both formats, so a
 * CSV cell and the matching JSON number denote the same double.
 */

#include <string>
#include <vector>

#include <json.hpp>

#include "maxplus/bounds.hpp"
#include "maxplus/growth.hpp"

namespace maxplus {

inline constexpr const char* kBoundsCsvHeader = "kind,l,m,value,stderr,method";

/// x rounded to 6 significant digits.
[[nodiscard]] double round_sig6(double x);
/// "%.6g" rendering of x.
[[nodiscard]] std::string format_sig6(double x);

[[nodiscard]] nlohmann::json report_to_json(const BoundReport& report);
/// Throws std::invalid_argument on a malformed record.
[[nodiscard]] BoundReport report_from_json(const nlohmann::json& record);

/// One CSV line (no newline) in kBoundsCsvHeader column order.
[[nodiscard]] std::string report_to_csv(const BoundReport& report);

[[nodiscard]] nlohmann::json best_to_json(const BestBounds& best);
/// Rows "best_lower,..." and "best_upper,..." for the sides that exist.
[[nodiscard]] std::vector<std::string> best_to_csv(const BestBounds& best);

inline constexpr const char* kLambdaCsvHeader = "lambda_hat,stderr,replications,horizon,per_replicate";

[[nodiscard]] nlohmann::json lambda_to_json(const LambdaEstimate& est);
[[nodiscard]] LambdaEstimate lambda_from_json(const nlohmann::json& record);
/// per_replicate values are joined with ';' inside the last column.
[[nodiscard]] std::string lambda_to_csv(const LambdaEstimate& est);

}  // namespace maxplus
