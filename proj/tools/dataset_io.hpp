#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "fjump/jump_test.hpp"
#include "fjump/metric_space.hpp"
#include "fjump/simulation.hpp"

namespace fjump::io {

/// Loads a dataset from CSV or JSON. CSV layout: header row with an `x`
/// column followed by the object columns (density: q_1..q_m; covariance
/// and network: a_11..a_pp row-major; sphere: c_1..c_k compositions that
/// are square-root transformed on load). JSON layout:
///   {"space": "...", "x": [...], "objects": [[...], ...]}
/// Rows that fail to decode raise errc::invalid_input naming the line.
Dataset load_dataset(const std::string& path, const std::string& format,
                     Space space);

nlohmann::json object_to_json(const MetricObject& obj);
MetricObject object_from_json(const nlohmann::json& j, Space space);

nlohmann::json result_to_json(const TestResult& res);
TestResult result_from_json(const nlohmann::json& j, Space space);

}  // namespace fjump::io
