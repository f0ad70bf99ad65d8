#pragma once

#include <string>

#include "asymval/evaluate.hpp"
#include "asymval/plan.hpp"

namespace asymval {

constexpr int kSchemaVersion = 1;

/// Canonical JSON text (sorted keys, two-space indent, trailing newline) with a
/// "sha256" field over the same document minus that field.
std::string plan_to_json(const FunctionPlan& plan);
/// Checks schema, digest and every plan invariant. Throws FormatError or
/// PlanInvariantError.
FunctionPlan plan_from_json(const std::string& text);

/// Ray files embed their plan so they can be evaluated on their own.
std::string ray_to_json(const RayPlan& ray);
RayPlan ray_from_json(const std::string& text);

void save_plan(const std::string& path, const FunctionPlan& plan);
FunctionPlan load_plan(const std::string& path);
void save_ray(const std::string& path, const RayPlan& ray);
RayPlan load_ray(const std::string& path);

/// Writes to a sibling temp file, then renames over `path`.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

std::string sha256_hex(const std::string& data);

}  // namespace asymval
