#pragma once

#include <string>

#include "gsflow/flow_model.hpp"

namespace gsflow {

inline constexpr int kSchemaVersion = 1;

// Parses a JSON flow document. Throws Error(Validation) with field context on malformed input.
// Semantic checks are left to validate_flow.
FlowSpec parse_flow(const std::string& document);

// Writes the normalized form of a valid flow.
std::string serialize_flow(const FlowSpec& f);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
FlowSpec load_flow(const std::string& path);

}  // namespace gsflow
