#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "stabgeo/common.hpp"

namespace stabgeo {

struct McBlock {
  double mean = 0;
  double se = 0;
  double z = 0;
  std::size_t n = 0;
};

/// One operation result; the text and JSON renderings share the exact decimal
/// representations (both go through the same number formatter).
struct Report {
  std::string operation;
  nlohmann::json inputs;
  double value = 0;
  double error = 0;
  std::optional<McBlock> mc;
  std::string formula;  // identifier of the identity evaluated
};

std::string format_number(double x);
std::string to_text(const Report& r);
nlohmann::json to_json(const Report& r);

}  // namespace stabgeo
