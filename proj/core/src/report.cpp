#include "stabgeo/report.hpp"

#include <sstream>

namespace stabgeo {

std::string format_number(double x) {
  // Shortest round-trip representation, shared by both renderings.
  return nlohmann::json(x).dump();
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  os << r.operation;
  if (!r.inputs.is_null() && !r.inputs.empty()) os << " " << r.inputs.dump();
  os << "\n  value = " << format_number(r.value);
  if (r.error > 0) os << "  (error estimate " << format_number(r.error) << ")";
  os << "\n";
  if (r.mc.has_value()) {
    os << "  mc: mean = " << format_number(r.mc->mean) << ", se = " << format_number(r.mc->se)
       << ", z = " << format_number(r.mc->z) << ", n = " << r.mc->n << "\n";
  }
  if (!r.formula.empty()) os << "  formula: " << r.formula << "\n";
  return os.str();
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["operation"] = r.operation;
  j["inputs"] = r.inputs;
  j["value"] = r.value;
  j["error"] = r.error;
  if (r.mc.has_value()) {
    j["mc"]["mean"] = r.mc->mean;
    j["mc"]["se"] = r.mc->se;
    j["mc"]["z"] = r.mc->z;
    j["mc"]["n"] = r.mc->n;
  }
  if (!r.formula.empty()) j["formula"] = r.formula;
  return j;
}

}  // namespace stabgeo
