#include "ingarch/types.hpp"

#include <algorithm>
#include <cctype>

namespace ingarch {

std::string_view family_name(Family family) {
  switch (family) {
    case Family::NoGe: return "noge";
    case Family::GP: return "gp";
    case Family::NB: return "nb";
    case Family::Poisson: return "poisson";
  }
  return "unknown";
}

std::string_view family_display_name(Family family) {
  switch (family) {
    case Family::NoGe: return "NoGe-INGARCH";
    case Family::GP: return "GP-INGARCH";
    case Family::NB: return "NB-INGARCH";
    case Family::Poisson: return "PINGARCH";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "noge") return Family::NoGe;
  if (lower == "gp") return Family::GP;
  if (lower == "nb") return Family::NB;
  if (lower == "poisson" || lower == "pois") return Family::Poisson;
  throw InvalidParameter("unknown family '" + std::string(name) + "' (expected noge|gp|nb|poisson)");
}

std::string_view dispersion_name(Family family) {
  switch (family) {
    case Family::NoGe: return "phi";
    case Family::GP: return "kappa";
    case Family::NB: return "n";
    case Family::Poisson: return "";
  }
  return "";
}

}  // namespace ingarch
