#include "mdlsum/candidate.hpp"

namespace mdlsum {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::SlashBurn: return "slashburn";
    case Method::Kcbc: return "kcbc";
    case Method::Louvain: return "louvain";
    case Method::Spectral: return "spectral";
    case Method::Multilevel: return "multilevel";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : kAllMethods)
    if (method_name(m) == name) return m;
  return std::nullopt;
}

}  // namespace mdlsum
