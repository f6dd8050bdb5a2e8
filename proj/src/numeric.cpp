#include "brc/numeric.hpp"

#include "brc/error.hpp"

namespace brc {

std::string to_string(Precision p) { return p == Precision::extended ? "extended" : "standard"; }

Precision precision_from_string(const std::string& s) {
  if (s == "standard") return Precision::standard;
  if (s == "extended") return Precision::extended;
  throw UsageError("precision must be 'standard' or 'extended', got '" + s + "'");
}

}  // namespace brc
