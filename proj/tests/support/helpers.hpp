#pragma once

#include "hqc/dsl.hpp"
#include "hqc/oracle.hpp"

#include <string>

namespace hqc::testing {

/// One quantum mode, one classical dof, function V.
inline TablePtr single_table() {
  static const TablePtr table = make_table(1, 1, {{"V", true}});
  return table;
}

inline HybridExpr ex(const std::string& text, const TablePtr& table = single_table()) {
  return parse(text, table);
}

inline HybridExpr raw(const std::string& text, const TablePtr& table = single_table()) {
  return parse_raw(text, table);
}

inline std::string show(const HybridExpr& e) { return pretty(e); }

}  // namespace hqc::testing
