#include "hqc/symbols.hpp"

#include "hqc/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace hqc {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

bool is_reserved_name(std::string_view name) {
  static constexpr std::array<std::string_view, 6> builtins = {"i",  "dag",      "comm",
                                                               "pb", "anderson", "alex"};
  if (std::find(builtins.begin(), builtins.end(), name) != builtins.end()) return true;
  if (name.empty()) return false;
  if (name[0] != 'q' && name[0] != 'p' && name[0] != 'x' && name[0] != 'k') return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

SymbolTable::SymbolTable(unsigned quantum_modes, unsigned classical_dofs,
                         std::vector<FunctionSymbol> functions)
    : quantum_modes_(quantum_modes),
      classical_dofs_(classical_dofs),
      functions_(std::move(functions)) {
  if (quantum_modes_ == 0) throw ValidationError("quantum_modes must be positive");
  if (classical_dofs_ == 0) throw ValidationError("classical_dofs must be positive");
  for (std::size_t i = 0; i < functions_.size(); ++i) {
    const auto& f = functions_[i];
    if (!is_identifier(f.name)) throw ValidationError("invalid function name '" + f.name + "'");
    if (is_reserved_name(f.name)) throw ValidationError("function name '" + f.name + "' is reserved");
    if (!f.real) {
      throw ValidationError("function '" + f.name + "' must be declared real");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (functions_[j].name == f.name) {
        throw ValidationError("duplicate function name '" + f.name + "'");
      }
    }
  }
}

std::optional<std::size_t> SymbolTable::find_function(std::string_view name) const {
  for (std::size_t i = 0; i < functions_.size(); ++i) {
    if (functions_[i].name == name) return i;
  }
  return std::nullopt;
}

TablePtr make_table(unsigned quantum_modes, unsigned classical_dofs,
                    std::vector<FunctionSymbol> functions) {
  return std::make_shared<const SymbolTable>(quantum_modes, classical_dofs, std::move(functions));
}

bool same_table(const TablePtr& a, const TablePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace hqc
