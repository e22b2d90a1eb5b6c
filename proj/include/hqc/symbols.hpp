#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hqc {

struct FunctionSymbol {
  std::string name;
  bool real = true;

  friend bool operator==(const FunctionSymbol&, const FunctionSymbol&) = default;
};

/// Declares the generators of a hybrid algebra: quantum pairs (q_m, p_m) for
/// m = 1..quantum_modes, classical pairs (x_d, k_d) for d = 1..classical_dofs,
/// and real function symbols. Immutable once constructed.
class SymbolTable {
 public:
  SymbolTable(unsigned quantum_modes, unsigned classical_dofs,
              std::vector<FunctionSymbol> functions = {});

  unsigned quantum_modes() const { return quantum_modes_; }
  unsigned classical_dofs() const { return classical_dofs_; }
  const std::vector<FunctionSymbol>& functions() const { return functions_; }

  std::optional<std::size_t> find_function(std::string_view name) const;
  const std::string& function_name(std::size_t id) const { return functions_.at(id).name; }

  friend bool operator==(const SymbolTable&, const SymbolTable&) = default;

 private:
  unsigned quantum_modes_;
  unsigned classical_dofs_;
  std::vector<FunctionSymbol> functions_;
};

using TablePtr = std::shared_ptr<const SymbolTable>;

TablePtr make_table(unsigned quantum_modes, unsigned classical_dofs,
                    std::vector<FunctionSymbol> functions = {});

/// Names the expression language reserves: i, q/p/x/k with optional index,
/// and the builtin calls.
bool is_reserved_name(std::string_view name);

bool same_table(const TablePtr& a, const TablePtr& b);

}  // namespace hqc
