#include "hqc/dsl.hpp"

#include <ostream>
#include <sstream>

namespace hqc {

namespace {

std::string indexed(char letter, unsigned index, unsigned count) {
  std::string s(1, letter);
  if (count > 1) s += std::to_string(index);
  return s;
}

std::string with_power(const std::string& base, unsigned exponent) {
  return exponent == 1 ? base : base + "^" + std::to_string(exponent);
}

std::string render_letter(const Letter& l, const SymbolTable& table) {
  if (const auto* q = std::get_if<Position>(&l)) return indexed('q', q->mode, table.quantum_modes());
  if (const auto* p = std::get_if<Momentum>(&l)) return indexed('p', p->mode, table.quantum_modes());
  const auto& f = std::get<FuncFactor>(l);
  return table.function_name(f.symbol) + std::string(f.deriv_order, '\'') + "(" +
         pretty(f.arg, table) + ")";
}

// Signed linear pieces of a real rational times an optional name.
void append_signed(std::string& out, const Rational& c, const std::string& name) {
  const bool negative = c < 0;
  const Rational mag = negative ? Rational(-c) : c;
  if (out.empty()) {
    if (negative) out += "-";
  } else {
    out += negative ? " - " : " + ";
  }
  if (name.empty()) {
    out += to_string(mag);
  } else if (mag == 1) {
    out += name;
  } else {
    out += to_string(mag) + "*" + name;
  }
}

// Magnitude text for a real or purely imaginary coefficient, without sign.
std::string magnitude(const Rational& mag, bool imaginary) {
  if (!imaginary) return to_string(mag);
  return mag == 1 ? "i" : to_string(mag) + "*i";
}

}  // namespace

std::string pretty(const LinearArg& arg, const SymbolTable& table) {
  std::string out;
  for (const auto& [m, c] : arg.q) append_signed(out, c, indexed('q', m, table.quantum_modes()));
  for (const auto& [d, c] : arg.x) append_signed(out, c, indexed('x', d, table.classical_dofs()));
  for (const auto& [d, c] : arg.k) append_signed(out, c, indexed('k', d, table.classical_dofs()));
  if (arg.constant != 0 || out.empty()) append_signed(out, arg.constant, "");
  return out;
}

std::string pretty(const HybridExpr& expr) {
  const HybridExpr e = canonicalize(expr);
  if (e.terms().empty()) return "0";
  const SymbolTable& table = *e.table();

  std::string out;
  for (const auto& t : e.terms()) {
    std::vector<std::string> factors;
    for (const auto& [d, n] : t.classical.x) {
      factors.push_back(with_power(indexed('x', d, table.classical_dofs()), n));
    }
    for (const auto& [d, n] : t.classical.k) {
      factors.push_back(with_power(indexed('k', d, table.classical_dofs()), n));
    }
    for (std::size_t i = 0; i < t.word.size();) {
      std::size_t j = i + 1;
      while (j < t.word.size() && t.word[j] == t.word[i]) ++j;
      factors.push_back(with_power(render_letter(t.word[i], table), static_cast<unsigned>(j - i)));
      i = j;
    }

    bool negative = false;
    std::string coeff;
    const Coefficient& c = t.coeff;
    if (c.is_real() || c.re() == 0) {
      const bool imaginary = !c.is_real();
      const Rational& v = imaginary ? c.im() : c.re();
      negative = v < 0;
      const Rational mag = negative ? Rational(-v) : v;
      if (!(mag == 1 && !imaginary && !factors.empty())) coeff = magnitude(mag, imaginary);
    } else {
      std::string inner = to_string(c.re());
      const bool im_negative = c.im() < 0;
      const Rational im_mag = im_negative ? Rational(-c.im()) : c.im();
      inner += (im_negative ? " - " : " + ") + magnitude(im_mag, true);
      coeff = "(" + inner + ")";
    }

    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string body = coeff;
    for (const auto& f : factors) {
      if (!body.empty()) body += "*";
      body += f;
    }
    out += body;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const HybridExpr& e) { return os << pretty(e); }

}  // namespace hqc
