#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "relpres/errors.hpp"

namespace relpres {

enum class BackendKind { FreeAbelian, Free, FiniteTable, FormalSymbols };

// Element values are backend-tagged:
//   FreeAbelian   -> integer vector (additive)
//   Free/Formal   -> freely reduced word of signed symbol ids (+k / -k, 1-based)
//   FiniteTable   -> element index
using ZVec = std::vector<long long>;
using SymWord = std::vector<int32_t>;

struct Element {
  std::variant<ZVec, SymWord, int> value;

  Element() : value(ZVec{}) {}
  explicit Element(ZVec v) : value(std::move(v)) {}
  explicit Element(SymWord w) : value(std::move(w)) {}
  explicit Element(int idx) : value(idx) {}

  const ZVec& zvec() const { return std::get<ZVec>(value); }
  const SymWord& symword() const { return std::get<SymWord>(value); }
  int index() const { return std::get<int>(value); }
};

struct OrderResult {
  bool finite = false;
  long long value = 0;  // meaningful only when finite
  static OrderResult infinite() { return {false, 0}; }
  static OrderResult of(long long n) { return {true, n}; }
};

// Canonical decomposition x = rep + power * t in Z^n (rep depends only on
// the coset x<t>). See coset_decompose below.
struct CosetDecomposition {
  ZVec rep;
  long long power = 0;
};

// A concrete group with decidable word problem. Immutable after
// construction; all operations are pure.
class GroupBackend {
public:
  static GroupBackend free_abelian(int rank);
  static GroupBackend free_group(std::vector<std::string> basis);
  // Table entries are 0-based element indices; identity and inverses are
  // derived, and the full group axioms are verified (size capped at 256).
  static GroupBackend finite_table(std::vector<std::vector<int>> table);
  // Formally distinct symbols: elements multiply freely, s * s^-1 = 1 is the
  // only relation. `phi` is an optional formal endomorphism on symbols.
  static GroupBackend formal(std::vector<std::string> alphabet,
                             std::map<std::string, std::string> phi = {});

  BackendKind kind() const { return kind_; }
  int rank() const { return rank_; }
  int table_size() const { return static_cast<int>(table_.size()); }
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::vector<std::string>& symbols() const { return symbols_; }

  Element identity() const;
  bool is_identity(const Element& g) const;
  bool equal(const Element& a, const Element& b) const;
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& g) const;
  Element power(const Element& g, long long k) const;
  OrderResult order(const Element& g) const;

  // Free / FormalSymbols helpers.
  Element symbol_element(const std::string& name, long long exp = 1) const;
  std::optional<int> symbol_id(const std::string& name) const;  // 1-based
  const std::string& symbol_name(int id) const;                 // id >= 1
  bool has_phi() const { return !phi_.empty(); }
  Element apply_phi(const Element& g) const;

  // FreeAbelian only. Representatives come from extending t to a basis by
  // integer row reduction; the coordinate along t's direction is reduced
  // into [0, gcd(t)). Deterministic, and rep + power*t == x exactly.
  CosetDecomposition coset_decompose(const Element& t, const Element& x) const;

  // Canonical byte string for ordering / hashing elements of this backend.
  std::string element_key(const Element& g) const;
  // Human-readable form ("(1,2)", "a b^-1", "3").
  std::string element_str(const Element& g) const;

  void check_element(const Element& g) const;  // throws MixedBackend / InvalidElement

  // Placeholder state (rank-0 free abelian); assign a factory result before use.
  GroupBackend() = default;

private:
  BackendKind kind_ = BackendKind::FreeAbelian;
  int rank_ = 0;                          // FreeAbelian
  std::vector<std::vector<int>> table_;   // FiniteTable
  std::vector<int> inverse_;              // FiniteTable
  int identity_ = 0;                      // FiniteTable
  std::vector<std::string> symbols_;      // Free / FormalSymbols
  std::map<std::string, int> symbol_ids_; // name -> 1-based id
  std::vector<int> phi_;                  // per-symbol image id (FormalSymbols), empty if none
};

// Canonical form of a product of elements with integer exponents.
// Throws MixedBackend if an operand does not belong to the backend.
Element evaluate(const GroupBackend& backend,
                 const std::vector<std::pair<Element, long long>>& expr);

SymWord reduce_symword(const SymWord& w);

}  // namespace relpres
