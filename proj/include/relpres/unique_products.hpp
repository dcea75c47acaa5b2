#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relpres/group.hpp"

namespace relpres {

// Duplicate-free finite subset of one backend group.
struct FiniteSubset {
  GroupBackend backend;
  std::vector<Element> elements;
};

// Throws MixedBackend / InvalidElement on bad input or duplicates.
void validate_subset(const FiniteSubset& s);

struct ProductEntry {
  Element product;
  int count = 0;                    // number of (x, y) decompositions
  int x_index = -1, y_index = -1;   // witness when count == 1
};

struct UniqueProductsReport {
  std::vector<ProductEntry> table;  // ordered by canonical element key
  std::vector<ProductEntry> uniques;
  size_t pair_count = 0;            // |X| * |Y|
};

// Exhaustive decomposition count of every element of XY.
UniqueProductsReport unique_products(const FiniteSubset& x, const FiniteSubset& y);

struct StrongUpReport {
  enum class Verdict { NotApplicable, True, False } verdict = Verdict::NotApplicable;
  std::optional<ProductEntry> witness1, witness2;  // distinct y components
  bool x_also_distinct = false;                    // reported for both readings
};

// Strong unique-product instance check: with |Y| >= 2, at least two uniquely
// decomposable products with distinct y parts. |Y| < 2 is NotApplicable.
StrongUpReport has_strong_up(const FiniteSubset& x, const FiniteSubset& y);

}  // namespace relpres
