#include "relpres/unique_products.hpp"

#include <algorithm>
#include <map>

namespace relpres {

void validate_subset(const FiniteSubset& s) {
  if (s.elements.empty())
    throw Error(ErrorCode::InvalidElement, "subset must be nonempty");
  std::map<std::string, int> seen;
  for (const Element& e : s.elements) {
    s.backend.check_element(e);
    if (!seen.emplace(s.backend.element_key(e), 1).second)
      throw Error(ErrorCode::InvalidElement, "subset has duplicate elements");
  }
}

UniqueProductsReport unique_products(const FiniteSubset& x, const FiniteSubset& y) {
  validate_subset(x);
  validate_subset(y);
  if (x.backend.kind() != y.backend.kind())
    throw Error(ErrorCode::MixedBackend, "X and Y use different backends");

  std::map<std::string, ProductEntry> table;
  for (size_t i = 0; i < x.elements.size(); ++i) {
    for (size_t j = 0; j < y.elements.size(); ++j) {
      Element p = x.backend.multiply(x.elements[i], y.elements[j]);
      std::string key = x.backend.element_key(p);
      auto [it, fresh] = table.try_emplace(key);
      if (fresh) {
        it->second.product = p;
        it->second.x_index = static_cast<int>(i);
        it->second.y_index = static_cast<int>(j);
      }
      ++it->second.count;
    }
  }
  UniqueProductsReport rep;
  rep.pair_count = x.elements.size() * y.elements.size();
  for (auto& [key, entry] : table) {
    if (entry.count != 1) {
      entry.x_index = -1;
      entry.y_index = -1;
    }
    rep.table.push_back(entry);
    if (entry.count == 1) rep.uniques.push_back(entry);
  }
  return rep;
}

StrongUpReport has_strong_up(const FiniteSubset& x, const FiniteSubset& y) {
  StrongUpReport rep;
  if (y.elements.size() < 2) {
    validate_subset(x);
    validate_subset(y);
    rep.verdict = StrongUpReport::Verdict::NotApplicable;
    return rep;
  }
  UniqueProductsReport up = unique_products(x, y);
  for (const ProductEntry& e : up.uniques) {
    if (!rep.witness1) {
      rep.witness1 = e;
      continue;
    }
    if (e.y_index != rep.witness1->y_index) {
      rep.witness2 = e;
      break;
    }
  }
  if (rep.witness1 && rep.witness2) {
    rep.verdict = StrongUpReport::Verdict::True;
    rep.x_also_distinct = rep.witness1->x_index != rep.witness2->x_index;
  } else {
    rep.verdict = StrongUpReport::Verdict::False;
    rep.witness2.reset();
  }
  return rep;
}

}  // namespace relpres
