#include <random>
#include <set>

#include "doctest.h"
#include "relpres/unique_products.hpp"

using namespace relpres;

namespace {

FiniteSubset zset(std::vector<long long> xs) {
  FiniteSubset s;
  s.backend = GroupBackend::free_abelian(1);
  for (long long x : xs) s.elements.push_back(Element(ZVec{x}));
  return s;
}

FiniteSubset z2_full() {
  std::vector<std::vector<int>> t = {{0, 1}, {1, 0}};
  FiniteSubset s;
  s.backend = GroupBackend::finite_table(t);
  s.elements = {Element(0), Element(1)};
  return s;
}

}  // namespace

TEST_CASE("unique products in Z") {
  auto rep = unique_products(zset({0, 1}), zset({0, 2}));
  CHECK(rep.pair_count == 4);
  CHECK(rep.table.size() == 4);   // products 0,1,2,3
  CHECK(rep.uniques.size() == 4); // all unique

  auto single = unique_products(zset({5}), zset({7}));
  CHECK(single.uniques.size() == 1);
  CHECK(single.table[0].count == 1);
}

TEST_CASE("full finite group has no unique products") {
  auto rep = unique_products(z2_full(), z2_full());
  CHECK(rep.uniques.empty());
  for (const auto& e : rep.table) CHECK(e.count == 2);
}

TEST_CASE("strong unique product verdicts") {
  auto r1 = has_strong_up(zset({0, 1}), zset({0, 2}));
  CHECK(r1.verdict == StrongUpReport::Verdict::True);
  REQUIRE(r1.witness1.has_value());
  REQUIRE(r1.witness2.has_value());
  CHECK(r1.witness1->y_index != r1.witness2->y_index);

  auto r2 = has_strong_up(zset({0, 1, 5}), zset({3}));
  CHECK(r2.verdict == StrongUpReport::Verdict::NotApplicable);

  auto r3 = has_strong_up(z2_full(), z2_full());
  CHECK(r3.verdict == StrongUpReport::Verdict::False);
}

TEST_CASE("count table sums to |X||Y| and inversion duality holds") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<long long> coord(-10, 10);
  std::uniform_int_distribution<int> size(1, 6);
  auto b = GroupBackend::free_abelian(2);

  auto random_subset = [&]() {
    FiniteSubset s;
    s.backend = b;
    std::set<std::string> keys;
    int want = size(rng);
    while (static_cast<int>(s.elements.size()) < want) {
      Element e{ZVec{coord(rng), coord(rng)}};
      if (keys.insert(b.element_key(e)).second) s.elements.push_back(e);
    }
    return s;
  };
  auto invert = [&](const FiniteSubset& s) {
    FiniteSubset r;
    r.backend = b;
    for (const auto& e : s.elements) r.elements.push_back(b.inverse(e));
    return r;
  };

  for (int trial = 0; trial < 300; ++trial) {
    FiniteSubset X = random_subset(), Y = random_subset();
    auto rep = unique_products(X, Y);
    size_t total = 0;
    for (const auto& e : rep.table) total += static_cast<size_t>(e.count);
    CHECK(total == rep.pair_count);

    // g uniquely decomposable in XY iff g^-1 is in Y^-1 X^-1
    auto dual = unique_products(invert(Y), invert(X));
    std::set<std::string> uniq, dual_uniq;
    for (const auto& e : rep.uniques) uniq.insert(b.element_key(b.inverse(e.product)));
    for (const auto& e : dual.uniques) dual_uniq.insert(b.element_key(e.product));
    CHECK(uniq == dual_uniq);
  }
}

TEST_CASE("duplicates and mixed backends are rejected") {
  FiniteSubset dup = zset({1, 1});
  CHECK_THROWS_AS(validate_subset(dup), Error);

  FiniteSubset x = zset({0});
  FiniteSubset y = z2_full();
  CHECK_THROWS_AS(unique_products(x, y), Error);
}
