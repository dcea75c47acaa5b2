#include <random>

#include "doctest.h"
#include "relpres/presentation.hpp"

using namespace relpres;

namespace {

RelativePresentation ordinary_presentation(std::vector<Syllable> raw) {
  RelativePresentation p;
  p.alphabet.add_factor("G", GroupBackend::free_abelian(2));
  p.alphabet.add_free_gen("t");
  p.relator = reduce(p.alphabet, raw);
  return p;
}

Syllable g(long long x, long long y) { return FactorSyllable{"G", Element(ZVec{x, y})}; }
Syllable t(long long e) { return FreeSyllable{"t", e}; }

}  // namespace

TEST_CASE("unimodularity") {
  auto p1 = ordinary_presentation({g(1, 0), t(1), g(0, 1), t(1), g(2, 2), t(-1)});
  CHECK(is_unimodular(p1, "t"));

  auto p0 = ordinary_presentation({g(1, 0), t(1), g(0, 1), t(-1), g(1, 1)});
  CHECK_FALSE(is_unimodular(p0, "t"));

  auto pm = ordinary_presentation({g(1, 0), t(-1), g(0, 1), t(1), g(2, 2), t(-1)});
  CHECK(is_unimodular(pm, "t"));

  // inverting the relator keeps unimodularity
  RelativePresentation inv_p = p1;
  inv_p.relator = inverse(p1.alphabet, p1.relator);
  CHECK(is_unimodular(inv_p, "t") == is_unimodular(p1, "t"));
}

namespace {

RelativePresentation generalized(int rank, std::vector<std::pair<ZVec, ZVec>> gt_pairs) {
  // relator g_1 t_1 g_2 t_2 ... over G = Z^2 and T = Z^rank
  RelativePresentation p;
  p.alphabet.add_factor("G", GroupBackend::free_abelian(2));
  p.alphabet.add_factor("T", GroupBackend::free_abelian(rank));
  p.t_factor = "T";
  std::vector<Syllable> raw;
  for (auto& [gv, tv] : gt_pairs) {
    raw.push_back(FactorSyllable{"G", Element(gv)});
    raw.push_back(FactorSyllable{"T", Element(tv)});
  }
  p.relator = reduce(p.alphabet, raw);
  return p;
}

}  // namespace

TEST_CASE("generalized unimodularity report") {
  auto p = generalized(2, {{{1, 0}, {1, 0}}, {{0, 1}, {0, 1}}});
  auto r = generalized_unimodular_report(p);
  CHECK(r.cond1 == Cert::Certified);
  CHECK(r.cond2 == Cert::Certified);
  CHECK(r.cond3 == Cert::Certified);
  CHECK(r.verdict);
  CHECK(r.t_product.zvec() == ZVec{1, 1});

  auto pz = generalized(1, {{{1, 0}, {1}}, {{0, 1}, {-1}}});
  auto rz = generalized_unimodular_report(pz);
  CHECK(rz.cond1 == Cert::Failed);
  CHECK_FALSE(rz.verdict);

  auto pg = generalized(2, {{{1, 0}, {1, 1}}, {{0, 1}, {1, 1}}});
  auto rg = generalized_unimodular_report(pg);
  CHECK(rg.gcd == 2);
  CHECK(rg.cond3 == Cert::Unverified);
  CHECK_FALSE(rg.verdict);
}

TEST_CASE("generalized report with unsupported T") {
  RelativePresentation p;
  p.alphabet.add_factor("G", GroupBackend::free_abelian(2));
  p.alphabet.add_factor("T", GroupBackend::free_group({"s"}));
  p.t_factor = "T";
  std::vector<Syllable> raw = {FactorSyllable{"G", Element(ZVec{1, 0})},
                               FactorSyllable{"T", p.alphabet.backend("T").symbol_element("s")}};
  p.relator = reduce(p.alphabet, raw);
  auto r = generalized_unimodular_report(p);
  CHECK(r.cond1 == Cert::Unverified);
  CHECK(r.cond3 == Cert::Unverified);
  CHECK_FALSE(r.verdict);
  CHECK(r.note.find("UnsupportedT") != std::string::npos);
}

namespace {

RelativePresentation over_free_base(std::vector<Syllable> raw, int ngens) {
  RelativePresentation p;
  p.alphabet.add_factor("G", GroupBackend::free_group({"u", "v"}));
  for (int i = 1; i <= ngens; ++i) p.alphabet.add_free_gen("x" + std::to_string(i));
  p.relator = reduce(p.alphabet, raw);
  return p;
}

}  // namespace

TEST_CASE("case split on the erased relator") {
  auto gsyl = [](const RelativePresentation& p, const char* s) {
    return FactorSyllable{"G", p.alphabet.backend("G").symbol_element(s)};
  };

  // w' = x1 x2 x1 x2: literal square
  RelativePresentation p1 = over_free_base({}, 2);
  p1.relator = reduce(p1.alphabet, {gsyl(p1, "u"), FreeSyllable{"x1", 1}, FreeSyllable{"x2", 1},
                                    gsyl(p1, "v"), FreeSyllable{"x1", 1}, FreeSyllable{"x2", 1}});
  auto r1 = split_cases(p1);
  CHECK(r1.proper_power);
  CHECK(r1.k == 2);

  // w' = [x1, x2]: not a proper power; central extension data
  RelativePresentation p2 = over_free_base({}, 2);
  p2.relator = reduce(p2.alphabet, {gsyl(p2, "u"), FreeSyllable{"x1", 1}, FreeSyllable{"x2", 1},
                                    FreeSyllable{"x1", -1}, FreeSyllable{"x2", -1}});
  auto r2 = split_cases(p2);
  CHECK_FALSE(r2.proper_power);
  CHECK(r2.t_relators.size() == 2);
  CHECK(r2.abelianization_rank == 2);
  // each relator is a commutator [x_i, w'], so its exponent sums vanish
  for (const Word& w : r2.t_relators) {
    CHECK(exponent_sum(w, "x1") == 0);
    CHECK(exponent_sum(w, "x2") == 0);
  }

  // empty erased relator counts as a proper power
  RelativePresentation p3 = over_free_base({}, 1);
  p3.relator = reduce(p3.alphabet, {gsyl(p3, "u")});
  auto r3 = split_cases(p3);
  CHECK(r3.proper_power);
}

TEST_CASE("coset rewriting") {
  auto p = generalized(2, {{{1, 0}, {1, 0}}, {{0, 1}, {0, 1}}});
  CosetForm cf = rewrite_to_coset_form(p);
  CHECK(cf.coset_labels.size() == 2);
  Word expanded = expand_coset_form(p.alphabet, "T", cf);
  CHECK(words_equal(p.alphabet, expanded, cf.source_relator));

  // all t_i powers of one direction: splitting case
  auto ps = generalized(2, {{{1, 0}, {1, 1}}, {{0, 1}, {-2, -2}}, {{1, 1}, {2, 2}}});
  CHECK_THROWS_AS(rewrite_to_coset_form(ps), Error);
  try {
    rewrite_to_coset_form(ps);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SplittingCase);
  }
}

TEST_CASE("coset rewriting from explicit pairs with identity coefficients") {
  Alphabet a;
  a.add_factor("G", GroupBackend::free_abelian(2));
  a.add_factor("T", GroupBackend::free_abelian(2));
  Word empty;
  Word gw = reduce(a, {FactorSyllable{"G", Element(ZVec{3, 1})}});
  std::vector<std::pair<Word, Element>> pairs = {
      {empty, Element(ZVec{1, 0})}, {empty, Element(ZVec{0, 1})}, {gw, Element(ZVec{0, 0})}};
  // product of translations (1,1) is primitive and the span is all of Z^2
  CosetForm cf = rewrite_pairs_to_coset_form(a, "T", pairs);
  // labels come from the prefix products even for identity coefficients
  CHECK(cf.coset_labels.size() >= 2);
  Word expanded = expand_coset_form(a, "T", cf);
  CHECK(words_equal(a, expanded, cf.source_relator));
}

TEST_CASE("coset round trip on random generalized presentations") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<long long> small(-3, 3);
  std::uniform_int_distribution<int> npairs(2, 5);
  for (int rank : {2, 3}) {
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<std::pair<ZVec, ZVec>> pairs;
      while (true) {
        pairs.clear();
        int n = npairs(rng);
        for (int i = 0; i < n; ++i) {
          ZVec gv = {small(rng), small(rng)};
          if (gv == ZVec{0, 0}) gv = {1, 0};
          ZVec tv(rank);
          bool zero = true;
          for (auto& c : tv) {
            c = small(rng);
            if (c) zero = false;
          }
          if (zero) tv[0] = 1;
          pairs.push_back({gv, tv});
        }
        auto p = generalized(rank, pairs);
        auto rep = generalized_unimodular_report(p);
        if (!rep.verdict) continue;
        try {
          CosetForm cf = rewrite_to_coset_form(p);
          Word expanded = expand_coset_form(p.alphabet, "T", cf);
          REQUIRE(words_equal(p.alphabet, expanded, cf.source_relator));
          CHECK(cf.coset_labels.size() >= 2);
          break;
        } catch (const Error& e) {
          if (e.code() == ErrorCode::SplittingCase) continue;  // resample
          throw;
        }
      }
    }
  }
}

namespace {

SetSystem make_system(std::vector<std::string> elems, std::vector<std::vector<std::string>> sets) {
  SetSystem s;
  s.elements = elems;
  for (auto& set : sets) {
    std::vector<int> idx;
    for (auto& e : set)
      idx.push_back(static_cast<int>(std::find(elems.begin(), elems.end(), e) - elems.begin()));
    s.omegas.push_back(idx);
  }
  s.n_flags.assign(s.omegas.size(), true);
  return s;
}

}  // namespace

TEST_CASE("set system conditions") {
  auto good = make_system({"a", "b", "c", "d", "e", "f"},
                          {{"a", "b", "d", "e"}, {"b", "c", "e", "f"}, {"d", "e", "f"}});
  auto rg = check_omega_conditions(good);
  CHECK(rg.ok);
  CHECK(rg.families_checked == 4);  // three pairs and the full family

  auto triangle = make_system({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
  auto rt = check_omega_conditions(triangle);
  CHECK_FALSE(rt.ok);
  REQUIRE(rt.failing_family.has_value());
  CHECK(*rt.failing_family == 0b111u);  // only the full triangle fails

  auto single = make_system({"a", "b"}, {{"a", "b"}});
  CHECK(check_omega_conditions(single).ok);  // vacuous

  SetSystem too_large;
  too_large.elements = {"a"};
  too_large.omegas.assign(21, {0});
  too_large.n_flags.assign(21, false);
  CHECK_THROWS_AS(check_omega_conditions(too_large), Error);
}

TEST_CASE("set system check is deterministic") {
  auto triangle = make_system({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
  auto r1 = check_omega_conditions(triangle);
  auto r2 = check_omega_conditions(triangle);
  CHECK(r1.failing_family == r2.failing_family);
  REQUIRE(r1.witnesses.size() == r2.witnesses.size());
  for (size_t i = 0; i < r1.witnesses.size(); ++i) {
    CHECK(r1.witnesses[i].min_elem == r2.witnesses[i].min_elem);
    CHECK(r1.witnesses[i].max_elem == r2.witnesses[i].max_elem);
  }
}

TEST_CASE("hypothesis report") {
  RelativePresentation p;
  p.alphabet.add_factor("G1", GroupBackend::free_abelian(2));
  p.alphabet.add_factor("G2", GroupBackend::free_abelian(2));
  p.alphabet.add_free_gen("t");
  auto g1 = [&](long long x, long long y) { return FactorSyllable{"G1", Element(ZVec{x, y})}; };
  auto g2 = [&](long long x, long long y) { return FactorSyllable{"G2", Element(ZVec{x, y})}; };

  p.relator = reduce(p.alphabet, {g1(1, 0), FreeSyllable{"t", 1}, g2(0, 1), FreeSyllable{"t", 1},
                                  g1(2, 1), FreeSyllable{"t", -1}});
  SubproductSpec sub;
  sub.factors = {"G1"};
  auto r = hypothesis_report(p, "t", sub);
  CHECK(r.unimodular);
  CHECK(r.coefficients_ok);
  CHECK(r.not_conjugate_into_subfamily);
  CHECK_FALSE(r.splitting);
  CHECK(r.all_green());

  // relator conjugate into <t> * G1: flag goes red
  RelativePresentation p2 = p;
  p2.relator = reduce(p2.alphabet, {g2(0, 1), g1(1, 0), FreeSyllable{"t", 1}, g1(1, 1),
                                    g2(0, -1)});
  auto r2 = hypothesis_report(p2, "t", sub);
  CHECK_FALSE(r2.not_conjugate_into_subfamily);

  // relator t itself: splitting shape
  RelativePresentation p3 = p;
  p3.relator = reduce(p3.alphabet, {FreeSyllable{"t", 1}});
  auto r3 = hypothesis_report(p3, "t", sub);
  CHECK(r3.splitting);
}
