#include "relpres/presentation.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace relpres {

void validate_presentation(const RelativePresentation& p) {
  if (p.relator.empty())
    throw Error(ErrorCode::IdentityRelator, "relator reduces to the identity");
  CyclicReduction cr = reduce_cyclic(p.alphabet, p.relator.syllables);
  if (!words_equal(p.alphabet, cr.cyclic, p.relator))
    throw Error(ErrorCode::InvalidElement, "relator is not cyclically reduced");
  if (p.t_factor && !p.alphabet.has_factor(*p.t_factor))
    throw Error(ErrorCode::UnknownFactor, "t factor not declared: " + *p.t_factor);
}

bool is_unimodular(const RelativePresentation& p, const std::string& gen) {
  if (!p.alphabet.has_free_gen(gen))
    throw Error(ErrorCode::UnknownGenerator, "unknown generator: " + gen);
  long long s = exponent_sum(p.relator, gen);
  return s == 1 || s == -1;
}

namespace {

std::vector<Element> t_letters(const RelativePresentation& p) {
  std::vector<Element> ts;
  for (const Syllable& s : p.relator.syllables)
    if (const auto* f = std::get_if<FactorSyllable>(&s))
      if (f->factor == *p.t_factor) ts.push_back(f->elem);
  return ts;
}

long long zvec_gcd(const ZVec& v) {
  long long g = 0;
  for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

// Rank of the sublattice spanned by the given vectors (integer Gaussian
// elimination; exact).
int lattice_rank(std::vector<ZVec> vecs) {
  if (vecs.empty()) return 0;
  const size_t n = vecs[0].size();
  int rank = 0;
  for (size_t col = 0; col < n && rank < static_cast<int>(vecs.size()); ++col) {
    // eliminate column col below row `rank` by gcd chaining
    for (size_t r = rank + 1; r < vecs.size(); ++r) {
      while (vecs[r][col] != 0) {
        if (vecs[rank][col] == 0) { std::swap(vecs[rank], vecs[r]); break; }
        long long q = vecs[r][col] / vecs[rank][col];
        for (size_t j = 0; j < n; ++j) vecs[r][j] -= q * vecs[rank][j];
        if (vecs[r][col] != 0) std::swap(vecs[rank], vecs[r]);
      }
    }
    if (vecs[rank][col] != 0) ++rank;
  }
  return rank;
}

}  // namespace

GeneralizedReport generalized_unimodular_report(const RelativePresentation& p) {
  GeneralizedReport r;
  if (!p.t_factor) {
    r.note = "no T factor designated";
    return r;
  }
  const GroupBackend& tb = p.alphabet.backend(*p.t_factor);
  std::vector<Element> ts = t_letters(p);
  if (tb.kind() != BackendKind::FreeAbelian) {
    // UnsupportedT: report Unverified, never a silent pass or fail.
    r.note = "UnsupportedT: strong unique-product certification requires a free abelian T";
    return r;
  }
  Element t = tb.identity();
  for (const Element& ti : ts) t = tb.multiply(t, ti);
  r.t_product = t;
  r.gcd = zvec_gcd(t.zvec());
  r.cond1 = tb.is_identity(t) ? Cert::Failed : Cert::Certified;
  r.cond2 = Cert::Certified;  // abelian T: every subgroup is normal
  if (r.cond1 == Cert::Certified && r.gcd == 1)
    r.cond3 = Cert::Certified;  // quotient is torsion-free abelian, hence right orderable
  else
    r.cond3 = Cert::Unverified;
  r.verdict = r.cond1 == Cert::Certified && r.cond2 == Cert::Certified &&
              r.cond3 == Cert::Certified;
  return r;
}

CaseSplitReport split_cases(const RelativePresentation& p) {
  if (p.alphabet.free_gens().empty())
    throw Error(ErrorCode::UnknownGenerator, "case split needs at least one free generator");
  CaseSplitReport r;
  r.wprime = erase_coefficients(p.alphabet, p.relator);
  ProperPower pp = is_proper_power(p.alphabet, r.wprime);
  if (pp.kind != ProperPower::Kind::None) {
    r.proper_power = true;
    if (pp.kind == ProperPower::Kind::Power) {
      r.root = pp.root;
      r.k = pp.k;
    }
    return r;
  }
  const auto& gens = p.alphabet.free_gens();
  r.abelianization_rank = static_cast<int>(gens.size());
  Word winv = inverse(p.alphabet, r.wprime);
  for (const std::string& x : gens) {
    // [x, w'] = x^-1 w'^-1 x w'
    std::vector<Syllable> raw;
    raw.push_back(FreeSyllable{x, -1});
    raw.insert(raw.end(), winv.syllables.begin(), winv.syllables.end());
    raw.push_back(FreeSyllable{x, 1});
    raw.insert(raw.end(), r.wprime.syllables.begin(), r.wprime.syllables.end());
    r.t_relators.push_back(reduce(p.alphabet, raw));
  }
  return r;
}

CosetForm rewrite_pairs_to_coset_form(const Alphabet& a, const std::string& t_factor,
                                      const std::vector<std::pair<Word, Element>>& pairs) {
  const GroupBackend& tb = a.backend(t_factor);
  if (tb.kind() != BackendKind::FreeAbelian)
    throw Error(ErrorCode::NotUnimodular, "coset rewriting requires a free abelian T");

  std::vector<ZVec> lattice;
  for (const auto& [g, ti] : pairs) {
    (void)g;
    tb.check_element(ti);
    lattice.push_back(ti.zvec());
  }
  if (lattice_rank(lattice) <= 1)
    throw Error(ErrorCode::SplittingCase, "the t_i generate a cyclic subgroup");

  Element t = tb.identity();
  for (const auto& [g, ti] : pairs) { (void)g; t = tb.multiply(t, ti); }
  if (tb.is_identity(t) || zvec_gcd(t.zvec()) != 1)
    throw Error(ErrorCode::NotUnimodular, "product of the t_i must be primitive");

  CosetForm cf;
  cf.t = t;
  Element sigma = tb.identity();  // prefix product t_1 ... t_{i-1}
  std::vector<CosetEntry> raw_entries;
  for (const auto& [g, ti] : pairs) {
    Element u = tb.multiply(tb.inverse(sigma), t);  // conjugator sigma^-1 t
    auto dec = tb.coset_decompose(t, u);
    cf.coset_labels.insert(dec.rep);
    raw_entries.push_back(CosetEntry{g, dec.rep, dec.power});
    sigma = tb.multiply(sigma, ti);
  }
  // consolidation: adjacent entries with the same conjugator merge
  for (CosetEntry& e : raw_entries) {
    if (!cf.entries.empty() && cf.entries.back().coset_rep == e.coset_rep &&
        cf.entries.back().k == e.k) {
      cf.entries.back().g = concat(a, cf.entries.back().g, e.g);
    } else {
      cf.entries.push_back(std::move(e));
    }
  }
  // the rotated relator this form reconstructs
  std::vector<Syllable> src;
  for (const auto& [g, ti] : pairs) {
    src.insert(src.end(), g.syllables.begin(), g.syllables.end());
    src.push_back(FactorSyllable{t_factor, ti});
  }
  cf.source_relator = reduce(a, src);
  return cf;
}

CosetForm rewrite_to_coset_form(const RelativePresentation& p) {
  validate_presentation(p);
  if (!p.t_factor) throw Error(ErrorCode::UnknownFactor, "no T factor designated");
  GeneralizedReport gr = generalized_unimodular_report(p);
  if (!gr.verdict)
    throw Error(ErrorCode::NotUnimodular, "generalized unimodularity not certified: " + gr.note);

  // rotate the cyclic relator to end with a T-syllable
  const auto& syls = p.relator.syllables;
  int last_t = -1;
  for (int i = static_cast<int>(syls.size()) - 1; i >= 0; --i) {
    const auto* f = std::get_if<FactorSyllable>(&syls[i]);
    if (f && f->factor == *p.t_factor) { last_t = i; break; }
  }
  if (last_t < 0) throw Error(ErrorCode::SplittingCase, "relator has no T-syllables");
  std::vector<Syllable> rotated(syls.begin() + last_t + 1, syls.end());
  rotated.insert(rotated.end(), syls.begin(), syls.begin() + last_t + 1);

  std::vector<std::pair<Word, Element>> pairs;
  Word current;
  for (const Syllable& s : rotated) {
    const auto* f = std::get_if<FactorSyllable>(&s);
    if (f && f->factor == *p.t_factor) {
      pairs.emplace_back(std::move(current), f->elem);
      current = Word{};
    } else {
      current.syllables.push_back(s);
    }
  }
  return rewrite_pairs_to_coset_form(p.alphabet, *p.t_factor, pairs);
}

Word expand_coset_form(const Alphabet& a, const std::string& t_factor, const CosetForm& cf) {
  const GroupBackend& tb = a.backend(t_factor);
  std::vector<Syllable> raw;
  raw.push_back(FactorSyllable{t_factor, cf.t});
  for (const CosetEntry& e : cf.entries) {
    Element conj = Element(e.coset_rep);
    conj = tb.multiply(conj, tb.power(cf.t, e.k));  // rep + k*t
    raw.push_back(FactorSyllable{t_factor, tb.inverse(conj)});
    raw.insert(raw.end(), e.g.syllables.begin(), e.g.syllables.end());
    raw.push_back(FactorSyllable{t_factor, conj});
  }
  return reduce(a, raw);
}

OmegaReport check_omega_conditions(const SetSystem& s) {
  const int m = static_cast<int>(s.omegas.size());
  if (m > 20) throw Error(ErrorCode::TooLarge, "more than 20 member sets");
  const int n = static_cast<int>(s.elements.size());
  for (const auto& omega : s.omegas)
    for (int e : omega)
      if (e < 0 || e >= n) throw Error(ErrorCode::InvalidElement, "set element out of range");

  // per-element bitmask over Omega
  std::vector<uint32_t> containing(n, 0);
  for (int w = 0; w < m; ++w)
    for (int e : s.omegas[w]) containing[e] |= (1u << w);

  OmegaReport rep;
  rep.ok = true;
  const bool keep_witnesses = m <= 10;
  const uint32_t total = m >= 1 ? (1u << m) : 1u;
  for (uint32_t fam = 0; fam < total; ++fam) {
    if (std::popcount(fam) < 2) continue;
    ++rep.families_checked;
    SubfamilyWitness w;
    w.family_mask = fam;
    for (int e = 0; e < n; ++e) {
      uint32_t hits = containing[e] & fam;
      if (std::popcount(hits) != 1) continue;
      int owner = std::countr_zero(hits);
      if (w.min_elem < 0) {
        w.min_elem = e;
        w.omega_min = owner;
      } else if (owner != w.omega_min) {
        // keep the last distinct-owner witness as "max"
        w.max_elem = e;
        w.omega_max = owner;
      }
    }
    w.ok = w.min_elem >= 0 && w.max_elem >= 0 && w.omega_min != w.omega_max;
    if (!w.ok && rep.ok) {
      rep.ok = false;
      rep.failing_family = fam;
    }
    if (keep_witnesses) rep.witnesses.push_back(w);
  }
  return rep;
}

HypothesisReport hypothesis_report(const RelativePresentation& p, const std::string& gen,
                                   const SubproductSpec& subfamily) {
  if (!p.alphabet.has_free_gen(gen))
    throw Error(ErrorCode::UnknownGenerator, "unknown generator: " + gen);
  HypothesisReport r;
  r.unimodular = is_unimodular(p, gen);

  // coefficients: maximal runs without the designated generator
  Word current;
  auto flush = [&]() {
    if (current.empty()) return;
    r.coefficients.push_back({current, has_infinite_order(p.alphabet, current)});
    current = Word{};
  };
  for (const Syllable& s : p.relator.syllables) {
    const auto* g = std::get_if<FreeSyllable>(&s);
    if (g && g->gen == gen)
      flush();
    else
      current.syllables.push_back(s);
  }
  flush();
  r.coefficients_ok = std::all_of(r.coefficients.begin(), r.coefficients.end(),
                                  [](const CoefficientStatus& c) { return c.infinite_order; });

  SubproductSpec with_t = subfamily;
  with_t.free_gens.insert(gen);
  r.not_conjugate_into_subfamily =
      !membership_in_subproduct(p.alphabet, p.relator, with_t, /*upto_conjugacy=*/true);

  CyclicReduction cr = reduce_cyclic(p.alphabet, p.relator.syllables);
  r.splitting = cr.cyclic.size() == 1 &&
                std::holds_alternative<FreeSyllable>(cr.cyclic.syllables[0]) &&
                std::get<FreeSyllable>(cr.cyclic.syllables[0]).gen == gen;
  return r;
}

}  // namespace relpres
