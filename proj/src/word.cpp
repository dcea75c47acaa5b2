#include "relpres/word.hpp"

#include <algorithm>
#include <sstream>

namespace relpres {

void Alphabet::add_factor(const std::string& name, GroupBackend backend) {
  if (name.empty() || has_factor(name) || has_free_gen(name))
    throw Error(ErrorCode::UnknownFactor, "bad or duplicate factor name: " + name);
  factor_names_.push_back(name);
  backends_.push_back(std::move(backend));
}

void Alphabet::add_free_gen(const std::string& name) {
  if (name.empty() || has_factor(name) || has_free_gen(name))
    throw Error(ErrorCode::UnknownGenerator, "bad or duplicate generator name: " + name);
  free_gens_.push_back(name);
}

bool Alphabet::has_factor(const std::string& name) const {
  return std::find(factor_names_.begin(), factor_names_.end(), name) != factor_names_.end();
}

bool Alphabet::has_free_gen(const std::string& name) const {
  return std::find(free_gens_.begin(), free_gens_.end(), name) != free_gens_.end();
}

const GroupBackend& Alphabet::backend(const std::string& factor) const {
  for (size_t i = 0; i < factor_names_.size(); ++i)
    if (factor_names_[i] == factor) return backends_[i];
  throw Error(ErrorCode::UnknownFactor, "unknown factor: " + factor);
}

bool syllable_equal(const GroupBackend* backend, const Syllable& a, const Syllable& b) {
  if (a.index() != b.index()) return false;
  if (const auto* fa = std::get_if<FactorSyllable>(&a)) {
    const auto& fb = std::get<FactorSyllable>(b);
    if (fa->factor != fb.factor) return false;
    return backend ? backend->equal(fa->elem, fb.elem) : fa->elem.value == fb.elem.value;
  }
  const auto& ga = std::get<FreeSyllable>(a);
  const auto& gb = std::get<FreeSyllable>(b);
  return ga.gen == gb.gen && ga.exp == gb.exp;
}

namespace {

// Pushes one syllable onto a normal-form stack, merging with the top.
void push_syllable(const Alphabet& a, std::vector<Syllable>& out, Syllable s) {
  if (const auto* f = std::get_if<FactorSyllable>(&s)) {
    const GroupBackend& b = a.backend(f->factor);
    b.check_element(f->elem);
    if (b.is_identity(f->elem)) return;
  } else {
    const auto& g = std::get<FreeSyllable>(s);
    if (!a.has_free_gen(g.gen))
      throw Error(ErrorCode::UnknownGenerator, "unknown generator: " + g.gen);
    if (g.exp == 0) return;
  }
  while (true) {
    if (out.empty()) { out.push_back(std::move(s)); return; }
    Syllable& top = out.back();
    if (const auto* f = std::get_if<FactorSyllable>(&s)) {
      auto* ft = std::get_if<FactorSyllable>(&top);
      if (!ft || ft->factor != f->factor) { out.push_back(std::move(s)); return; }
      const GroupBackend& b = a.backend(f->factor);
      Element m = b.multiply(ft->elem, f->elem);
      out.pop_back();
      if (b.is_identity(m)) return;
      s = FactorSyllable{f->factor, std::move(m)};
    } else {
      const auto& g = std::get<FreeSyllable>(s);
      auto* gt = std::get_if<FreeSyllable>(&top);
      if (!gt || gt->gen != g.gen) { out.push_back(std::move(s)); return; }
      long long e = gt->exp + g.exp;
      out.pop_back();
      if (e == 0) return;
      s = FreeSyllable{g.gen, e};
    }
  }
}

bool mergeable(const Syllable& a, const Syllable& b) {
  if (a.index() != b.index()) return false;
  if (const auto* fa = std::get_if<FactorSyllable>(&a))
    return fa->factor == std::get<FactorSyllable>(b).factor;
  return std::get<FreeSyllable>(a).gen == std::get<FreeSyllable>(b).gen;
}

const GroupBackend* syllable_backend(const Alphabet& a, const Syllable& s) {
  if (const auto* f = std::get_if<FactorSyllable>(&s)) return &a.backend(f->factor);
  return nullptr;
}

}  // namespace

Word reduce(const Alphabet& a, const std::vector<Syllable>& raw) {
  Word w;
  for (const Syllable& s : raw) push_syllable(a, w.syllables, s);
  return w;
}

CyclicReduction reduce_cyclic(const Alphabet& a, const std::vector<Syllable>& raw) {
  CyclicReduction r;
  r.cyclic = reduce(a, raw);
  while (r.cyclic.size() >= 2 &&
         mergeable(r.cyclic.syllables.front(), r.cyclic.syllables.back())) {
    Syllable first = r.cyclic.syllables.front();
    Syllable last = r.cyclic.syllables.back();
    std::vector<Syllable> mid(r.cyclic.syllables.begin() + 1, r.cyclic.syllables.end() - 1);
    // w = f * mid * l  =>  f^-1 w f = mid * (l * f)
    Word next;
    for (Syllable& s : mid) push_syllable(a, next.syllables, std::move(s));
    push_syllable(a, next.syllables, last);
    push_syllable(a, next.syllables, first);
    r.cyclic = std::move(next);
    push_syllable(a, r.conjugator.syllables, std::move(first));
  }
  return r;
}

Word concat(const Alphabet& a, const Word& u, const Word& v) {
  Word w = u;
  for (const Syllable& s : v.syllables) push_syllable(a, w.syllables, s);
  return w;
}

Word inverse(const Alphabet& a, const Word& w) {
  Word r;
  for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it) {
    if (const auto* f = std::get_if<FactorSyllable>(&*it))
      push_syllable(a, r.syllables, FactorSyllable{f->factor, a.backend(f->factor).inverse(f->elem)});
    else {
      const auto& g = std::get<FreeSyllable>(*it);
      push_syllable(a, r.syllables, FreeSyllable{g.gen, -g.exp});
    }
  }
  return r;
}

bool words_equal(const Alphabet& a, const Word& u, const Word& v) {
  if (u.size() != v.size()) return false;
  for (size_t i = 0; i < u.size(); ++i)
    if (!syllable_equal(syllable_backend(a, u.syllables[i]), u.syllables[i], v.syllables[i]))
      return false;
  return true;
}

std::string word_str(const Alphabet& a, const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const Syllable& s : w.syllables) {
    if (!first) os << " . ";
    first = false;
    if (const auto* f = std::get_if<FactorSyllable>(&s))
      os << f->factor << ":" << a.backend(f->factor).element_str(f->elem);
    else {
      const auto& g = std::get<FreeSyllable>(s);
      os << g.gen;
      if (g.exp != 1) os << "^" << g.exp;
    }
  }
  return os.str();
}

std::string word_key(const Alphabet& a, const Word& w) {
  std::ostringstream os;
  for (const Syllable& s : w.syllables) {
    if (const auto* f = std::get_if<FactorSyllable>(&s))
      os << "F" << f->factor << ":" << a.backend(f->factor).element_key(f->elem) << ";";
    else {
      const auto& g = std::get<FreeSyllable>(s);
      os << "G" << g.gen << ":" << g.exp << ";";
    }
  }
  return os.str();
}

long long exponent_sum(const Word& w, const std::string& gen) {
  long long sum = 0;
  for (const Syllable& s : w.syllables)
    if (const auto* g = std::get_if<FreeSyllable>(&s))
      if (g->gen == gen) sum += g->exp;
  return sum;
}

Word erase_coefficients(const Alphabet& a, const Word& w) {
  Word r;
  for (const Syllable& s : w.syllables)
    if (std::holds_alternative<FreeSyllable>(s)) push_syllable(a, r.syllables, s);
  return r;
}

namespace {

struct Letter {
  std::string gen;
  int sign = 1;
  bool operator==(const Letter& o) const { return gen == o.gen && sign == o.sign; }
};

std::vector<Letter> free_word_letters(const Word& w) {
  std::vector<Letter> out;
  for (const Syllable& s : w.syllables) {
    const auto* g = std::get_if<FreeSyllable>(&s);
    if (!g) throw std::invalid_argument("word has factor syllables; expected free generators only");
    long long n = g->exp < 0 ? -g->exp : g->exp;
    for (long long i = 0; i < n; ++i) out.push_back({g->gen, g->exp < 0 ? -1 : 1});
  }
  return out;
}

Word letters_to_word(const Alphabet& a, const std::vector<Letter>& letters) {
  std::vector<Syllable> raw;
  raw.reserve(letters.size());
  for (const Letter& l : letters) raw.push_back(FreeSyllable{l.gen, l.sign});
  return reduce(a, raw);
}

}  // namespace

ProperPower is_proper_power(const Alphabet& a, const Word& w) {
  CyclicReduction cr = reduce_cyclic(a, w.syllables);
  ProperPower res;
  if (cr.cyclic.empty()) {
    res.kind = ProperPower::Kind::Identity;
    return res;
  }
  std::vector<Letter> letters = free_word_letters(cr.cyclic);
  const size_t n = letters.size();
  // smallest literal period p | n; valid because a cyclically reduced k-th
  // power in a free group is a literal concatenation of its root
  for (size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (size_t i = p; i < n && periodic; ++i) periodic = letters[i] == letters[i - p];
    if (!periodic) continue;
    res.kind = ProperPower::Kind::Power;
    res.k = static_cast<long long>(n / p);
    std::vector<Letter> root_letters(letters.begin(), letters.begin() + p);
    Word root_cyc = letters_to_word(a, root_letters);
    Word conj_inv = inverse(a, cr.conjugator);
    res.root = concat(a, concat(a, cr.conjugator, root_cyc), conj_inv);
    return res;
  }
  return res;
}

namespace {

bool syllable_in_spec(const Syllable& s, const SubproductSpec& spec) {
  if (const auto* f = std::get_if<FactorSyllable>(&s)) return spec.factors.count(f->factor) > 0;
  return spec.free_gens.count(std::get<FreeSyllable>(s).gen) > 0;
}

}  // namespace

bool membership_in_subproduct(const Alphabet& a, const Word& w, const SubproductSpec& s,
                              bool upto_conjugacy) {
  const Word* target = &w;
  CyclicReduction cr;
  if (upto_conjugacy) {
    cr = reduce_cyclic(a, w.syllables);
    target = &cr.cyclic;
  }
  for (const Syllable& syl : target->syllables)
    if (!syllable_in_spec(syl, s)) return false;
  return true;
}

bool has_infinite_order(const Alphabet& a, const Word& w) {
  CyclicReduction cr = reduce_cyclic(a, w.syllables);
  if (cr.cyclic.empty()) return false;
  if (cr.cyclic.size() >= 2) return true;
  const Syllable& s = cr.cyclic.syllables[0];
  if (const auto* f = std::get_if<FactorSyllable>(&s))
    return !a.backend(f->factor).order(f->elem).finite;
  return true;  // nonzero power of a free generator
}

namespace {

bool z_contains(const GroupBackend& b, const SubgroupSpec& z, const Element& g) {
  switch (z.kind) {
    case SubgroupSpec::Kind::Trivial:
      return b.is_identity(g);
    case SubgroupSpec::Kind::SubBasis: {
      for (int32_t s : g.symword()) {
        int id = s < 0 ? -s : s;
        if (z.basis_symbols.count(b.symbol_name(id)) == 0) return false;
      }
      return true;
    }
    case SubgroupSpec::Kind::Cyclic: {
      if (b.kind() == BackendKind::FiniteTable) {
        Element p = b.identity();
        long long n = b.order(z.generator).finite ? b.order(z.generator).value : 0;
        for (long long i = 0; i < n; ++i) {
          if (b.equal(p, g)) return true;
          p = b.multiply(p, z.generator);
        }
        return b.equal(p, g);
      }
      // FreeAbelian: g == k * generator for some integer k
      const ZVec& gen = z.generator.zvec();
      const ZVec& v = g.zvec();
      long long k = 0;
      bool have_k = false;
      for (size_t i = 0; i < gen.size(); ++i) {
        if (gen[i] == 0) {
          if (v[i] != 0) return false;
          continue;
        }
        if (v[i] % gen[i] != 0) return false;
        long long ki = v[i] / gen[i];
        if (have_k && ki != k) return false;
        k = ki;
        have_k = true;
      }
      return true;
    }
  }
  return false;
}

void check_z_decidable(const GroupBackend& b, const SubgroupSpec& z) {
  switch (z.kind) {
    case SubgroupSpec::Kind::Trivial:
      return;
    case SubgroupSpec::Kind::SubBasis:
      if (b.kind() != BackendKind::Free && b.kind() != BackendKind::FormalSymbols)
        throw Error(ErrorCode::UndecidableZ, "sub-basis subgroup needs a free-letter backend");
      return;
    case SubgroupSpec::Kind::Cyclic:
      if (b.kind() != BackendKind::FreeAbelian && b.kind() != BackendKind::FiniteTable)
        throw Error(ErrorCode::UndecidableZ,
                    "cyclic subgroup membership is only decided for free abelian and table backends");
      b.check_element(z.generator);
      return;
  }
}

}  // namespace

MembershipForm classify_membership_form(const Alphabet& a, const Word& u,
                                        const SubproductSpec& x, const std::string& y,
                                        const SubgroupSpec& z) {
  const GroupBackend& yb = a.backend(y);
  check_z_decidable(yb, z);

  auto in_xz = [&](const Syllable& s) {
    if (syllable_in_spec(s, x)) return true;
    if (const auto* f = std::get_if<FactorSyllable>(&s))
      if (f->factor == y) return z_contains(yb, z, f->elem);
    return false;
  };
  for (const Syllable& s : u.syllables) {
    if (in_xz(s)) continue;
    const auto* f = std::get_if<FactorSyllable>(&s);
    if (!f || f->factor != y)
      throw std::invalid_argument("word leaves the ambient product X * Y");
  }

  const auto& syls = u.syllables;
  const size_t n = syls.size();

  // Shape 1: at most one syllable outside X*Z, and it lies in Y.
  size_t outside = 0, pivot = n;
  for (size_t i = 0; i < n; ++i)
    if (!in_xz(syls[i])) { ++outside; pivot = i; }
  MembershipForm res;
  if (outside == 0) {
    res.kind = MembershipForm::Kind::InXZYXZ;
    res.x1 = u;
    return res;
  }
  if (outside == 1) {
    res.kind = MembershipForm::Kind::InXZYXZ;
    res.x1.syllables.assign(syls.begin(), syls.begin() + pivot);
    res.mid.syllables.assign(syls.begin() + pivot, syls.begin() + pivot + 1);
    res.x2.syllables.assign(syls.begin() + pivot + 1, syls.end());
    return res;
  }

  // Shape 2: u = x1 * u' * x2 with x1, x2 in X*Z and u' of finite order.
  size_t pmax = 0;
  while (pmax < n && in_xz(syls[pmax])) ++pmax;
  size_t smin = n;
  while (smin > 0 && in_xz(syls[smin - 1])) --smin;
  for (size_t i = 0; i <= pmax; ++i) {
    for (size_t j = n; j > i && j >= smin; --j) {
      Word mid;
      mid.syllables.assign(syls.begin() + i, syls.begin() + j);
      if (!has_infinite_order(a, mid)) {
        res.kind = MembershipForm::Kind::X1UX2;
        res.x1.syllables.assign(syls.begin(), syls.begin() + i);
        res.mid = std::move(mid);
        res.x2.syllables.assign(syls.begin() + j, syls.end());
        return res;
      }
    }
  }
  res.kind = MembershipForm::Kind::Neither;
  return res;
}

}  // namespace relpres
