#include "relpres/small_cancellation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace relpres {

namespace {

// One letter of the cyclic word: a whole factor syllable (atomic) or a
// single signed free-generator letter.
struct Token {
  bool is_factor = false;
  int name = 0;           // factor or generator index in the alphabet
  int sign = 0;           // free letters only
  std::string elem_key;   // factor letters only
  Element elem;           // factor letters only

  friend bool operator==(const Token& a, const Token& b) {
    return a.is_factor == b.is_factor && a.name == b.name && a.sign == b.sign &&
           a.elem_key == b.elem_key;
  }
  friend bool operator<(const Token& a, const Token& b) {
    return std::tie(a.is_factor, a.name, a.sign, a.elem_key) <
           std::tie(b.is_factor, b.name, b.sign, b.elem_key);
  }
};

int factor_index(const Alphabet& a, const std::string& name) {
  const auto& names = a.factor_names();
  return static_cast<int>(std::find(names.begin(), names.end(), name) - names.begin());
}

int gen_index(const Alphabet& a, const std::string& name) {
  const auto& names = a.free_gens();
  return static_cast<int>(std::find(names.begin(), names.end(), name) - names.begin());
}

std::vector<Token> tokenize(const Alphabet& a, const Word& w) {
  std::vector<Token> out;
  for (const Syllable& s : w.syllables) {
    if (const auto* f = std::get_if<FactorSyllable>(&s)) {
      Token t;
      t.is_factor = true;
      t.name = factor_index(a, f->factor);
      t.elem_key = a.backend(f->factor).element_key(f->elem);
      t.elem = f->elem;
      out.push_back(std::move(t));
    } else {
      const auto& g = std::get<FreeSyllable>(s);
      Token t;
      t.name = gen_index(a, g.gen);
      t.sign = g.exp < 0 ? -1 : 1;
      long long n = g.exp < 0 ? -g.exp : g.exp;
      for (long long i = 0; i < n; ++i) out.push_back(t);
    }
  }
  return out;
}

// Booth's least-rotation index of the token cycle.
size_t least_rotation(const std::vector<Token>& t) {
  const size_t n = t.size();
  if (n <= 1) return 0;
  std::vector<long long> f(2 * n, -1);
  size_t k = 0;
  for (size_t j = 1; j < 2 * n; ++j) {
    long long i = f[j - k - 1];
    while (i != -1 && !(t[j % n] == t[(k + i + 1) % n])) {
      if (t[j % n] < t[(k + i + 1) % n]) k = j - i - 1;
      i = f[i];
    }
    if (i == -1 && !(t[j % n] == t[(k + i + 1) % n])) {
      if (t[j % n] < t[(k + i + 1) % n]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k % n;
}

bool tokens_mergeable(const Token& a, const Token& b) {
  return !a.is_factor && !b.is_factor && a.name == b.name && a.sign == b.sign;
}

std::string cycle_key(const std::vector<Token>& t) {
  std::ostringstream os;
  for (const Token& x : t)
    os << (x.is_factor ? "F" : "g") << x.name << "." << x.sign << "." << x.elem_key << "|";
  return os.str();
}

size_t minimal_period(const std::vector<Token>& t) {
  const size_t n = t.size();
  std::vector<size_t> pi(n, 0);
  for (size_t i = 1; i < n; ++i) {
    size_t k = pi[i - 1];
    while (k > 0 && !(t[i] == t[k])) k = pi[k - 1];
    if (t[i] == t[k]) ++k;
    pi[i] = k;
  }
  size_t p = n - pi[n - 1];
  return (n % p == 0) ? p : n;
}

Word rotation_word(const Alphabet& a, const std::vector<Token>& cycle, size_t offset) {
  std::vector<Syllable> raw;
  const size_t n = cycle.size();
  raw.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const Token& x = cycle[(offset + i) % n];
    if (x.is_factor)
      raw.push_back(FactorSyllable{a.factor_names()[x.name], x.elem});
    else
      raw.push_back(FreeSyllable{a.free_gens()[x.name], x.sign});
  }
  return reduce(a, raw);
}

}  // namespace

SymmetrizedSet symmetrize(const Alphabet& a, const std::vector<Word>& relators) {
  if (relators.empty()) throw Error(ErrorCode::IdentityRelator, "empty relator list");
  SymmetrizedSet set;
  set.alphabet_ = &a;

  std::set<std::string> seen;
  auto add_class = [&](const Word& w) {
    std::vector<Token> cycle = tokenize(a, w);
    size_t rot = least_rotation(cycle);
    std::rotate(cycle.begin(), cycle.begin() + rot, cycle.end());
    if (!seen.insert(cycle_key(cycle)).second) return;

    const size_t n = cycle.size();
    // first syllable boundary of the canonical orientation
    size_t first_boundary = 0;
    for (size_t i = 0; i < n; ++i)
      if (!tokens_mergeable(cycle[(i + n - 1) % n], cycle[i])) { first_boundary = i; break; }
    Word rep = rotation_word(a, cycle, first_boundary);

    // boundaries relative to the representative word
    std::vector<size_t> bounds;
    size_t off = 0;
    for (const Syllable& s : rep.syllables) {
      bounds.push_back(off);
      if (const auto* g = std::get_if<FreeSyllable>(&s))
        off += static_cast<size_t>(g->exp < 0 ? -g->exp : g->exp);
      else
        off += 1;
    }

    size_t cls = set.class_words_.size();
    set.class_words_.push_back(std::move(rep));
    set.letter_lengths_.push_back(n);
    set.periods_.push_back(minimal_period(cycle));
    set.boundaries_.push_back(std::move(bounds));
    for (size_t o = 0; o < n; ++o) set.occurrences_.push_back({cls, o});
  };

  for (const Word& r : relators) {
    CyclicReduction cr = reduce_cyclic(a, r.syllables);
    if (cr.cyclic.empty())
      throw Error(ErrorCode::IdentityRelator, "relator is trivial after cyclic reduction");
    add_class(cr.cyclic);
    add_class(inverse(a, cr.cyclic));
  }
  return set;
}

size_t SymmetrizedSet::member_count() const {
  size_t total = 0;
  for (size_t c = 0; c < class_count(); ++c) {
    std::set<size_t> distinct;
    for (size_t b : boundaries_[c]) distinct.insert(b % periods_[c]);
    total += distinct.size();
  }
  return total;
}

Word SymmetrizedSet::member(size_t index) const {
  for (size_t c = 0; c < class_count(); ++c) {
    std::set<size_t> distinct;
    for (size_t b : boundaries_[c]) distinct.insert(b % periods_[c]);
    if (index < distinct.size()) {
      auto it = distinct.begin();
      std::advance(it, index);
      return occurrence_word({c, *it});
    }
    index -= distinct.size();
  }
  throw std::out_of_range("member index");
}

size_t SymmetrizedSet::min_member_syllables() const {
  size_t best = SIZE_MAX;
  for (const Word& w : class_words_) best = std::min(best, w.size());
  return best;
}

Word SymmetrizedSet::occurrence_word(const Occurrence& o) const {
  std::vector<Token> cycle = tokenize(*alphabet_, class_words_[o.cls]);
  return rotation_word(*alphabet_, cycle, o.letter_offset);
}

namespace {

bool partial_overlap(const Alphabet& a, const Syllable& sa, const Syllable& sb) {
  if (sa.index() != sb.index()) return false;
  if (const auto* fa = std::get_if<FactorSyllable>(&sa)) {
    const auto& fb = std::get<FactorSyllable>(sb);
    if (fa->factor != fb.factor) return false;
    const GroupBackend& b = a.backend(fa->factor);
    if (b.kind() == BackendKind::Free || b.kind() == BackendKind::FormalSymbols) {
      return !fa->elem.symword().empty() && !fb.elem.symword().empty() &&
             fa->elem.symword().front() == fb.elem.symword().front();
    }
    return true;  // opaque backends: conservative
  }
  const auto& ga = std::get<FreeSyllable>(sa);
  const auto& gb = std::get<FreeSyllable>(sb);
  return ga.gen == gb.gen && (ga.exp < 0) == (gb.exp < 0);
}

}  // namespace

PieceReport max_piece(const Alphabet& a, const SymmetrizedSet& s) {
  struct View {
    const Word* w;
    size_t start;  // starting syllable index
    size_t len;    // syllable count of this rotation
  };
  // rotations at syllable boundaries are views into the class word;
  // rotations inside a free-generator power are materialized
  std::vector<Word> materialized;
  for (const auto& o : s.occurrences()) {
    const auto& bounds = s.boundaries(o.cls);
    if (!std::binary_search(bounds.begin(), bounds.end(), o.letter_offset))
      materialized.push_back(s.occurrence_word(o));
  }
  std::vector<View> views;
  views.reserve(s.occurrences().size());
  size_t mat = 0;
  for (const auto& o : s.occurrences()) {
    const auto& bounds = s.boundaries(o.cls);
    auto it = std::lower_bound(bounds.begin(), bounds.end(), o.letter_offset);
    if (it != bounds.end() && *it == o.letter_offset) {
      size_t syl = static_cast<size_t>(it - bounds.begin());
      views.push_back({&s.class_word(o.cls), syl, s.class_syllables(o.cls)});
    } else {
      const Word* w = &materialized[mat++];
      views.push_back({w, 0, w->size()});
    }
  }

  auto syl_at = [](const View& v, size_t i) -> const Syllable& {
    size_t idx = v.start + i;
    if (idx >= v.w->size()) idx -= v.w->size();
    return v.w->syllables[idx];
  };

  PieceReport rep;
  rep.min_relator_syllables = s.min_member_syllables();
  size_t best = 0;
  std::optional<std::pair<size_t, size_t>> best_pair;
  for (size_t i = 0; i < views.size(); ++i) {
    for (size_t j = i + 1; j < views.size(); ++j) {
      const size_t n = std::min(views[i].len, views[j].len);
      size_t full = 0;
      while (full < n && syllable_equal(nullptr, syl_at(views[i], full), syl_at(views[j], full)))
        ++full;
      size_t piece = full;
      if (full < n && partial_overlap(a, syl_at(views[i], full), syl_at(views[j], full)))
        piece = full + 1;
      if (piece > best) {
        best = piece;
        best_pair = {i, j};
      }
    }
  }
  rep.max_piece_syllables = best;
  rep.ratio = rep.min_relator_syllables
                  ? Rat(static_cast<long long>(best),
                        static_cast<long long>(rep.min_relator_syllables))
                  : Rat(0);
  if (best_pair && best > 0) {
    PieceWitness w;
    const View& va = views[best_pair->first];
    const View& vb = views[best_pair->second];
    for (size_t i = 0; i < va.len; ++i) w.first.syllables.push_back(syl_at(va, i));
    for (size_t i = 0; i < vb.len; ++i) w.second.syllables.push_back(syl_at(vb, i));
    size_t full = 0;
    const size_t n = std::min(va.len, vb.len);
    while (full < n && syllable_equal(nullptr, syl_at(va, full), syl_at(vb, full))) ++full;
    for (size_t i = 0; i < full; ++i) w.shared_prefix.syllables.push_back(syl_at(va, i));
    if (full < n && best == full + 1) {
      const auto* ga = std::get_if<FreeSyllable>(&syl_at(va, full));
      const auto* gb = std::get_if<FreeSyllable>(&syl_at(vb, full));
      if (ga && gb) {
        long long ea = ga->exp < 0 ? -ga->exp : ga->exp;
        long long eb = gb->exp < 0 ? -gb->exp : gb->exp;
        long long common = std::min(ea, eb);
        w.shared_prefix.syllables.push_back(FreeSyllable{ga->gen, ga->exp < 0 ? -common : common});
      }
    }
    rep.witness = std::move(w);
  }
  return rep;
}

CPrimeReport check_cprime(const Alphabet& a, const std::vector<Word>& relators, Rat lambda) {
  if (!(Rat(0) < lambda)) throw std::invalid_argument("lambda must be positive");
  CPrimeReport rep;
  rep.lambda = lambda;
  SymmetrizedSet set = symmetrize(a, relators);
  rep.pieces = max_piece(a, set);
  rep.holds = true;
  for (size_t c = 0; c < set.class_count(); ++c) {
    Rat bound = lambda * Rat(static_cast<long long>(set.class_syllables(c)));
    if (!(Rat(static_cast<long long>(rep.pieces.max_piece_syllables)) < bound)) {
      rep.holds = false;
      break;
    }
  }
  return rep;
}

RelatorFamily build_product_block_family(int arms, int count, int blocks) {
  if (arms < 2) throw std::invalid_argument("arms must be >= 2");
  if (count < 1 || count > 10) throw std::invalid_argument("count must be in [1,10]");
  if (blocks < 1) throw std::invalid_argument("blocks must be >= 1");
  RelatorFamily fam;
  std::vector<std::vector<std::string>> arm_symbols(arms);
  std::vector<std::string> s_symbols;
  for (int i = 1; i <= count; ++i) {
    for (int j = 1; j <= blocks; ++j)
      for (int k = 1; k <= arms; ++k)
        arm_symbols[k - 1].push_back("g" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                                     std::to_string(k));
    s_symbols.push_back("s" + std::to_string(i));
  }
  for (int k = 1; k <= arms; ++k)
    fam.alphabet.add_factor("G" + std::to_string(k), GroupBackend::formal(arm_symbols[k - 1]));
  fam.alphabet.add_factor("S", GroupBackend::formal(s_symbols));

  for (int i = 1; i <= count; ++i) {
    std::vector<Syllable> raw;
    for (int j = 1; j <= blocks; ++j)
      for (int k = 1; k <= arms; ++k) {
        std::string fname = "G" + std::to_string(k);
        raw.push_back(FactorSyllable{
            fname, fam.alphabet.backend(fname).symbol_element(
                       "g" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                       std::to_string(k))});
      }
    raw.push_back(FactorSyllable{
        "S", fam.alphabet.backend("S").symbol_element("s" + std::to_string(i), -1)});
    fam.relators.push_back(reduce(fam.alphabet, raw));
  }
  return fam;
}

RelatorFamily build_shared_letter_family(int count, int blocks) {
  if (count < 1 || count > 10) throw std::invalid_argument("count must be in [1,10]");
  if (blocks < 1) throw std::invalid_argument("blocks must be >= 1");
  RelatorFamily fam;
  std::vector<std::string> t_symbols, s_symbols;
  for (int i = 1; i <= count; ++i) {
    s_symbols.push_back("s" + std::to_string(i));
    for (int j = 1; j <= blocks; ++j)
      t_symbols.push_back("t" + std::to_string(i) + "_" + std::to_string(j));
  }
  fam.alphabet.add_factor("R", GroupBackend::formal({"r"}));
  fam.alphabet.add_factor("T", GroupBackend::formal(t_symbols));
  fam.alphabet.add_factor("S", GroupBackend::formal(s_symbols));

  for (int i = 1; i <= count; ++i) {
    std::vector<Syllable> raw;
    raw.push_back(
        FactorSyllable{"S", fam.alphabet.backend("S").symbol_element("s" + std::to_string(i))});
    for (int j = 1; j <= blocks; ++j) {
      raw.push_back(FactorSyllable{"R", fam.alphabet.backend("R").symbol_element("r")});
      raw.push_back(FactorSyllable{
          "T", fam.alphabet.backend("T").symbol_element("t" + std::to_string(i) + "_" +
                                                        std::to_string(j))});
    }
    fam.relators.push_back(reduce(fam.alphabet, raw));
  }
  return fam;
}

}  // namespace relpres
