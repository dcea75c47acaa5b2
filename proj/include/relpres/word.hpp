#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "relpres/group.hpp"

namespace relpres {

// Ambient free product: named factor groups plus named free generators.
// Words reference factors and generators by name.
class Alphabet {
public:
  Alphabet() = default;

  void add_factor(const std::string& name, GroupBackend backend);
  void add_free_gen(const std::string& name);

  const std::vector<std::string>& factor_names() const { return factor_names_; }
  const std::vector<std::string>& free_gens() const { return free_gens_; }
  bool has_factor(const std::string& name) const;
  bool has_free_gen(const std::string& name) const;
  const GroupBackend& backend(const std::string& factor) const;  // throws UnknownFactor

private:
  std::vector<std::string> factor_names_;
  std::vector<GroupBackend> backends_;
  std::vector<std::string> free_gens_;
};

struct FactorSyllable {
  std::string factor;
  Element elem;
};

struct FreeSyllable {
  std::string gen;
  long long exp = 0;
};

using Syllable = std::variant<FactorSyllable, FreeSyllable>;

bool syllable_equal(const GroupBackend* backend, const Syllable& a, const Syllable& b);

// A word in normal form: adjacent syllables never share a factor or
// generator, no identity factor syllables, no zero exponents.
struct Word {
  std::vector<Syllable> syllables;

  bool empty() const { return syllables.empty(); }
  size_t size() const { return syllables.size(); }
};

struct CyclicReduction {
  Word cyclic;      // cyclically reduced core
  Word conjugator;  // w = conjugator * cyclic * conjugator^-1
};

// Free normal form of a raw syllable list. Throws UnknownFactor /
// UnknownGenerator for undeclared names.
Word reduce(const Alphabet& a, const std::vector<Syllable>& raw);
CyclicReduction reduce_cyclic(const Alphabet& a, const std::vector<Syllable>& raw);

Word concat(const Alphabet& a, const Word& u, const Word& v);
Word inverse(const Alphabet& a, const Word& w);
bool words_equal(const Alphabet& a, const Word& u, const Word& v);
std::string word_str(const Alphabet& a, const Word& w);
std::string word_key(const Alphabet& a, const Word& w);

long long exponent_sum(const Word& w, const std::string& gen);

// Deletes all factor syllables and freely reduces what remains.
Word erase_coefficients(const Alphabet& a, const Word& w);

// Proper power detection for words over free generators only.
struct ProperPower {
  enum class Kind { None, Power, Identity } kind = Kind::None;
  Word root;      // for Kind::Power; conjugate of the literal cyclic root
  long long k = 0;  // maximal exponent, >= 2
};
ProperPower is_proper_power(const Alphabet& a, const Word& w);

struct SubproductSpec {
  std::set<std::string> factors;
  std::set<std::string> free_gens;
};

bool membership_in_subproduct(const Alphabet& a, const Word& w, const SubproductSpec& s,
                              bool upto_conjugacy);

// Classical free product criterion: infinite order iff the cyclic reduction
// has >= 2 syllables or is a single syllable of infinite order.
bool has_infinite_order(const Alphabet& a, const Word& w);

// Designated subgroup Z of one factor, with decidable membership.
struct SubgroupSpec {
  enum class Kind { Trivial, SubBasis, Cyclic } kind = Kind::Trivial;
  std::set<std::string> basis_symbols;     // SubBasis (Free / FormalSymbols)
  Element generator;                       // Cyclic (FreeAbelian / FiniteTable)
};

// Syntactic classification of u against the two algebraicity shapes
// (X*Z) Y (X*Z) and x1 u' x2 with x1, x2 in X*Z and u' of finite order.
// Neither shape matching means algebraicity over X*Z is not witnessed
// by the normal form.
struct MembershipForm {
  enum class Kind { InXZYXZ, X1UX2, Neither } kind = Kind::Neither;
  Word x1, mid, x2;
};
MembershipForm classify_membership_form(const Alphabet& a, const Word& u,
                                        const SubproductSpec& x, const std::string& y,
                                        const SubgroupSpec& z);

}  // namespace relpres
