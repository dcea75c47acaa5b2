#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relpres/word.hpp"

namespace relpres {

// One added relator over a free product of base factors and free
// generators. For generalised presentations, `t_factor` names the factor
// playing the role of T; the relator's T-syllables are the t_i.
struct RelativePresentation {
  Alphabet alphabet;
  Word relator;  // cyclically reduced
  std::optional<std::string> t_factor;
};

// Checks the relator is cyclically reduced; throws IdentityRelator /
// InvalidElement on degenerate input.
void validate_presentation(const RelativePresentation& p);

bool is_unimodular(const RelativePresentation& p, const std::string& gen);

enum class Cert { Certified, Failed, Unverified };

struct GeneralizedReport {
  Cert cond1 = Cert::Unverified;  // product of t_i has infinite order
  Cert cond2 = Cert::Unverified;  // <prod t_i> normal in T
  Cert cond3 = Cert::Unverified;  // T/<prod t_i> has the strong unique-product property
  bool verdict = false;           // all three certified
  Element t_product;              // valid when T is free abelian
  long long gcd = 0;              // gcd of t_product coordinates (0 for the zero vector)
  std::string note;
};

// Decidable instantiation: T free abelian. cond3 is certified exactly when
// the product is primitive (the quotient is then torsion-free abelian, hence
// right orderable); everything else is reported Unverified, never silently
// passed. Non-free-abelian T yields an all-Unverified report with a note.
GeneralizedReport generalized_unimodular_report(const RelativePresentation& p);

struct CaseSplitReport {
  Word wprime;
  bool proper_power = false;      // includes the identity
  Word root;
  long long k = 0;
  std::vector<Word> t_relators;   // commutators [x_i, w'] in the non-power case
  int abelianization_rank = 0;
};

// Coefficient-erasure case split for a presentation over a single base
// factor with free generators x_1..x_n.
CaseSplitReport split_cases(const RelativePresentation& p);

// One coefficient of the rewritten relator: g conjugated by rep + k*t.
struct CosetEntry {
  Word g;         // word over the non-T factors (possibly empty)
  ZVec coset_rep; // canonical representative of the coset of T/<t>
  long long k = 0;
};

struct CosetForm {
  Element t;                       // product of the t_i in T
  std::vector<CosetEntry> entries;
  std::set<ZVec> coset_labels;     // every coset occurring (the set X1)
  Word source_relator;             // rotated to end with a T-syllable
};

// Pushes all T-letters left through the coefficients, producing
// t * prod_i g_i^(rep_i + k_i t) = 1. Requires a certified generalized
// report and a nonsplitting presentation (the t_i must not generate a
// cyclic subgroup); throws SplittingCase / NotUnimodular otherwise.
CosetForm rewrite_to_coset_form(const RelativePresentation& p);

// Same rewriting from an explicit coefficient/translation pair list.
CosetForm rewrite_pairs_to_coset_form(const Alphabet& a, const std::string& t_factor,
                                      const std::vector<std::pair<Word, Element>>& pairs);

// Expands a coset form back into a word over the original alphabet; equals
// source_relator exactly after free reduction.
Word expand_coset_form(const Alphabet& a, const std::string& t_factor, const CosetForm& cf);

// Finite set system (I, Omega) with caller-supplied intersection
// certificates per member set.
struct SetSystem {
  std::vector<std::string> elements;       // the index set I
  std::vector<std::vector<int>> omegas;    // subsets as element indices
  std::vector<bool> n_flags;               // caller-asserted certificates, recorded only
};

struct SubfamilyWitness {
  uint32_t family_mask = 0;
  int min_elem = -1, max_elem = -1;
  int omega_min = -1, omega_max = -1;
  bool ok = false;
};

struct OmegaReport {
  bool ok = false;
  std::optional<uint32_t> failing_family;  // first failing subfamily mask
  std::vector<SubfamilyWitness> witnesses; // populated when |Omega| <= 10
  size_t families_checked = 0;
};

// Exhaustively checks every subfamily F with |F| >= 2 for two elements that
// each lie in exactly one member of F, with distinct members. |Omega| is
// capped at 20 (TooLarge beyond).
OmegaReport check_omega_conditions(const SetSystem& s);

struct CoefficientStatus {
  Word coefficient;
  bool infinite_order = false;
};

struct HypothesisReport {
  bool unimodular = false;
  std::vector<CoefficientStatus> coefficients;
  bool coefficients_ok = false;
  bool not_conjugate_into_subfamily = false;
  bool splitting = false;  // relator is a power of the designated generator
  bool all_green() const {
    return unimodular && coefficients_ok && not_conjugate_into_subfamily && !splitting;
  }
};

// Bundles the decidable hypothesis checks for a presentation over a free
// product with one designated free generator.
HypothesisReport hypothesis_report(const RelativePresentation& p, const std::string& gen,
                                   const SubproductSpec& subfamily);

}  // namespace relpres
