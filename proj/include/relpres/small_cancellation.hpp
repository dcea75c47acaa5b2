#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relpres/rational.hpp"
#include "relpres/word.hpp"

namespace relpres {

// Cyclic-shift-and-inverse closure of a relator list. Relators collapse to
// cyclic classes (a relator given twice, or together with a rotation of
// itself, counts once); members are the distinct linear words obtained by
// rotating each class at syllable boundaries.
class SymmetrizedSet {
public:
  struct Occurrence {
    size_t cls = 0;
    size_t letter_offset = 0;  // relative to the class word's letter sequence
  };

  size_t class_count() const { return class_words_.size(); }
  const Word& class_word(size_t i) const { return class_words_[i]; }
  size_t class_syllables(size_t i) const { return class_words_[i].size(); }
  size_t class_letters(size_t i) const { return letter_lengths_[i]; }
  // letter offsets where a syllable of the class word starts
  const std::vector<size_t>& boundaries(size_t cls) const { return boundaries_[cls]; }

  size_t member_count() const;
  Word member(size_t index) const;
  size_t min_member_syllables() const;

  // All letter-level rotations, one per (class, offset). Offsets inside a
  // free-generator power are included so self-overlaps of powers are
  // visible to the piece scan.
  const std::vector<Occurrence>& occurrences() const { return occurrences_; }
  Word occurrence_word(const Occurrence& o) const;

  const Alphabet& alphabet() const { return *alphabet_; }

private:
  friend SymmetrizedSet symmetrize(const Alphabet& a, const std::vector<Word>& relators);

  const Alphabet* alphabet_ = nullptr;
  std::vector<Word> class_words_;
  std::vector<size_t> letter_lengths_;
  std::vector<size_t> periods_;  // minimal cyclic period in letters
  std::vector<std::vector<size_t>> boundaries_;
  std::vector<Occurrence> occurrences_;
};

// Throws IdentityRelator if any relator is trivial after cyclic reduction.
SymmetrizedSet symmetrize(const Alphabet& a, const std::vector<Word>& relators);

struct PieceWitness {
  Word first, second;
  Word shared_prefix;
};

struct PieceReport {
  size_t max_piece_syllables = 0;
  std::optional<PieceWitness> witness;
  size_t min_relator_syllables = 0;
  Rat ratio;  // max_piece_syllables / min_relator_syllables, exact
};

// Maximal common normal-form prefix over all pairs of distinct occurrences,
// measured in syllables. A trailing partial match inside one syllable
// (nonempty common letter-prefix for letter backends, any same-factor pair
// for opaque backends) counts as one full syllable -- the conservative
// direction for verifying C'(lambda).
PieceReport max_piece(const Alphabet& a, const SymmetrizedSet& s);

struct CPrimeReport {
  bool holds = false;
  Rat lambda;
  PieceReport pieces;
};

// C'(lambda): every piece is strictly shorter than lambda times the
// syllable length of every member containing it.
CPrimeReport check_cprime(const Alphabet& a, const std::vector<Word>& relators, Rat lambda);

struct RelatorFamily {
  Alphabet alphabet;
  std::vector<Word> relators;
};

// count relators v_i s_i^-1 where v_i is a product of blocks*arms fresh
// symbols spread cyclically over `arms` formally-distinct factors. Every
// symbol occurs exactly once across the family.
RelatorFamily build_product_block_family(int arms, int count, int blocks = 2017);

// count relators s_i r t_i1 r t_i2 ... r t_iblocks with one shared symbol r
// and fresh s_i, t_ij; relator length 2*blocks + 1 syllables.
RelatorFamily build_shared_letter_family(int count, int blocks = 1000);

}  // namespace relpres
