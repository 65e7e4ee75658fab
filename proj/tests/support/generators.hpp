// Seeded random inputs for the property tests and the acceptance suite.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sortlogic/model.hpp"
#include "sortlogic/proof.hpp"
#include "sortlogic/sem_henkin.hpp"
#include "sortlogic/syntax.hpp"

namespace testing_gen {

using namespace sortlogic;
using Rng = std::mt19937_64;

/// P:(0), Q:(1), R:(0,1), S:(0,0).
Vocabulary standard_vocabulary();

struct FormulaOptions {
  std::size_t max_depth = 4;      // nesting of connectives and quantifiers
  std::size_t max_rank = 3;       // quantifier rank
  std::vector<SortId> base_sorts{0, 1};
  bool relation_quantifiers = true;
  std::size_t max_relation_arity = 2;
  std::size_t max_relation_quantifiers = 2;
  bool block_quantifiers = false;
  std::vector<SortId> block_sorts{2, 3};
  bool sentence = true;           // otherwise free variables may appear
};

/// A random formula that is well-formed over `voc`.
Formula random_formula(Rng& rng, const Vocabulary& voc, const FormulaOptions& opt);

/// Domains for `sorts` with 1..max_size elements each (drawn from a shared
/// pool so that sorts may overlap) and random interpretations of `voc`.
Structure random_structure(Rng& rng, const Vocabulary& voc, const std::vector<SortId>& sorts, std::size_t max_size);

/// Every structure over `voc` on sort 0 with 1..max_size elements and
/// every interpretation of the symbols. Intended for tiny vocabularies.
std::vector<Structure> all_structures(const Vocabulary& voc, const std::vector<SortId>& sorts, std::size_t max_size);

/// A Henkin structure over a random base on `sorts`: U holds every base
/// domain plus random extra domains, G holds random relations of the given
/// types (and every unary type of the sorts), with each type either complete
/// over its elements or a random selection.
HenkinStructure random_henkin(Rng& rng, const Vocabulary& voc, const std::vector<SortId>& sorts,
                              const std::vector<std::vector<SortId>>& types, std::size_t max_size);

/// A proof with random lines and justifications, not necessarily valid.
Proof random_proof(Rng& rng, const Vocabulary& voc, std::size_t lines);

}  // namespace testing_gen
