// Data-parallel kernels over edges and words. Each takes an Exec policy;
// Exec::serial is the reference loop the tests compare against.

#ifndef AUTOSTACK_KERNELS_HPP_
#define AUTOSTACK_KERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autostack/exec.hpp"
#include "autostack/stacking.hpp"

namespace autostack {

  //! One directed edge on a flow path.
  struct PathEdge {
    Word   source;
    Letter letter;
    Word   target;
    bool   tree = false;

    bool operator==(PathEdge const&) const = default;
  };

  //! Everything the verifier needs to know about one edge (y, a).
  struct EdgeRecord {
    Word                  source;
    Letter                letter  = 0;
    bool                  tree    = false;
    std::size_t           matches = 0;  // guards accepting y (rule structures)
    std::optional<Word>   stack;        // phi(y, a)
    std::optional<Word>   callable;     // secondary route, when attached
    std::optional<Word>   target;       // normal form of y a
    std::vector<PathEdge> path;         // edges of the flow path, non-tree e only
    std::optional<Word>   oracle_target;  // oracle(y a)
    std::optional<Word>   oracle_flow;    // oracle(y phi(y, a))
    std::string           error;
    bool                  over_budget = false;
    bool                  uncovered   = false;

    bool operator==(EdgeRecord const&) const = default;
  };

  //! Records for every (y, a) with y in sources, in order y-major.
  std::vector<EdgeRecord> scan_edges(StackingStructure const&     s,
                                     std::vector<Word> const&     sources,
                                     std::optional<std::uint64_t> budget,
                                     Exec                         exec);

  //! For each y, the first relator that fails to close up at y (as a
  //! message), or nothing.
  std::vector<std::optional<std::string>> relator_failures(StackingStructure const& s,
                                                           std::vector<Word> const& sources,
                                                           Exec                     exec);

  struct OracleMismatch {
    Word        word;
    Word        flow;    // normalize(word), empty when `error` is set
    Word        oracle;  // oracle(word)
    std::string error;

    bool operator==(OracleMismatch const&) const = default;
  };

  //! Words on which normalize and the attached oracle disagree.
  std::vector<OracleMismatch> oracle_mismatches(StackingStructure const& s,
                                                std::vector<Word> const& words,
                                                Exec                     exec);

  //! Every word of length <= max_len, length-lexicographic.
  std::vector<Word> all_words(Alphabet const& alphabet, std::size_t max_len);
  //! `count` uniform random words with lengths uniform in [0, max_len].
  std::vector<Word> random_words(Alphabet const& alphabet,
                                 std::size_t     count,
                                 std::size_t     max_len,
                                 std::uint64_t   seed);

}  // namespace autostack

#endif  // AUTOSTACK_KERNELS_HPP_
