// Stacking structures: a prefix-closed normal-form language for a group
// together with a bounded stacking map phi(y, a), the word labelling the
// flow path that replaces the Cayley-graph edge from y labelled a.
//
// From this data we get the prefix-rewriting word-problem solver
// (normalize), balls in the Cayley graph, the synchronous acceptor of
// graph(phi), and a verifier for the flow-function axioms on a ball.

#ifndef AUTOSTACK_STACKING_HPP_
#define AUTOSTACK_STACKING_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "autostack/exec.hpp"
#include "autostack/fsa.hpp"
#include "autostack/words.hpp"

namespace autostack {

  //! phi(y, letter) = output for every normal form y accepted by guard.
  struct PiecewiseRule {
    Fsa    guard;
    Letter letter;
    Word   output;
  };

  using StackFn    = std::function<Word(Word const&, Letter)>;
  using Normalizer = std::function<Word(Word const&)>;

  //! An independent solution to the word problem, mapping any word to the
  //! normal form of the element it represents.
  struct Oracle {
    std::string name;
    Normalizer  normalize;
  };

  struct NormalizeOptions {
    //! Maximum number of edge visits inside one normalize_step call. When
    //! unset, 10 * k^(r + 2) with r = l(y) + 1.
    std::optional<std::uint64_t> budget;
  };

  class StackingStructure {
   public:
    //! Rule-based structure; phi is read off the unique matching guard.
    StackingStructure(std::string                name,
                      Alphabet                   alphabet,
                      Fsa                        normal_forms,
                      std::vector<PiecewiseRule> rules,
                      std::size_t                bound,
                      std::vector<Word>          relators);

    //! Opaque structure whose stacking map is only available as a callable.
    StackingStructure(std::string       name,
                      Alphabet          alphabet,
                      Fsa               normal_forms,
                      StackFn           stack_fn,
                      std::size_t       bound,
                      std::vector<Word> relators);

    StackingStructure with_oracle(Oracle oracle) const;
    StackingStructure with_bound(std::size_t bound) const;
    StackingStructure with_rules(std::vector<PiecewiseRule> rules) const;
    //! Attaches a callable route alongside the rules; verify cross-checks them.
    StackingStructure with_stack_fn(StackFn fn) const;
    StackingStructure with_name(std::string name) const;

    std::string const& name() const noexcept {
      return d_->name;
    }
    Alphabet const& alphabet() const noexcept {
      return d_->alphabet;
    }
    Fsa const& normal_forms() const noexcept {
      return d_->normal_forms;
    }
    std::vector<PiecewiseRule> const& rules() const noexcept {
      return d_->rules;
    }
    bool has_rules() const noexcept {
      return d_->has_rules;
    }
    StackFn const& stack_fn() const noexcept {
      return d_->stack_fn;
    }
    std::size_t bound() const noexcept {
      return d_->bound;
    }
    std::vector<Word> const& relators() const noexcept {
      return d_->relators;
    }
    std::optional<Oracle> const& oracle() const noexcept {
      return d_->oracle;
    }

    bool is_normal_form(Word const& y) const {
      return d_->normal_forms.accepts(y);
    }

    //! y a is a normal form, or y ends with a^-1. Throws NotNormalForm.
    bool is_tree_edge(Word const& y, Letter a) const;

    //! phi(y, a). Throws CoverageViolation when no guard (or more than one)
    //! accepts y, and NotNormalForm when y is not a normal form.
    Word stack(Word const& y, Letter a) const;
    //! Indices into rules() of every rule for letter a whose guard accepts y.
    std::vector<std::size_t> matching_rules(Word const& y, Letter a) const;

    //! Normal form of the element y a. Throws BudgetExceeded.
    Word normalize_step(Word const&             y,
                        Letter                  a,
                        NormalizeOptions const& opts = {}) const;
    //! Normal form of the element y w, for a normal form y.
    Word normalize_from(Word const&             y,
                        Word const&             w,
                        NormalizeOptions const& opts = {}) const;
    Word normalize(Word const& w, NormalizeOptions const& opts = {}) const;

    std::uint64_t default_budget(std::size_t r) const;

   private:
    struct Dispatch {
      std::size_t         num_states = 0;
      std::vector<State>  table;
      // Matching rule index per state; -1 none, -2 several.
      std::vector<std::int64_t> rule;
    };

    struct Data {
      std::string                name;
      Alphabet                   alphabet;
      Fsa                        normal_forms;
      std::vector<PiecewiseRule> rules;
      bool                       has_rules = false;
      StackFn                    stack_fn;
      std::size_t                bound = 0;
      std::vector<Word>          relators;
      std::optional<Oracle>      oracle;
      std::vector<Dispatch>      dispatch;  // one per letter
    };

    explicit StackingStructure(std::shared_ptr<Data const> d) : d_(std::move(d)) {}
    static std::shared_ptr<Data const> finish(Data d);
    void require_normal_form(Word const& y) const;
    Word lookup(Word const& y, Letter a) const;

    std::shared_ptr<Data const> d_;
  };

  //! Normal forms of all elements at word-metric distance <= r from the
  //! identity, in length-lexicographic order.
  std::vector<Word> ball(StackingStructure const& s,
                         std::size_t              r,
                         Exec                     exec = Exec::parallel);

  //! pad({(y, a, phi(y, a))}) as the union over the rules of
  //! pad(guard x {a} x {output}). Throws Unsupported for opaque structures.
  SyncAcceptor graph_automaton(StackingStructure const& s);

  ////////////////////////////////////////////////////////////////////////
  // Prefix-rewriting view
  ////////////////////////////////////////////////////////////////////////

  //! lhs -> rhs, both of the form w s -> w t with w = the first `common`
  //! letters of each side.
  struct PrefixRule {
    Word        lhs;
    Word        rhs;
    std::size_t common    = 0;
    bool        backtrack = false;  // y x^-1 x -> y, from a tree edge
  };

  //! The prefix-rewriting rules y a -> y phi(y, a) (freely reduced) for the
  //! non-tree edges with source in ball(s, r), plus the backtracking rules.
  std::vector<PrefixRule> to_prefix_rules(StackingStructure const& s, std::size_t r);
  std::string             format_rule(Alphabet const& alphabet, PrefixRule const& rule);

  ////////////////////////////////////////////////////////////////////////
  // Well-foundedness certificates
  ////////////////////////////////////////////////////////////////////////

  //! A map from directed edges to tuples of naturals that strictly
  //! decreases (lexicographically) along flow paths on non-tree edges.
  //! nullopt means the value could not be determined.
  struct PsiCertificate {
    std::size_t dimension = 2;
    std::function<std::optional<std::vector<std::size_t>>(Word const&, Letter)> eval;
  };

  bool lex_less(std::vector<std::size_t> const& x, std::vector<std::size_t> const& y);

  //! Longest descending chain from an edge in the flow order, counting the
  //! edge itself; 0 for tree edges. Only edges whose source lies in a fixed
  //! ball are explored; anything that leaves it is indeterminate. Safe to
  //! share between threads.
  class ChainLengths {
   public:
    ChainLengths(StackingStructure s, std::size_t radius);
    std::optional<std::size_t> operator()(Word const& y, Letter a) const;

   private:
    struct State;
    std::shared_ptr<State> state_;
  };

}  // namespace autostack

#endif  // AUTOSTACK_STACKING_HPP_
