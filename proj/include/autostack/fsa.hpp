// Deterministic finite-state acceptors, the regular-language closure
// operations, and acceptors over padded n-tuple alphabets for synchronously
// regular relations.
//
// Every Fsa is complete and deterministic. A non-accepting sink ("dead
// state") absorbs moves that leave the language. Nondeterminism only appears
// inside concat / star / proj1, which determinize before returning.

#ifndef AUTOSTACK_FSA_HPP_
#define AUTOSTACK_FSA_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "autostack/words.hpp"

namespace autostack {

  using Symbol = std::uint32_t;
  using State  = std::uint32_t;

  class Fsa {
   public:
    //! `table[q * symbols->size() + s]` is the successor of state q on s.
    Fsa(SymbolsPtr         symbols,
        std::size_t        num_states,
        State              start,
        std::vector<bool>  accepting,
        std::vector<State> table);

    static Fsa empty_language(SymbolsPtr symbols);
    static Fsa epsilon(SymbolsPtr symbols);
    //! All of A*.
    static Fsa universal(SymbolsPtr symbols);
    static Fsa word(SymbolsPtr symbols, std::span<Symbol const> w);
    static Fsa finite(SymbolsPtr symbols, std::vector<Word> const& words);
    //! The one-letter words over `letters`.
    static Fsa letters(SymbolsPtr symbols, std::span<Symbol const> letters);

    SymbolsPtr const& symbols() const noexcept {
      return symbols_;
    }
    std::size_t num_symbols() const noexcept {
      return symbols_->size();
    }
    std::size_t num_states() const noexcept {
      return accepting_.size();
    }
    State start() const noexcept {
      return start_;
    }
    bool is_accepting(State q) const {
      return accepting_[q];
    }
    State next(State q, Symbol s) const {
      return table_[static_cast<std::size_t>(q) * symbols_->size() + s];
    }

    State run(State q, std::span<Symbol const> w) const {
      for (auto s : w) {
        q = next(q, s);
      }
      return q;
    }
    bool accepts(std::span<Symbol const> w) const {
      return accepting_[run(start_, w)];
    }

    //! True iff q is non-accepting and every move from q returns to q.
    bool is_dead(State q) const;

   private:
    SymbolsPtr         symbols_;
    State              start_;
    std::vector<bool>  accepting_;
    std::vector<State> table_;
  };

  // Boolean operations require identical symbol tables.
  Fsa unite(Fsa const& x, Fsa const& y);
  Fsa intersect(Fsa const& x, Fsa const& y);
  Fsa difference(Fsa const& x, Fsa const& y);
  //! Complement relative to A*.
  Fsa complement(Fsa const& x);
  Fsa concat(Fsa const& x, Fsa const& y);
  Fsa star(Fsa const& x);

  //! {w in domain* : h(w) in L(f)} where h(s) = images[s].
  Fsa hom_preimage(Fsa const&               f,
                   SymbolsPtr               domain,
                   std::vector<Word> const& images);

  //! The quotient L/w = {x : xw in L}.
  Fsa quotient(Fsa const& f, std::span<Symbol const> w);

  //! Re-indexes the symbols of f into `target`: old symbol s becomes
  //! old_to_new[s]; target symbols outside the image lead to the dead state.
  Fsa rename_symbols(Fsa const&                                f,
                     SymbolsPtr                                target,
                     std::vector<std::optional<Symbol>> const& old_to_new);
  //! Same as rename_symbols, matching symbols by name.
  Fsa with_symbols(Fsa const& f, SymbolsPtr target);

  //! Minimal complete DFA, states numbered in breadth-first order from the
  //! start state (so equal languages give identical tables).
  Fsa minimize(Fsa const& f);

  bool is_empty(Fsa const& f);
  bool is_subset(Fsa const& x, Fsa const& y);
  bool equivalent(Fsa const& x, Fsa const& y);
  //! Every prefix of an accepted word is accepted.
  bool is_prefix_closed(Fsa const& f);
  //! Some accepted word, shortest first; nothing if the language is empty.
  std::optional<Word> shortest_word(Fsa const& f);

  //! All accepted words of length <= max_len, in length-lexicographic order.
  std::vector<Word> enumerate(Fsa const& f, std::size_t max_len);

  ////////////////////////////////////////////////////////////////////////
  // Padded alphabets
  ////////////////////////////////////////////////////////////////////////

  //! (A u {$})^n minus the all-padding tuple. The padding symbol is encoded
  //! as base().size(); a tuple (c_1, ..., c_n) has index
  //! c_1 (m+1)^(n-1) + ... + c_n, so the all-$ tuple would be the largest
  //! value and every valid index is below (m+1)^n - 1.
  class PaddedAlphabet {
   public:
    PaddedAlphabet(SymbolsPtr base, std::size_t arity);

    SymbolsPtr const& base() const noexcept {
      return base_;
    }
    SymbolsPtr const& symbols() const noexcept {
      return symbols_;
    }
    std::size_t arity() const noexcept {
      return arity_;
    }
    Symbol padding() const noexcept {
      return static_cast<Symbol>(base_->size());
    }

    //! Components are base symbols or padding().
    Symbol              encode(std::span<Symbol const> tuple) const;
    std::vector<Symbol> decode(Symbol s) const;

    bool operator==(PaddedAlphabet const& that) const {
      return arity_ == that.arity_ && same_symbols(base_, that.base_);
    }

   private:
    SymbolsPtr  base_;
    std::size_t arity_;
    SymbolsPtr  symbols_;
  };

  //! pad(u_1, ..., u_n): right-pad with $ to the longest length and zip.
  Word pad(PaddedAlphabet const& alphabet, std::vector<Word> const& tuple);
  //! Inverse of pad on well-formed padded words; throws otherwise.
  std::vector<Word> unpad(PaddedAlphabet const& alphabet, Word const& padded);

  //! The padded words in which every coordinate's $ symbols form a suffix.
  Fsa well_formed(PaddedAlphabet const& alphabet);

  //! Acceptor over a padded alphabet whose language consists of well-formed
  //! padded words only.
  class SyncAcceptor {
   public:
    //! Intersects f with the well-formed padded words.
    SyncAcceptor(PaddedAlphabet alphabet, Fsa const& f);

    PaddedAlphabet const& alphabet() const noexcept {
      return alphabet_;
    }
    Fsa const& fsa() const noexcept {
      return fsa_;
    }
    bool accepts(std::vector<Word> const& tuple) const {
      return fsa_.accepts(pad(alphabet_, tuple));
    }

   private:
    struct Trusted {};
    SyncAcceptor(PaddedAlphabet alphabet, Fsa f, Trusted)
        : alphabet_(std::move(alphabet)), fsa_(std::move(f)) {}
    friend SyncAcceptor product(std::vector<Fsa> const&);
    friend SyncAcceptor unite(SyncAcceptor const&, SyncAcceptor const&);

    PaddedAlphabet alphabet_;
    Fsa            fsa_;
  };

  //! Accepts pad(L(f_1) x ... x L(f_n)); all factors share one base alphabet.
  SyncAcceptor product(std::vector<Fsa> const& factors);
  SyncAcceptor unite(SyncAcceptor const& x, SyncAcceptor const& y);

  //! {u : exists (u, u_2, ..., u_n) in L}.
  Fsa proj1(SyncAcceptor const& s);

}  // namespace autostack

#endif  // AUTOSTACK_FSA_HPP_
