// Alphabets with a formal inversion, words over them, and the handful of
// word-combinatorics primitives used throughout the library.

#ifndef AUTOSTACK_WORDS_HPP_
#define AUTOSTACK_WORDS_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "autostack/error.hpp"

namespace autostack {

  using Letter = std::uint32_t;
  using Word   = std::vector<Letter>;

  //! Ordered, immutable list of symbol names with a reverse index.
  //!
  //! Shared between an Alphabet and every Fsa built over it, so that
  //! alphabet compatibility checks are usually a pointer comparison.
  class Symbols {
   public:
    explicit Symbols(std::vector<std::string> names);

    std::size_t size() const noexcept {
      return names_.size();
    }
    std::string const& name(std::uint32_t s) const {
      return names_.at(s);
    }
    std::vector<std::string> const& names() const noexcept {
      return names_;
    }
    std::optional<std::uint32_t> find(std::string_view name) const;

    bool operator==(Symbols const& that) const {
      return names_ == that.names_;
    }

   private:
    std::vector<std::string>                        names_;
    std::unordered_map<std::string, std::uint32_t> index_;
  };

  using SymbolsPtr = std::shared_ptr<Symbols const>;

  bool same_symbols(SymbolsPtr const& x, SymbolsPtr const& y);

  //! A finite generating set closed under a declared involution.
  //!
  //! Letters are the indices 0, ..., size() - 1 in declaration order; this
  //! order is the one used for every length-lexicographic enumeration.
  class Alphabet {
   public:
    Alphabet() = default;

    //! Letters are named by `names`; `inverse[i]` is the index of the inverse
    //! of letter `i`. Throws if the map is not an involution or names repeat.
    Alphabet(std::vector<std::string> names, std::vector<Letter> inverse);

    //! For generators {g_1, ..., g_n} builds g_1, g_1^-1, ..., g_n, g_n^-1.
    static Alphabet with_inverses(std::vector<std::string> const& generators);

    std::size_t size() const noexcept {
      return inverse_.size();
    }
    std::string const& name(Letter x) const {
      return symbols_->name(x);
    }
    Letter inverse(Letter x) const {
      return inverse_.at(x);
    }
    std::vector<Letter> const& inverses() const noexcept {
      return inverse_;
    }
    std::vector<std::string> const& names() const noexcept {
      return symbols_->names();
    }
    SymbolsPtr const& symbols() const noexcept {
      return symbols_;
    }

    std::optional<Letter> find(std::string_view name) const;
    Letter                letter(std::string_view name) const;

    //! Parses whitespace-separated letter names. A token `x^n` that is not
    //! itself a letter name is read as the power x^n of letter `x`.
    Word parse(std::string_view text) const;
    //! Whitespace-separated letter names; the empty word is "".
    std::string format(Word const& w) const;

    bool operator==(Alphabet const& that) const {
      return inverse_ == that.inverse_ && *symbols_ == *that.symbols_;
    }

   private:
    SymbolsPtr          symbols_ = std::make_shared<Symbols const>(
        std::vector<std::string>{});
    std::vector<Letter> inverse_;
  };

  //! Membership table for a subset of an alphabet's letters.
  class LetterSet {
   public:
    LetterSet() = default;
    LetterSet(std::size_t alphabet_size, std::vector<Letter> const& members);

    bool contains(Letter x) const noexcept {
      return x < bits_.size() && bits_[x];
    }
    std::vector<Letter> members() const;

   private:
    std::vector<bool> bits_;
  };

  Word formal_inverse(Alphabet const& alphabet, Word const& w);

  //! The last letter of w, or nothing for the empty word.
  std::optional<Letter> last_letter(Word const& w);

  //! Longest suffix of w lying in Z*.
  Word        max_suffix(Word const& w, LetterSet const& z);
  std::size_t max_suffix_length(Word const& w, LetterSet const& z);

  //! Deletes factors x x^-1 until none remain.
  Word free_reduce(Alphabet const& alphabet, Word const& w);
  bool is_freely_reduced(Alphabet const& alphabet, Word const& w);

  Word concat(Word const& u, Word const& v);
  Word power(Letter x, Letter x_inverse, long exponent);

  //! Length first, then lexicographic by letter index.
  bool shortlex_less(Word const& u, Word const& v);

  struct WordHash {
    std::size_t operator()(Word const& w) const noexcept;
  };

}  // namespace autostack

#endif  // AUTOSTACK_WORDS_HPP_
