#include "autostack/words.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace autostack {

  Symbols::Symbols(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::uint32_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) {
        throw ParseError("symbol names must be non-empty");
      }
      if (!index_.emplace(names_[i], i).second) {
        throw ParseError("duplicate symbol name '" + names_[i] + "'");
      }
    }
  }

  std::optional<std::uint32_t> Symbols::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  bool same_symbols(SymbolsPtr const& x, SymbolsPtr const& y) {
    return x == y || (x && y && *x == *y);
  }

  ////////////////////////////////////////////////////////////////////////
  // Alphabet
  ////////////////////////////////////////////////////////////////////////

  Alphabet::Alphabet(std::vector<std::string> names, std::vector<Letter> inverse)
      : symbols_(std::make_shared<Symbols const>(std::move(names))),
        inverse_(std::move(inverse)) {
    if (symbols_->size() != inverse_.size()) {
      throw ParseError("alphabet: names and inverses differ in length");
    }
    for (Letter x = 0; x < inverse_.size(); ++x) {
      if (inverse_[x] >= inverse_.size() || inverse_[inverse_[x]] != x) {
        throw ParseError("alphabet: inverse is not an involution at '"
                         + symbols_->name(x) + "'");
      }
    }
    for (auto const& n : symbols_->names()) {
      if (n == "$" || n == ">") {
        throw ParseError("alphabet: '" + n + "' is a reserved symbol");
      }
      if (n.find_first_of(" \t\n") != std::string::npos) {
        throw ParseError("alphabet: letter names may not contain whitespace");
      }
    }
  }

  Alphabet Alphabet::with_inverses(std::vector<std::string> const& generators) {
    std::vector<std::string> names;
    std::vector<Letter>      inverse;
    for (auto const& g : generators) {
      auto const i = static_cast<Letter>(names.size());
      names.push_back(g);
      names.push_back(g + "^-1");
      inverse.push_back(i + 1);
      inverse.push_back(i);
    }
    return Alphabet(std::move(names), std::move(inverse));
  }

  std::optional<Letter> Alphabet::find(std::string_view name) const {
    return symbols_->find(name);
  }

  Letter Alphabet::letter(std::string_view name) const {
    auto x = find(name);
    if (!x) {
      throw ParseError("unknown letter '" + std::string(name) + "'");
    }
    return *x;
  }

  Word Alphabet::parse(std::string_view text) const {
    Word               result;
    std::istringstream in{std::string(text)};
    std::string        token;
    while (in >> token) {
      if (auto x = find(token)) {
        result.push_back(*x);
        continue;
      }
      auto const caret = token.rfind('^');
      if (caret == std::string::npos || caret == 0) {
        throw ParseError("unknown letter '" + token + "'");
      }
      long        exponent = 0;
      char const* first    = token.data() + caret + 1;
      char const* last     = token.data() + token.size();
      auto [ptr, ec]       = std::from_chars(first, last, exponent);
      auto base            = find(std::string_view(token).substr(0, caret));
      if (ec != std::errc() || ptr != last || !base) {
        throw ParseError("unknown letter '" + token + "'");
      }
      auto p = power(*base, inverse(*base), exponent);
      result.insert(result.end(), p.begin(), p.end());
    }
    return result;
  }

  std::string Alphabet::format(Word const& w) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i != 0) {
        out += ' ';
      }
      out += name(w[i]);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // LetterSet
  ////////////////////////////////////////////////////////////////////////

  LetterSet::LetterSet(std::size_t alphabet_size, std::vector<Letter> const& members)
      : bits_(alphabet_size, false) {
    for (auto x : members) {
      bits_.at(x) = true;
    }
  }

  std::vector<Letter> LetterSet::members() const {
    std::vector<Letter> out;
    for (Letter x = 0; x < bits_.size(); ++x) {
      if (bits_[x]) {
        out.push_back(x);
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Word operations
  ////////////////////////////////////////////////////////////////////////

  Word formal_inverse(Alphabet const& alphabet, Word const& w) {
    Word out(w.rbegin(), w.rend());
    for (auto& x : out) {
      x = alphabet.inverse(x);
    }
    return out;
  }

  std::optional<Letter> last_letter(Word const& w) {
    if (w.empty()) {
      return std::nullopt;
    }
    return w.back();
  }

  std::size_t max_suffix_length(Word const& w, LetterSet const& z) {
    auto it = std::find_if_not(w.rbegin(), w.rend(), [&z](Letter x) {
      return z.contains(x);
    });
    return static_cast<std::size_t>(it - w.rbegin());
  }

  Word max_suffix(Word const& w, LetterSet const& z) {
    return Word(w.end() - max_suffix_length(w, z), w.end());
  }

  Word free_reduce(Alphabet const& alphabet, Word const& w) {
    Word out;
    out.reserve(w.size());
    for (auto x : w) {
      if (!out.empty() && out.back() == alphabet.inverse(x)) {
        out.pop_back();
      } else {
        out.push_back(x);
      }
    }
    return out;
  }

  bool is_freely_reduced(Alphabet const& alphabet, Word const& w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i] == alphabet.inverse(w[i - 1])) {
        return false;
      }
    }
    return true;
  }

  Word concat(Word const& u, Word const& v) {
    Word out;
    out.reserve(u.size() + v.size());
    out.insert(out.end(), u.begin(), u.end());
    out.insert(out.end(), v.begin(), v.end());
    return out;
  }

  Word power(Letter x, Letter x_inverse, long exponent) {
    auto const n = static_cast<std::size_t>(exponent < 0 ? -exponent : exponent);
    return Word(n, exponent < 0 ? x_inverse : x);
  }

  bool shortlex_less(Word const& u, Word const& v) {
    if (u.size() != v.size()) {
      return u.size() < v.size();
    }
    return u < v;
  }

  std::size_t WordHash::operator()(Word const& w) const noexcept {
    // FNV-1a over the letter values.
    std::uint64_t h = 1469598103934665603ULL;
    for (auto x : w) {
      h ^= x + 0x9e3779b9U;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }

}  // namespace autostack
