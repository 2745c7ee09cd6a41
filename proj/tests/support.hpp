// Small helpers shared by the test files.

#ifndef AUTOSTACK_TESTS_SUPPORT_HPP_
#define AUTOSTACK_TESTS_SUPPORT_HPP_

#include <set>
#include <string>
#include <vector>

#include "autostack/fsa.hpp"
#include "autostack/words.hpp"

namespace autostack::test {

  inline SymbolsPtr symbols(std::vector<std::string> names) {
    return std::make_shared<Symbols const>(std::move(names));
  }

  inline Fsa finite_language(SymbolsPtr const& s, std::vector<Word> const& words) {
    return Fsa::finite(s, words);
  }

  //! Every word over k symbols of length <= n, length-lexicographic.
  inline std::vector<Word> words_up_to(std::size_t k, std::size_t n) {
    std::vector<Word> out{{}};
    for (std::size_t begin = 0, len = 0; len < n; ++len) {
      auto const end = out.size();
      for (auto i = begin; i < end; ++i) {
        for (Letter x = 0; x < k; ++x) {
          auto w = out[i];
          w.push_back(x);
          out.push_back(std::move(w));
        }
      }
      begin = end;
    }
    return out;
  }

  //! The accepted words of length <= n, found by running f on every word.
  inline std::set<Word> language(Fsa const& f, std::size_t n) {
    std::set<Word> out;
    for (auto const& w : words_up_to(f.num_symbols(), n)) {
      if (f.accepts(w)) {
        out.insert(w);
      }
    }
    return out;
  }

}  // namespace autostack::test

#endif  // AUTOSTACK_TESTS_SUPPORT_HPP_
