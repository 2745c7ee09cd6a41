#include "autostack/kernels.hpp"

#include <random>

#include <fmt/format.h>

namespace autostack {

  std::vector<EdgeRecord> scan_edges(StackingStructure const&     s,
                                     std::vector<Word> const&     sources,
                                     std::optional<std::uint64_t> budget,
                                     Exec                         exec) {
    auto const              k = s.alphabet().size();
    std::vector<EdgeRecord> out(sources.size() * k);
    NormalizeOptions const  opts{budget};
    auto const&             oracle = s.oracle();

    for_each_index(out.size(), exec, [&](std::size_t i) {
      auto&        rec = out[i];
      Word const&  y   = sources[i / k];
      Letter const a   = static_cast<Letter>(i % k);
      rec.source       = y;
      rec.letter       = a;
      try {
        rec.tree    = s.is_tree_edge(y, a);
        rec.matches = s.has_rules() ? s.matching_rules(y, a).size() : 1;
        if (s.has_rules() && s.stack_fn()) {
          rec.callable = s.stack_fn()(y, a);
        }
        rec.stack = s.stack(y, a);
        if (oracle) {
          rec.oracle_target = oracle->normalize(concat(y, Word{a}));
          rec.oracle_flow   = oracle->normalize(concat(y, *rec.stack));
        }
        if (!rec.tree) {
          Word cur = y;
          for (auto x : *rec.stack) {
            PathEdge e{cur, x, {}, s.is_tree_edge(cur, x)};
            e.target = s.normalize_step(cur, x, opts);
            cur      = e.target;
            rec.path.push_back(std::move(e));
          }
        }
        rec.target = s.normalize_step(y, a, opts);
      } catch (BudgetExceeded const& e) {
        rec.error       = e.what();
        rec.over_budget = true;
      } catch (CoverageViolation const& e) {
        rec.error     = e.what();
        rec.uncovered = true;
      } catch (std::exception const& e) {
        rec.error = e.what();
      }
    });
    return out;
  }

  std::vector<std::optional<std::string>> relator_failures(StackingStructure const& s,
                                                           std::vector<Word> const& sources,
                                                           Exec                     exec) {
    std::vector<std::optional<std::string>> out(sources.size());
    auto const&                             alpha = s.alphabet();
    for_each_index(sources.size(), exec, [&](std::size_t i) {
      Word const& y = sources[i];
      for (auto const& rho : s.relators()) {
        try {
          auto end = s.normalize_from(y, rho);
          if (end != y) {
            out[i] = fmt::format("y = '{}', relator '{}' ends at '{}'", alpha.format(y), alpha.format(rho),
                                 alpha.format(end));
            return;
          }
        } catch (std::exception const& e) {
          out[i] = fmt::format("y = '{}', relator '{}': {}", alpha.format(y), alpha.format(rho), e.what());
          return;
        }
      }
    });
    return out;
  }

  std::vector<OracleMismatch> oracle_mismatches(StackingStructure const& s,
                                                std::vector<Word> const& words,
                                                Exec                     exec) {
    auto const& oracle = s.oracle();
    if (!oracle) {
      throw Unsupported(fmt::format("'{}' has no oracle", s.name()));
    }
    std::vector<std::optional<OracleMismatch>> slots(words.size());
    for_each_index(words.size(), exec, [&](std::size_t i) {
      OracleMismatch m{words[i], {}, {}, {}};
      try {
        m.oracle = oracle->normalize(words[i]);
        m.flow   = s.normalize(words[i]);
        if (m.flow != m.oracle) {
          slots[i] = std::move(m);
        }
      } catch (std::exception const& e) {
        m.flow.clear();
        m.error  = e.what();
        slots[i] = std::move(m);
      }
    });
    std::vector<OracleMismatch> out;
    for (auto& m : slots) {
      if (m) {
        out.push_back(std::move(*m));
      }
    }
    return out;
  }

  std::vector<Word> all_words(Alphabet const& alphabet, std::size_t max_len) {
    std::vector<Word> out{Word{}};
    std::size_t       layer_start = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
      std::size_t const layer_end = out.size();
      for (std::size_t i = layer_start; i < layer_end; ++i) {
        for (Letter x = 0; x < alphabet.size(); ++x) {
          Word w = out[i];
          w.push_back(x);
          out.push_back(std::move(w));
        }
      }
      layer_start = layer_end;
    }
    return out;
  }

  std::vector<Word> random_words(Alphabet const& alphabet,
                                 std::size_t     count,
                                 std::size_t     max_len,
                                 std::uint64_t   seed) {
    std::vector<Word> out;
    if (alphabet.size() == 0) {
      out.assign(count, Word{});
      return out;
    }
    std::mt19937_64                            rng(seed);
    std::uniform_int_distribution<std::size_t> length(0, max_len);
    std::uniform_int_distribution<Letter>      letter(0, static_cast<Letter>(alphabet.size() - 1));
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      Word w(length(rng));
      for (auto& x : w) {
        x = letter(rng);
      }
      out.push_back(std::move(w));
    }
    return out;
  }

}  // namespace autostack
