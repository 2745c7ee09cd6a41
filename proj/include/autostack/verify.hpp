// Desk-scale verification of the flow-function axioms on a ball.

#ifndef AUTOSTACK_VERIFY_HPP_
#define AUTOSTACK_VERIFY_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autostack/kernels.hpp"
#include "autostack/stacking.hpp"

namespace autostack {

  struct CheckResult {
    std::string              name;
    bool                     passed  = true;
    std::size_t              checked = 0;
    std::vector<std::string> witnesses;
    std::string              note;
  };

  struct VerifyReport {
    std::string              structure;
    std::size_t              radius    = 0;
    std::size_t              ball_size = 0;
    std::vector<CheckResult> checks;

    bool               passed() const;
    CheckResult const& check(std::string const& name) const;
  };

  struct VerifyOptions {
    std::optional<std::uint64_t> budget;
    Exec                         exec          = Exec::parallel;
    std::size_t                  max_witnesses = 5;
    //! Treat e and its reverse as one node of the F2r dependency graph.
    //! The relation is defined on directed edges, and merging reports
    //! spurious cycles for valid structures (Stallings' group among them),
    //! so this is off by default.
    bool merge_reverse_edges = false;
  };

  //! Checks, over every edge with source in ball(s, radius):
  //!   guard-partition  guards lie in N and partition it per letter
  //!   boundedness      l(phi(y, a)) <= k
  //!   F2d              phi(y, a) = a on tree edges
  //!   F1               the flow path ends at y a (and agrees with the oracle)
  //!   oracle           normal forms agree with the oracle, when present
  //!   dual-route       rules agree with the attached callable, when both exist
  //!   F2r              flows terminate in budget and the dependency relation
  //!                    between non-tree edges is acyclic on the ball
  //!   prefix-closure   N contains the empty word and is prefix-closed
  //!   relators         every relator closes up at every ball element
  VerifyReport verify(StackingStructure const& s,
                      std::size_t              radius,
                      VerifyOptions const&     opts = {});

  std::string format_report(VerifyReport const& report);

  //! Exhaustive psi-monotonicity: for every non-tree edge e with source in
  //! ball(s, radius) and every non-tree edge e' on its flow path,
  //! psi(e') <_lex psi(e).
  struct PsiReport {
    std::size_t              edges         = 0;
    std::size_t              pairs         = 0;
    std::size_t              violations    = 0;
    std::size_t              indeterminate = 0;
    std::vector<std::string> witnesses;
  };

  PsiReport check_psi(StackingStructure const& s,
                      PsiCertificate const&    psi,
                      std::size_t              radius,
                      Exec                     exec = Exec::parallel);

}  // namespace autostack

#endif  // AUTOSTACK_VERIFY_HPP_
