// Shipped structures: free groups, finite groups from a multiplication
// table, small constructed groups, and Stallings' group with its
// rewriting-system oracle.

#ifndef AUTOSTACK_INSTANCES_HPP_
#define AUTOSTACK_INSTANCES_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "autostack/constructions.hpp"
#include "autostack/stacking.hpp"

namespace autostack {

  //! Free group on the given generators (letters g, g^-1, ...): normal forms
  //! are the freely reduced words and every edge is a tree edge.
  StackingStructure free_group(std::vector<std::string> const& generators);
  //! Free group of rank n on a, b, c, ... (x1, x2, ... past 26).
  StackingStructure free_group(std::size_t n);

  //! Finite group given by a multiplication table with identity 0.
  //! `generators` lists element indices; each gets a letter with the
  //! matching name, and its inverse is added as name^-1 unless it is an
  //! involution or already listed. Normal forms come from the breadth-first
  //! shortlex spanning tree; non-tree edges flow back through the identity.
  StackingStructure finite_group(std::string                                name,
                                 std::vector<std::vector<std::size_t>> const& table,
                                 std::vector<std::size_t> const&            generators,
                                 std::vector<std::string> const&            names);

  //! The symmetric group on three points, generated by a transposition s
  //! and a 3-cycle r.
  StackingStructure symmetric3();

  // Constructed instances with their psi-certificates.
  Construction z2_construction();             // Z x Z over a, b
  Construction free_product_zz_construction();  // Z * Z over a, b
  Construction f2xf2_construction();          // F(a, b) x F(c, d)
  Construction heisenberg_construction();     // Z^2 over a1, a2 extended by Z over t
  Construction index2z_construction();        // Z over h inside Z over g, g^2 = h

  ////////////////////////////////////////////////////////////////////////
  // Stallings' group
  ////////////////////////////////////////////////////////////////////////

  //! Letters a, a^-1, b, b^-1, c, c^-1, d, d^-1, s, s^-1.
  Alphabet stallings_alphabet();
  //! Irreducible words of the rewriting system, as an acceptor.
  Fsa stallings_nf_automaton();
  //! Normal form of w by the infinite complete rewriting system.
  //! Throws BudgetExceeded past `max_steps` rewrites.
  Word stallings_rewrite(Word const& w, std::size_t max_steps = 1'000'000);
  //! The five-case stacking map, evaluated directly.
  Word stallings_stack(Word const& y, Letter x);
  StackingStructure stallings_structure();
  PsiCertificate    psi_stallings();

  ////////////////////////////////////////////////////////////////////////
  // Catalog
  ////////////////////////////////////////////////////////////////////////

  std::vector<std::string> builtin_names();
  //! Structure by catalog name (also free<n> for any n >= 1). Throws
  //! ParseError for unknown names.
  StackingStructure builtin(std::string const& name);

}  // namespace autostack

#endif  // AUTOSTACK_INSTANCES_HPP_
