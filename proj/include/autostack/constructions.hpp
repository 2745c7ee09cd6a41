// Closure constructions: graph products, extensions and finite-index
// supergroups of structures with piecewise rules. Each returns the new
// structure together with a psi-certificate for its flow order.

#ifndef AUTOSTACK_CONSTRUCTIONS_HPP_
#define AUTOSTACK_CONSTRUCTIONS_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "autostack/stacking.hpp"

namespace autostack {

  //! Finite simplicial graph on vertices 0, ..., n - 1, ordered by index.
  class GraphSpec {
   public:
    GraphSpec() = default;
    //! Throws ParseError on loops, repeated edges or out-of-range vertices.
    GraphSpec(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges);

    static GraphSpec complete(std::size_t n);
    static GraphSpec discrete(std::size_t n);

    std::size_t size() const noexcept {
      return n_;
    }
    bool adjacent(std::size_t i, std::size_t j) const;
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

   private:
    std::size_t       n_ = 0;
    std::vector<bool> adj_;
  };

  struct Construction {
    StackingStructure structure;
    PsiCertificate    psi;
    //! Letter renamings applied to keep vertex alphabets disjoint, old -> new.
    std::vector<std::pair<std::string, std::string>> renamed;
  };

  //! Radius of the component balls used for descending chain lengths.
  inline constexpr std::size_t kDefaultChainRadius = 12;

  ////////////////////////////////////////////////////////////////////////
  // Graph products
  ////////////////////////////////////////////////////////////////////////

  //! Letter images under pi_i for the product alphabet: letters of vertex i
  //! are kept, letters of later adjacent vertices become ">", of earlier
  //! adjacent vertices are erased, of other vertices become "$". The image
  //! alphabet is the vertex alphabet followed by ">" and "$".
  struct ProductAlphabet {
    Alphabet                 alphabet;  // disjoint union, vertex order
    std::vector<std::size_t> vertex;    // vertex of each letter
    std::vector<std::size_t> offset;    // first letter of each vertex
    std::vector<std::pair<std::string, std::string>> renamed;
  };

  ProductAlphabet product_alphabet(std::vector<Alphabet> const& vertices);

  SymbolsPtr pi_symbols(Alphabet const& vertex_alphabet);
  Word       pi(std::size_t i, GraphSpec const& spec, ProductAlphabet const& pa, Word const& w);

  //! Acceptor over the product alphabet for the graph-product normal forms.
  Fsa product_normal_forms(GraphSpec const& spec, std::vector<StackingStructure> const& vertices);

  Construction graph_product(GraphSpec const&                      spec,
                             std::vector<StackingStructure> const& vertices,
                             std::size_t chain_radius = kDefaultChainRadius);

  ////////////////////////////////////////////////////////////////////////
  // Extensions 1 -> K -> G -> Q -> 1
  ////////////////////////////////////////////////////////////////////////

  struct ExtensionData {
    StackingStructure K;
    StackingStructure Q;
    //! Letter of Q -> name of its lift; lifts of inverses must be inverse.
    std::map<std::string, std::string> hat;
    //! (lift d, letter a of K) -> normal form in K of d a d^-1.
    std::map<std::pair<std::string, std::string>, Word> conj;
    //! (lift c, z in the image of phi_Q(., q(c))) -> normal form in K of
    //! c hat(z)^-1. Entries with hat(z) = c may be omitted (they are empty).
    std::map<std::pair<std::string, Word>, Word> corr;
  };

  //! The images of phi_Q(., b) over all normal forms, per letter b of Q.
  std::vector<std::vector<Word>> stack_images(StackingStructure const& s);

  Construction extension(ExtensionData const& data, std::size_t chain_radius = kDefaultChainRadius);

  ////////////////////////////////////////////////////////////////////////
  // Finite-index supergroups
  ////////////////////////////////////////////////////////////////////////

  //! u t with u a normal form of H and t a transversal name or "".
  struct CosetWord {
    Word        u;
    std::string t;

    bool operator==(CosetWord const&) const = default;
  };

  struct IndexData {
    StackingStructure H;
    //! Names of the non-identity coset representatives; the new letters are
    //! s and s^-1 for each.
    std::vector<std::string> transversal;
    //! x in B not in S -> y_x.
    std::map<std::string, CosetWord> table1;
    //! (x in B, y in A or B) -> y_{xy}.
    std::map<std::pair<std::string, std::string>, CosetWord> table2;
  };

  Construction finite_index(IndexData const& data, std::size_t chain_radius = kDefaultChainRadius);

}  // namespace autostack

#endif  // AUTOSTACK_CONSTRUCTIONS_HPP_
