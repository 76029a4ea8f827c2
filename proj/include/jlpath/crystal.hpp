#pragma once

#include "jlpath/cartan_datum.hpp"
#include "jlpath/gls.hpp"
#include "jlpath/lift_embed.hpp"
#include "jlpath/paths.hpp"
#include "jlpath/weight.hpp"
#include "jlpath/weyl_monoid.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace jlpath {

struct CrystalNode {
  RationalPath path;
  Weight weight;
  long depth = 0;       // number of f-applications from the root
  OperatorWord fword;   // a word reaching the node from the root
};

struct CrystalEdge {
  std::size_t source = 0;
  int label = 0;
  std::size_t target = 0;

  auto operator<=>(const CrystalEdge&) const = default;
};

// A rooted, labeled digraph of paths truncated at a depth.  Node 0 is the
// root; nodes are ordered by (depth, canonical encoding) and edges by
// (source, label).
struct CrystalGraph {
  const CartanDatum* datum = nullptr;
  std::vector<Weight> shapes;
  std::vector<CrystalNode> nodes;
  std::vector<CrystalEdge> edges;
  std::optional<long> depth;  // nullopt: generated to exhaustion
  bool string_closed = false;

  std::optional<std::size_t> find(const RationalPath& path) const;
  std::optional<std::size_t> successor(std::size_t node, int label) const;
  std::size_t size() const { return nodes.size(); }

  // Rebuilds the lookup tables after nodes/edges were edited.
  void reindex();

 private:
  std::map<std::string, std::size_t> index_;
  std::map<std::pair<std::size_t, int>, std::size_t> successor_;
};

using Character = std::map<Weight, long>;

Character character(const CrystalGraph& g);

struct IsoOptions {
  // label_map[l] is the label in g2 matching label l of g1; empty = identity.
  std::vector<int> label_map;
  // Compare weights relative to the roots (offset differences on the mapped
  // coordinates) instead of absolutely.
  bool relative_weights = false;
};

// Rooted isomorphism of two crystal graphs by synchronized traversal.
// Throws RootMismatch when absolute root weights differ and
// TruncationIncomparable when the truncation depths differ.
bool iso_check(const CrystalGraph& g1, const CrystalGraph& g2, const IsoOptions& options = {});

struct RaiseResult {
  OperatorWord eword;  // e_{j_r} ... e_{j_1}, letters[0] applied last
  RationalPath terminal;
};

struct Summand {
  RationalPath path;   // the indexing path
  OperatorWord fword;
  Weight shape;        // highest weight of the summand
  long horizon = 0;    // truncation depth left for the summand
};

struct DecompositionCheck {
  std::size_t ambient_nodes = 0;
  std::size_t highest_elements = 0;
  bool highest_match = false;  // highest elements = emitted summand roots
  bool partition = false;      // components are disjoint and cover
  bool isomorphic = false;     // each component = the summand crystal
  bool character = false;      // character additivity
  std::vector<std::string> problems;

  bool ok() const { return highest_match && partition && isomorphic && character; }
};

struct ChainReport {
  bool condition[4] = {false, false, false, false};
  std::vector<std::string> notes;

  bool ok() const { return condition[0] && condition[1] && condition[2] && condition[3]; }
};

struct CrystalOptions {
  std::size_t node_cap = 500000;
  unsigned threads = 1;
  GlsOptions gls;
};

// Crystal computations over one datum.  Membership of a path in B(lambda) is
// decided by generation: B(lambda) = F pi_lambda and every f lowers the height
// by one, so the elements of height h are exactly the depth-h nodes.
// Thread-safe.
class CrystalEngine {
 public:
  explicit CrystalEngine(const CartanDatum& datum, CrystalOptions options = {});

  const CartanDatum& datum() const { return *datum_; }
  const CrystalOptions& options() const { return options_; }
  const GlsContext& gls() const { return *gls_; }

  CrystalGraph generate(const Weight& shape, std::optional<long> depth) const;
  CrystalGraph generate_concat(const std::vector<Weight>& shapes, std::optional<long> depth) const;

  // Completes the i-strings through every node for the given real indices.
  void close_strings(CrystalGraph& g, const std::vector<int>& indices) const;

  // f_i and e_i on B(lambda_1) x ... x B(lambda_n), with the imaginary cutoff.
  std::optional<RationalPath> f(const RationalPath& path, int i) const;
  std::optional<RationalPath> e(const std::vector<Weight>& shapes, const RationalPath& path, int i) const;

  bool in_crystal(const Weight& shape, const RationalPath& path) const;
  bool in_tensor(const std::vector<Weight>& shapes, const RationalPath& path) const;

  bool is_highest(const std::vector<Weight>& shapes, const RationalPath& path) const;
  RaiseResult raise_to_highest(const std::vector<Weight>& shapes, const RationalPath& path) const;
  bool is_standard(const std::vector<Weight>& shapes, const RationalPath& path) const;

  // Defining chains, indexed lexicographically by (m, l).
  ChainReport verify_defining_chain(const std::vector<Weight>& shapes, const RationalPath& path,
                                    const std::vector<MonoidWord>& chain) const;
  ChainReport verify_connecting_condition(const std::vector<Weight>& shapes, const RationalPath& path,
                                          const std::vector<MonoidWord>& chain) const;
  std::optional<std::vector<MonoidWord>> search_defining_chain(const std::vector<Weight>& shapes,
                                                               const RationalPath& path,
                                                               std::size_t max_length) const;

  std::vector<Summand> tensor_decompose(const Weight& lambda, const Weight& mu, long depth) const;
  DecompositionCheck verify_tensor_decomposition(const Weight& lambda, const Weight& mu, long depth,
                                                 const std::vector<Summand>& summands) const;
  // The truncated ambient B(lambda) x B(mu): pairs of total height <= depth.
  CrystalGraph tensor_graph(const Weight& lambda, const Weight& mu, long depth) const;

  std::vector<Summand> branch(const Weight& lambda, const std::vector<int>& subset, long depth) const;
  DecompositionCheck verify_branch(const Weight& lambda, const std::vector<int>& subset, long depth,
                                   const std::vector<Summand>& summands) const;

  // Splits a concatenation into its factors.
  std::vector<GLSPath> factors(const std::vector<Weight>& shapes, const RationalPath& path) const;

 private:
  CrystalGraph expand(std::vector<Weight> shapes, RationalPath root, std::optional<long> depth) const;
  std::shared_ptr<const CrystalGraph> catalog(const Weight& shape, long depth) const;

  const CartanDatum* datum_;
  CrystalOptions options_;
  std::unique_ptr<GlsContext> gls_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::shared_ptr<const CrystalGraph>> catalog_;
};

// Height of a path's endpoint below the sum of the shapes.
long path_height(const std::vector<Weight>& shapes, const RationalPath& path);

RationalPath highest_path(const std::vector<Weight>& shapes);

// The sub-crystal reachable from `root` along edges with labels in `labels`.
CrystalGraph restrict_component(const CrystalGraph& g, std::size_t root, const std::vector<int>& labels,
                                std::optional<long> depth);

}  // namespace jlpath
