#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pbpo {

// Labels are indices into a lattice carrier.
using Label = std::uint32_t;

enum class LatticeKind { Unit, Flat, Chain, Powerset, Explicit };

class Lattice;
using LatticePtr = std::shared_ptr<const Lattice>;

class Lattice {
 public:
  static LatticePtr unit();
  static LatticePtr flat(const std::vector<std::string>& base);
  static LatticePtr chain(std::size_t n);
  static LatticePtr powerset(const std::vector<std::string>& universe);
  // covers: pairs (a, b) meaning a < b; the order is their reflexive-transitive closure.
  static LatticePtr explicit_order(const std::vector<std::string>& elements,
                                   const std::vector<std::pair<std::string, std::string>>& covers);

  LatticeKind kind() const { return kind_; }
  std::size_t size() const { return names_.size(); }
  Label bottom() const { return bottom_; }
  Label top() const { return top_; }

  bool leq(Label a, Label b) const { return leq_[a * size() + b] != 0; }
  Label meet(Label a, Label b) const { return meet_[a * size() + b]; }
  Label join(Label a, Label b) const { return join_[a * size() + b]; }
  Label meet(const std::vector<Label>& xs) const;
  Label join(const std::vector<Label>& xs) const;
  // Name-level variants; throw UnknownLabel.
  std::string meet(const std::vector<std::string>& xs) const;
  std::string join(const std::vector<std::string>& xs) const;

  const std::string& name(Label x) const;
  std::optional<Label> find(std::string_view name) const;
  // Accepts "_bot" and "_top" as aliases for the extremes.
  Label label(std::string_view name) const;
  bool contains(Label x) const { return x < size(); }

  bool is_heyting() const;

  // Constructor parameters, kept for serialization.
  const std::vector<std::string>& parameters() const { return params_; }
  const std::vector<std::pair<std::string, std::string>>& covers() const { return covers_; }
  std::vector<std::pair<Label, Label>> covering_pairs() const;

  bool same_as(const Lattice& other) const;

 private:
  Lattice() = default;
  static std::shared_ptr<Lattice> build(LatticeKind kind, std::vector<std::string> names,
                          std::vector<char> leq);

  LatticeKind kind_ = LatticeKind::Unit;
  std::vector<std::string> names_;
  std::vector<char> leq_;
  std::vector<Label> meet_;
  std::vector<Label> join_;
  Label bottom_ = 0;
  Label top_ = 0;
  std::vector<std::string> params_;
  std::vector<std::pair<std::string, std::string>> covers_;
};

bool same_lattice(const LatticePtr& a, const LatticePtr& b);

// Exhaustive law checks (idempotence, commutativity, associativity, absorption,
// bounds, singleton meet/join). Returns an empty string when all hold.
std::string check_lattice_laws(const Lattice& lat);

}  // namespace pbpo
