#include "pbpo/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "pbpo/error.hpp"

namespace pbpo {

namespace {

constexpr std::string_view kBot = "_bot";
constexpr std::string_view kTop = "_top";

}  // namespace

std::shared_ptr<Lattice> Lattice::build(LatticeKind kind, std::vector<std::string> names, std::vector<char> leq) {
  const std::size_t n = names.size();
  auto lat = std::shared_ptr<Lattice>(new Lattice());
  lat->kind_ = kind;
  lat->names_ = std::move(names);
  lat->leq_ = std::move(leq);
  auto le = [&](std::size_t a, std::size_t b) { return lat->leq_[a * n + b] != 0; };

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && le(a, b) && le(b, a))
        fail(ErrorCode::NotALattice, "order is not antisymmetric at " + lat->names_[a] + ", " +
                                         lat->names_[b]);
    }
  }

  lat->meet_.assign(n * n, 0);
  lat->join_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::optional<std::size_t> glb, lub;
      for (std::size_t c = 0; c < n; ++c) {
        if (le(c, a) && le(c, b) && (!glb || le(*glb, c))) glb = c;
        if (le(a, c) && le(b, c) && (!lub || le(c, *lub))) lub = c;
      }
      // The candidate found by the scan must dominate every lower bound.
      for (std::size_t c = 0; c < n && glb; ++c)
        if (le(c, a) && le(c, b) && !le(c, *glb)) glb.reset();
      for (std::size_t c = 0; c < n && lub; ++c)
        if (le(a, c) && le(b, c) && !le(*lub, c)) lub.reset();
      if (!glb || !lub)
        fail(ErrorCode::NotALattice,
             "no meet or join for " + lat->names_[a] + ", " + lat->names_[b]);
      lat->meet_[a * n + b] = static_cast<Label>(*glb);
      lat->join_[a * n + b] = static_cast<Label>(*lub);
    }
  }

  std::optional<std::size_t> bot, top;
  for (std::size_t c = 0; c < n; ++c) {
    bool is_bot = true, is_top = true;
    for (std::size_t d = 0; d < n; ++d) {
      is_bot = is_bot && le(c, d);
      is_top = is_top && le(d, c);
    }
    if (is_bot) bot = c;
    if (is_top) top = c;
  }
  if (n == 0 || !bot || !top) fail(ErrorCode::NotALattice, "lattice needs a bottom and a top");
  lat->bottom_ = static_cast<Label>(*bot);
  lat->top_ = static_cast<Label>(*top);
  return lat;
}

LatticePtr Lattice::unit() {
  static const LatticePtr instance = build(LatticeKind::Unit, {"_unit"}, {1});
  return instance;
}

LatticePtr Lattice::flat(const std::vector<std::string>& base) {
  std::vector<std::string> names;
  names.emplace_back(kBot);
  std::unordered_set<std::string> seen;
  for (const auto& b : base) {
    if (b == kBot || b == kTop)
      fail(ErrorCode::ReservedLabelCollision, "flat lattice base label '" + b + "' is reserved");
    if (!seen.insert(b).second)
      fail(ErrorCode::NotALattice, "duplicate flat lattice base label '" + b + "'");
    names.push_back(b);
  }
  names.emplace_back(kTop);
  const std::size_t n = names.size();
  std::vector<char> leq(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    leq[a * n + a] = 1;
    leq[0 * n + a] = 1;
    leq[a * n + (n - 1)] = 1;
  }
  auto lat = build(LatticeKind::Flat, std::move(names), std::move(leq));
  lat->params_ = base;
  return lat;
}

LatticePtr Lattice::chain(std::size_t n) {
  if (n == 0) fail(ErrorCode::InvalidSize, "chain lattice needs at least one element");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  std::vector<char> leq(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) leq[a * n + b] = 1;
  auto lat = build(LatticeKind::Chain, std::move(names), std::move(leq));
  lat->params_ = {std::to_string(n)};
  return lat;
}

LatticePtr Lattice::powerset(const std::vector<std::string>& universe) {
  if (universe.size() > 8) fail(ErrorCode::InvalidSize, "powerset universe larger than 8");
  std::unordered_set<std::string> seen(universe.begin(), universe.end());
  if (seen.size() != universe.size())
    fail(ErrorCode::NotALattice, "duplicate powerset universe element");
  const std::size_t n = std::size_t{1} << universe.size();
  std::vector<std::string> names;
  for (std::size_t mask = 0; mask < n; ++mask) {
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if (!(mask >> i & 1)) continue;
      if (!first) s += ",";
      s += universe[i];
      first = false;
    }
    names.push_back(s + "}");
  }
  std::vector<char> leq(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) leq[a * n + b] = (a & b) == a;
  auto lat = build(LatticeKind::Powerset, std::move(names), std::move(leq));
  lat->params_ = universe;
  return lat;
}

LatticePtr Lattice::explicit_order(const std::vector<std::string>& elements,
                                   const std::vector<std::pair<std::string, std::string>>& covers) {
  const std::size_t n = elements.size();
  if (n == 0) fail(ErrorCode::InvalidSize, "explicit lattice needs at least one element");
  auto index = [&](const std::string& s) -> std::size_t {
    auto it = std::find(elements.begin(), elements.end(), s);
    if (it == elements.end()) fail(ErrorCode::UnknownLabel, "unknown element '" + s + "' in covers");
    return static_cast<std::size_t>(it - elements.begin());
  };
  std::unordered_set<std::string> seen(elements.begin(), elements.end());
  if (seen.size() != n) fail(ErrorCode::NotALattice, "duplicate explicit lattice element");
  std::vector<char> leq(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) leq[a * n + a] = 1;
  for (const auto& [a, b] : covers) leq[index(a) * n + index(b)] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq[k * n + j]) leq[i * n + j] = 1;
  auto lat = build(LatticeKind::Explicit, elements, std::move(leq));
  lat->covers_ = covers;
  return lat;
}

Label Lattice::meet(const std::vector<Label>& xs) const {
  Label acc = top_;
  for (Label x : xs) {
    if (!contains(x)) fail(ErrorCode::UnknownLabel, "label index out of range");
    acc = meet(acc, x);
  }
  return acc;
}

Label Lattice::join(const std::vector<Label>& xs) const {
  Label acc = bottom_;
  for (Label x : xs) {
    if (!contains(x)) fail(ErrorCode::UnknownLabel, "label index out of range");
    acc = join(acc, x);
  }
  return acc;
}

std::string Lattice::meet(const std::vector<std::string>& xs) const {
  std::vector<Label> ls;
  for (const auto& x : xs) ls.push_back(label(x));
  return name(meet(ls));
}

std::string Lattice::join(const std::vector<std::string>& xs) const {
  std::vector<Label> ls;
  for (const auto& x : xs) ls.push_back(label(x));
  return name(join(ls));
}

const std::string& Lattice::name(Label x) const {
  if (!contains(x)) fail(ErrorCode::UnknownLabel, "label index out of range");
  return names_[x];
}

std::optional<Label> Lattice::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Label>(i);
  if (name == kBot) return bottom_;
  if (name == kTop) return top_;
  return std::nullopt;
}

Label Lattice::label(std::string_view name) const {
  auto x = find(name);
  if (!x) fail(ErrorCode::UnknownLabel, "unknown label '" + std::string(name) + "'");
  return *x;
}

bool Lattice::is_heyting() const {
  const std::size_t n = size();
  if (n <= 16) {
    // x ∧ ⋁S = ⋁{x ∧ y : y ∈ S} over every subset S.
    const std::size_t subsets = std::size_t{1} << n;
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      Label sup = bottom_;
      for (std::size_t y = 0; y < n; ++y)
        if (mask >> y & 1) sup = join(sup, static_cast<Label>(y));
      for (std::size_t x = 0; x < n; ++x) {
        Label lhs = meet(static_cast<Label>(x), sup);
        Label rhs = bottom_;
        for (std::size_t y = 0; y < n; ++y)
          if (mask >> y & 1) rhs = join(rhs, meet(static_cast<Label>(x), static_cast<Label>(y)));
        if (lhs != rhs) return false;
      }
    }
    return true;
  }
  // On a finite carrier the subset law reduces to binary distributivity by induction on |S|.
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        auto X = static_cast<Label>(x), Y = static_cast<Label>(y), Z = static_cast<Label>(z);
        if (meet(X, join(Y, Z)) != join(meet(X, Y), meet(X, Z))) return false;
      }
  return true;
}

std::vector<std::pair<Label, Label>> Lattice::covering_pairs() const {
  std::vector<std::pair<Label, Label>> out;
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !leq(static_cast<Label>(a), static_cast<Label>(b))) continue;
      bool direct = true;
      for (std::size_t c = 0; c < n && direct; ++c)
        if (c != a && c != b && leq(static_cast<Label>(a), static_cast<Label>(c)) &&
            leq(static_cast<Label>(c), static_cast<Label>(b)))
          direct = false;
      if (direct) out.emplace_back(static_cast<Label>(a), static_cast<Label>(b));
    }
  return out;
}

bool Lattice::same_as(const Lattice& other) const {
  return this == &other || (names_ == other.names_ && leq_ == other.leq_);
}

bool same_lattice(const LatticePtr& a, const LatticePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

std::string check_lattice_laws(const Lattice& lat) {
  const std::size_t n = lat.size();
  std::ostringstream err;
  for (Label a = 0; a < n; ++a) {
    if (lat.meet(a, a) != a || lat.join(a, a) != a) err << "idempotence fails at " << lat.name(a) << "\n";
    if (!lat.leq(lat.bottom(), a) || !lat.leq(a, lat.top())) err << "bounds fail at " << lat.name(a) << "\n";
    if (lat.meet(std::vector<Label>{a}) != a || lat.join(std::vector<Label>{a}) != a)
      err << "singleton meet/join fails at " << lat.name(a) << "\n";
    for (Label b = 0; b < n; ++b) {
      if (lat.meet(a, b) != lat.meet(b, a) || lat.join(a, b) != lat.join(b, a))
        err << "commutativity fails\n";
      if (lat.meet(a, lat.join(a, b)) != a || lat.join(a, lat.meet(a, b)) != a)
        err << "absorption fails\n";
      if (lat.leq(a, b) != (lat.meet(a, b) == a)) err << "order/meet mismatch\n";
      for (Label c = 0; c < n; ++c) {
        if (lat.meet(a, lat.meet(b, c)) != lat.meet(lat.meet(a, b), c) ||
            lat.join(a, lat.join(b, c)) != lat.join(lat.join(a, b), c))
          err << "associativity fails\n";
      }
    }
  }
  return err.str();
}

}  // namespace pbpo
