#ifndef LEXTAG_AVM_H_
#define LEXTAG_AVM_H_

// Attribute-value matrices: atoms, variables and nested feature structures,
// with unification, subsumption and variable resolution.
//
// Unification is open-world: a feature absent on one side unifies with
// anything. Variables live in a Bindings map that is threaded by value, so a
// failed attempt never leaks bindings into a sibling attempt.

#include <compare>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace lextag {

inline constexpr int kDefaultMaxDepth = 8;

class FeatureStructure;

// One of: an atom (opaque case-sensitive symbol), a variable (name starting
// with '?'), or a nested feature structure.
class FeatureValue {
 public:
  // The empty feature structure.
  FeatureValue();
  FeatureValue(FeatureStructure fs);  // NOLINT(google-explicit-constructor)

  static FeatureValue atom(std::string symbol);
  static FeatureValue variable(std::string name);
  // "?x" becomes a variable, anything else an atom.
  static FeatureValue parse(std::string_view text);

  bool is_atom() const { return kind_ == Kind::kAtom; }
  bool is_variable() const { return kind_ == Kind::kVariable; }
  bool is_structure() const { return kind_ == Kind::kStructure; }

  // Atom symbol or variable name.
  const std::string& text() const { return text_; }
  const FeatureStructure& structure() const;

  friend bool operator==(const FeatureValue& a, const FeatureValue& b);

 private:
  enum class Kind { kAtom, kVariable, kStructure };

  Kind kind_;
  std::string text_;
  std::shared_ptr<const FeatureStructure> fs_;
};

class FeatureStructure {
 public:
  using Map = std::map<std::string, FeatureValue>;
  using const_iterator = Map::const_iterator;

  FeatureStructure() = default;
  FeatureStructure(
      std::initializer_list<std::pair<const std::string, FeatureValue>> init);

  bool empty() const { return features_.empty(); }
  std::size_t size() const { return features_.size(); }
  const_iterator begin() const { return features_.begin(); }
  const_iterator end() const { return features_.end(); }

  const FeatureValue* find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }

  // Throws std::invalid_argument for an empty feature name.
  void set(const std::string& name, FeatureValue value);

  // Nesting depth; a flat structure (including the empty one) has depth 1.
  int depth() const;

  friend bool operator==(const FeatureStructure& a, const FeatureStructure& b) {
    return a.features_ == b.features_;
  }

 private:
  Map features_;
};

// Variable name -> value. Kept acyclic by the occurs check in unify().
class Bindings {
 public:
  using Map = std::map<std::string, FeatureValue>;

  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  Map::const_iterator begin() const { return map_.begin(); }
  Map::const_iterator end() const { return map_.end(); }

  const FeatureValue* find(const std::string& var) const;
  void bind(const std::string& var, FeatureValue value);

  friend bool operator==(const Bindings& a, const Bindings& b) {
    return a.map_ == b.map_;
  }

 private:
  Map map_;
};

enum class ClashKind {
  kAtomMismatch,  // two different atoms
  kTypeMismatch,  // atom against structure
  kCycle,         // binding would make a variable contain itself
};

// Where and why a unification failed. `left` and `right` render the two
// conflicting values (atoms verbatim, structures as "[...]").
struct Clash {
  std::vector<std::string> path;
  std::string left;
  std::string right;
  ClashKind kind = ClashKind::kAtomMismatch;

  // Dotted path, e.g. "agr.num"; "" for the root.
  std::string path_string() const;
  friend bool operator==(const Clash&, const Clash&) = default;
};

// Result of a unification: either the merged value with the extended
// bindings, or the first clash in lexicographic path order.
class Unification {
 public:
  Unification(FeatureValue value, Bindings env)
      : ok_(true), value_(std::move(value)), env_(std::move(env)) {}
  explicit Unification(Clash clash) : ok_(false), clash_(std::move(clash)) {}

  bool ok() const { return ok_; }
  explicit operator bool() const { return ok_; }

  const FeatureValue& value() const { return value_; }
  // Only meaningful when both inputs were structures.
  const FeatureStructure& structure() const { return value_.structure(); }
  const Bindings& env() const { return env_; }
  Bindings&& take_env() { return std::move(env_); }
  const Clash& clash() const { return clash_; }

 private:
  bool ok_;
  FeatureValue value_;
  Bindings env_;
  Clash clash_;
};

Unification unify(const FeatureStructure& a, const FeatureStructure& b,
                  Bindings env = {}, int max_depth = kDefaultMaxDepth);
Unification unify_values(const FeatureValue& a, const FeatureValue& b,
                         Bindings env = {}, int max_depth = kDefaultMaxDepth);

// Folds `other` into `env` by unifying every binding of `other`. Returns the
// clash if the two environments disagree.
std::optional<Clash> merge_bindings(Bindings& env, const Bindings& other,
                                    int max_depth = kDefaultMaxDepth);

// True iff every path/atom of `a` occurs identically in `b`. Both arguments
// must be ground; throws NonGroundError otherwise.
bool subsumes(const FeatureStructure& a, const FeatureStructure& b);

// Replaces every bound variable by its value; unbound variables remain.
FeatureStructure resolve(const FeatureStructure& fs, const Bindings& env);
FeatureValue resolve(const FeatureValue& value, const Bindings& env);

bool is_ground(const FeatureStructure& fs);
bool is_ground(const FeatureValue& value);

void collect_variables(const FeatureValue& value, std::set<std::string>& out);

// Appends `suffix` to every variable name.
FeatureValue rename_variables(const FeatureValue& value,
                              const std::string& suffix);
FeatureStructure rename_variables(const FeatureStructure& fs,
                                  const std::string& suffix);

// Structural equality up to a consistent bijective renaming of variables.
bool alpha_equivalent(const FeatureValue& a, const FeatureValue& b);

// Number of atomic leaf paths (variables count as leaves).
int count_paths(const FeatureStructure& fs);

// Compact single-line rendering: [brittle=+, form=bulky].
std::string to_string(const FeatureStructure& fs);
std::string to_string(const FeatureValue& value);

// JSON encoding: objects for structures, strings for atoms, strings with a
// leading '?' for variables. Loading throws LoadError on malformed input and
// DepthLimitError past `max_depth`.
nlohmann::json to_json(const FeatureStructure& fs);
nlohmann::json to_json(const FeatureValue& value);
FeatureStructure structure_from_json(const nlohmann::json& j,
                                     int max_depth = kDefaultMaxDepth);
FeatureValue value_from_json(const nlohmann::json& j,
                             int max_depth = kDefaultMaxDepth);

}  // namespace lextag

#endif  // LEXTAG_AVM_H_
