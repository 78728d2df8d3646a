#include "lextag/avm.h"

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "lextag/errors.h"

namespace lextag {

namespace {

const FeatureStructure& empty_structure() {
  static const FeatureStructure kEmpty;
  return kEmpty;
}

std::string describe(const FeatureValue& v) {
  if (v.is_structure()) return "[...]";
  return v.text();
}

}  // namespace

// ---------------------------------------------------------------------------
// FeatureValue / FeatureStructure

FeatureValue::FeatureValue() : kind_(Kind::kStructure) {}

FeatureValue::FeatureValue(FeatureStructure fs)
    : kind_(Kind::kStructure),
      fs_(fs.empty() ? nullptr
                     : std::make_shared<const FeatureStructure>(std::move(fs))) {}

FeatureValue FeatureValue::atom(std::string symbol) {
  FeatureValue v;
  v.kind_ = Kind::kAtom;
  v.text_ = std::move(symbol);
  return v;
}

FeatureValue FeatureValue::variable(std::string name) {
  FeatureValue v;
  v.kind_ = Kind::kVariable;
  v.text_ = std::move(name);
  return v;
}

FeatureValue FeatureValue::parse(std::string_view text) {
  if (text.size() > 1 && text.front() == '?') {
    return variable(std::string(text));
  }
  return atom(std::string(text));
}

const FeatureStructure& FeatureValue::structure() const {
  if (kind_ != Kind::kStructure) {
    throw std::logic_error("feature value '" + text_ + "' is not a structure");
  }
  return fs_ ? *fs_ : empty_structure();
}

bool operator==(const FeatureValue& a, const FeatureValue& b) {
  if (a.kind_ != b.kind_) return false;
  if (!a.is_structure()) return a.text_ == b.text_;
  if (a.fs_ == b.fs_) return true;
  return a.structure() == b.structure();
}

FeatureStructure::FeatureStructure(
    std::initializer_list<std::pair<const std::string, FeatureValue>> init) {
  for (const auto& [name, value] : init) set(name, value);
}

const FeatureValue* FeatureStructure::find(const std::string& name) const {
  auto it = features_.find(name);
  return it == features_.end() ? nullptr : &it->second;
}

void FeatureStructure::set(const std::string& name, FeatureValue value) {
  if (name.empty()) {
    throw std::invalid_argument("feature name must be nonempty");
  }
  features_.insert_or_assign(name, std::move(value));
}

int FeatureStructure::depth() const {
  int deepest = 0;
  for (const auto& [name, value] : features_) {
    if (value.is_structure()) deepest = std::max(deepest, value.structure().depth());
  }
  return 1 + deepest;
}

const FeatureValue* Bindings::find(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second;
}

void Bindings::bind(const std::string& var, FeatureValue value) {
  map_.insert_or_assign(var, std::move(value));
}

std::string Clash::path_string() const {
  std::string out;
  for (const auto& p : path) {
    if (!out.empty()) out += '.';
    out += p;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Unification

namespace {

// End of a variable chain. `holder` is the last variable on the chain that
// has a binding (empty when the input was not a bound variable).
struct Deref {
  std::string holder;
  FeatureValue value;
};

Deref deref(const FeatureValue& v, const Bindings& env) {
  Deref d{{}, v};
  while (d.value.is_variable()) {
    const FeatureValue* next = env.find(d.value.text());
    if (next == nullptr) break;
    d.holder = d.value.text();
    d.value = *next;
  }
  return d;
}

bool occurs(const std::string& var, const FeatureValue& v, const Bindings& env) {
  if (v.is_atom()) return false;
  if (v.is_variable()) {
    if (v.text() == var) return true;
    const FeatureValue* bound = env.find(v.text());
    return bound != nullptr && occurs(var, *bound, env);
  }
  for (const auto& [name, sub] : v.structure()) {
    if (occurs(var, sub, env)) return true;
  }
  return false;
}

class Unifier {
 public:
  Unifier(Bindings env, int max_depth)
      : env_(std::move(env)), max_depth_(max_depth) {}

  std::optional<FeatureValue> run(const FeatureValue& a, const FeatureValue& b) {
    return value(a, b, 1);
  }

  Bindings& env() { return env_; }
  Clash& clash() { return clash_; }

 private:
  std::optional<FeatureValue> fail(ClashKind kind, std::string left,
                                   std::string right) {
    clash_.path = path_;
    clash_.left = std::move(left);
    clash_.right = std::move(right);
    clash_.kind = kind;
    return std::nullopt;
  }

  // Binds the unbound variable `var` to the other side.
  std::optional<FeatureValue> bind(const std::string& var, const Deref& other) {
    FeatureValue target = other.holder.empty()
                              ? other.value
                              : FeatureValue::variable(other.holder);
    if (occurs(var, other.value, env_)) {
      return fail(ClashKind::kCycle, var, describe(other.value));
    }
    env_.bind(var, std::move(target));
    return FeatureValue::variable(var);
  }

  std::optional<FeatureValue> value(const FeatureValue& a, const FeatureValue& b,
                                    int depth) {
    Deref da = deref(a, env_);
    Deref db = deref(b, env_);

    if (!da.holder.empty() && da.holder == db.holder) {
      return FeatureValue::variable(da.holder);
    }
    if (da.value.is_variable() && db.value.is_variable()) {
      if (da.value.text() == db.value.text()) return da.value;
      env_.bind(da.value.text(), db.value);
      return db.value;
    }
    if (da.value.is_variable()) return bind(da.value.text(), db);
    if (db.value.is_variable()) return bind(db.value.text(), da);

    if (da.value.is_atom() || db.value.is_atom()) {
      if (da.value.is_atom() && db.value.is_atom()) {
        if (da.value.text() == db.value.text()) return da.value;
        return fail(ClashKind::kAtomMismatch, da.value.text(), db.value.text());
      }
      return fail(ClashKind::kTypeMismatch, describe(da.value),
                  describe(db.value));
    }

    if (depth > max_depth_) {
      throw DepthLimitError("feature structure deeper than " +
                            std::to_string(max_depth_) + " levels");
    }
    std::optional<FeatureStructure> merged =
        structures(da.value.structure(), db.value.structure(), depth);
    if (!merged) return std::nullopt;

    // Refine shared values in place so every co-indexed position sees the
    // merge.
    FeatureValue result(std::move(*merged));
    if (!da.holder.empty()) {
      if (occurs(da.holder, result, env_)) {
        return fail(ClashKind::kCycle, da.holder, "[...]");
      }
      env_.bind(da.holder, result);
      if (!db.holder.empty()) {
        env_.bind(db.holder, FeatureValue::variable(da.holder));
      }
      return FeatureValue::variable(da.holder);
    }
    if (!db.holder.empty()) {
      if (occurs(db.holder, result, env_)) {
        return fail(ClashKind::kCycle, db.holder, "[...]");
      }
      env_.bind(db.holder, result);
      return FeatureValue::variable(db.holder);
    }
    return result;
  }

  std::optional<FeatureStructure> structures(const FeatureStructure& a,
                                             const FeatureStructure& b,
                                             int depth) {
    FeatureStructure out;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
      if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
        out.set(ia->first, ia->second);
        ++ia;
      } else if (ia == a.end() || ib->first < ia->first) {
        out.set(ib->first, ib->second);
        ++ib;
      } else {
        path_.push_back(ia->first);
        std::optional<FeatureValue> v = value(ia->second, ib->second, depth + 1);
        path_.pop_back();
        if (!v) return std::nullopt;
        out.set(ia->first, std::move(*v));
        ++ia;
        ++ib;
      }
    }
    return out;
  }

  Bindings env_;
  int max_depth_;
  std::vector<std::string> path_;
  Clash clash_;
};

}  // namespace

Unification unify_values(const FeatureValue& a, const FeatureValue& b,
                         Bindings env, int max_depth) {
  Unifier u(std::move(env), max_depth);
  std::optional<FeatureValue> v = u.run(a, b);
  if (!v) return Unification(std::move(u.clash()));
  return Unification(std::move(*v), std::move(u.env()));
}

Unification unify(const FeatureStructure& a, const FeatureStructure& b,
                  Bindings env, int max_depth) {
  if (a.depth() > max_depth || b.depth() > max_depth) {
    throw DepthLimitError("feature structure deeper than " +
                          std::to_string(max_depth) + " levels");
  }
  return unify_values(FeatureValue(a), FeatureValue(b), std::move(env),
                      max_depth);
}

std::optional<Clash> merge_bindings(Bindings& env, const Bindings& other,
                                    int max_depth) {
  for (const auto& [var, value] : other) {
    Unification u = unify_values(FeatureValue::variable(var), value,
                                 std::move(env), max_depth);
    if (!u) return u.clash();
    env = u.take_env();
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Subsumption, resolution and friends

bool is_ground(const FeatureValue& value) {
  if (value.is_variable()) return false;
  if (value.is_atom()) return true;
  return is_ground(value.structure());
}

bool is_ground(const FeatureStructure& fs) {
  for (const auto& [name, value] : fs) {
    if (!is_ground(value)) return false;
  }
  return true;
}

namespace {

bool subsumes_ground(const FeatureStructure& a, const FeatureStructure& b) {
  for (const auto& [name, av] : a) {
    const FeatureValue* bv = b.find(name);
    if (bv == nullptr) return false;
    if (av.is_atom()) {
      if (!bv->is_atom() || bv->text() != av.text()) return false;
    } else {
      if (!bv->is_structure()) return false;
      if (!subsumes_ground(av.structure(), bv->structure())) return false;
    }
  }
  return true;
}

}  // namespace

bool subsumes(const FeatureStructure& a, const FeatureStructure& b) {
  if (!is_ground(a) || !is_ground(b)) {
    throw NonGroundError("subsumes() requires variable-free structures");
  }
  return subsumes_ground(a, b);
}

FeatureValue resolve(const FeatureValue& value, const Bindings& env) {
  if (value.is_atom()) return value;
  if (value.is_variable()) {
    const FeatureValue* bound = env.find(value.text());
    return bound == nullptr ? value : resolve(*bound, env);
  }
  return resolve(value.structure(), env);
}

FeatureStructure resolve(const FeatureStructure& fs, const Bindings& env) {
  FeatureStructure out;
  for (const auto& [name, value] : fs) out.set(name, resolve(value, env));
  return out;
}

void collect_variables(const FeatureValue& value, std::set<std::string>& out) {
  if (value.is_variable()) {
    out.insert(value.text());
  } else if (value.is_structure()) {
    for (const auto& [name, sub] : value.structure()) collect_variables(sub, out);
  }
}

FeatureValue rename_variables(const FeatureValue& value,
                              const std::string& suffix) {
  if (value.is_variable()) return FeatureValue::variable(value.text() + suffix);
  if (value.is_atom()) return value;
  return rename_variables(value.structure(), suffix);
}

FeatureStructure rename_variables(const FeatureStructure& fs,
                                  const std::string& suffix) {
  FeatureStructure out;
  for (const auto& [name, value] : fs) {
    out.set(name, rename_variables(value, suffix));
  }
  return out;
}

namespace {

bool alpha_walk(const FeatureValue& a, const FeatureValue& b,
                std::map<std::string, std::string>& fwd,
                std::map<std::string, std::string>& back) {
  if (a.is_variable() != b.is_variable() || a.is_atom() != b.is_atom()) {
    return false;
  }
  if (a.is_atom()) return a.text() == b.text();
  if (a.is_variable()) {
    auto [fi, fnew] = fwd.emplace(a.text(), b.text());
    auto [bi, bnew] = back.emplace(b.text(), a.text());
    return fi->second == b.text() && bi->second == a.text();
  }
  const FeatureStructure& sa = a.structure();
  const FeatureStructure& sb = b.structure();
  if (sa.size() != sb.size()) return false;
  for (auto ia = sa.begin(), ib = sb.begin(); ia != sa.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (!alpha_walk(ia->second, ib->second, fwd, back)) return false;
  }
  return true;
}

}  // namespace

bool alpha_equivalent(const FeatureValue& a, const FeatureValue& b) {
  std::map<std::string, std::string> fwd, back;
  return alpha_walk(a, b, fwd, back);
}

int count_paths(const FeatureStructure& fs) {
  int n = 0;
  for (const auto& [name, value] : fs) {
    n += value.is_structure() ? count_paths(value.structure()) : 1;
  }
  return n;
}

std::string to_string(const FeatureValue& value) {
  if (value.is_structure()) return to_string(value.structure());
  return value.text();
}

std::string to_string(const FeatureStructure& fs) {
  std::string out = "[";
  bool first = true;
  for (const auto& [name, value] : fs) {
    if (!first) out += ", ";
    first = false;
    out += name;
    out += '=';
    out += to_string(value);
  }
  out += ']';
  return out;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const FeatureValue& value) {
  if (value.is_structure()) return to_json(value.structure());
  return value.text();
}

nlohmann::json to_json(const FeatureStructure& fs) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, value] : fs) j[name] = to_json(value);
  return j;
}

namespace {

FeatureValue value_at_depth(const nlohmann::json& j, int depth, int max_depth);

FeatureStructure structure_at_depth(const nlohmann::json& j, int depth,
                                    int max_depth) {
  if (!j.is_object()) {
    throw LoadError("feature structure must be a JSON object, got " + j.dump());
  }
  if (depth > max_depth) {
    throw DepthLimitError("feature structure deeper than " +
                          std::to_string(max_depth) + " levels");
  }
  FeatureStructure fs;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key().empty()) throw LoadError("empty feature name");
    fs.set(it.key(), value_at_depth(it.value(), depth + 1, max_depth));
  }
  return fs;
}

FeatureValue value_at_depth(const nlohmann::json& j, int depth, int max_depth) {
  if (j.is_object()) return structure_at_depth(j, depth, max_depth);
  if (!j.is_string()) {
    throw LoadError("feature value must be a string or object, got " + j.dump());
  }
  const std::string& s = j.get_ref<const std::string&>();
  if (s.empty() || s == "?") throw LoadError("empty atom or variable name");
  return FeatureValue::parse(s);
}

}  // namespace

FeatureStructure structure_from_json(const nlohmann::json& j, int max_depth) {
  return structure_at_depth(j, 1, max_depth);
}

FeatureValue value_from_json(const nlohmann::json& j, int max_depth) {
  return value_at_depth(j, 1, max_depth);
}

}  // namespace lextag
