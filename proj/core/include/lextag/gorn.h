#ifndef LEXTAG_GORN_H_
#define LEXTAG_GORN_H_

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace lextag {

// Dotted child-index path from the root of a tree. The root is "0"; the i-th
// child (1-based) of the root is "0.i".
class GornAddress {
 public:
  GornAddress() = default;  // the root

  // Throws AddressError unless `text` is "0" followed by ".<n>" components.
  static GornAddress parse(std::string_view text);

  // Child indices below the root, 1-based.
  const std::vector<int>& path() const { return path_; }
  bool is_root() const { return path_.empty(); }
  std::size_t depth() const { return path_.size(); }

  GornAddress child(int index) const;
  GornAddress parent() const;
  bool is_prefix_of(const GornAddress& other) const;

  std::string str() const;

  friend auto operator<=>(const GornAddress&, const GornAddress&) = default;

 private:
  std::vector<int> path_;
};

}  // namespace lextag

#endif  // LEXTAG_GORN_H_
