#include "lextag/gorn.h"

#include <charconv>

#include "lextag/errors.h"

namespace lextag {

GornAddress GornAddress::parse(std::string_view text) {
  std::vector<int> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t dot = text.find('.', pos);
    std::string_view piece = text.substr(pos, dot == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : dot - pos);
    int value = 0;
    auto [end, ec] = std::from_chars(piece.data(), piece.data() + piece.size(),
                                     value);
    if (piece.empty() || ec != std::errc() ||
        end != piece.data() + piece.size() || value < 0) {
      throw AddressError("malformed Gorn address '" + std::string(text) + "'");
    }
    parts.push_back(value);
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  if (parts.front() != 0) {
    throw AddressError("Gorn address must start at root 0: '" +
                       std::string(text) + "'");
  }
  GornAddress addr;
  addr.path_.assign(parts.begin() + 1, parts.end());
  return addr;
}

GornAddress GornAddress::child(int index) const {
  GornAddress out = *this;
  out.path_.push_back(index);
  return out;
}

GornAddress GornAddress::parent() const {
  GornAddress out = *this;
  if (!out.path_.empty()) out.path_.pop_back();
  return out;
}

bool GornAddress::is_prefix_of(const GornAddress& other) const {
  if (path_.size() > other.path_.size()) return false;
  for (std::size_t i = 0; i < path_.size(); ++i) {
    if (path_[i] != other.path_[i]) return false;
  }
  return true;
}

std::string GornAddress::str() const {
  std::string out = "0";
  for (int i : path_) {
    out += '.';
    out += std::to_string(i);
  }
  return out;
}

}  // namespace lextag
