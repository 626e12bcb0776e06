#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace riskinfo {

// Ordered set of distinct symbol names. Index <-> label mapping is fixed at
// construction. Copies share storage; grid alphabets can hold 1e6 labels.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> labels);

  std::size_t size() const { return impl_->labels.size(); }
  const std::string& label(std::size_t i) const { return impl_->labels[i]; }
  const std::vector<std::string>& labels() const { return impl_->labels; }

  std::optional<std::size_t> find(std::string_view label) const;
  // Throws errc::invalid_alphabet when the label is unknown.
  std::size_t index_of(std::string_view label) const;

  bool operator==(const Alphabet& other) const;
  bool operator!=(const Alphabet& other) const { return !(*this == other); }

  // "p0", "p1", ... convenience for auto-named stages.
  static Alphabet indexed(const std::string& prefix, std::size_t n);

 private:
  struct Impl {
    std::vector<std::string> labels;
    std::unordered_map<std::string_view, std::size_t> index;
  };
  std::shared_ptr<const Impl> impl_;
};

}  // namespace riskinfo
