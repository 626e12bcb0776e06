#include "riskinfo/alphabet.hpp"

#include "riskinfo/errors.hpp"

namespace riskinfo {

Alphabet::Alphabet(std::vector<std::string> labels) {
  if (labels.empty()) {
    throw_error(errc::invalid_alphabet, "alphabet must not be empty");
  }
  auto impl = std::make_shared<Impl>();
  impl->labels = std::move(labels);
  impl->index.reserve(impl->labels.size());
  for (std::size_t i = 0; i < impl->labels.size(); ++i) {
    // string_view keys point into impl->labels, which never moves again.
    auto [it, inserted] = impl->index.emplace(impl->labels[i], i);
    if (!inserted) {
      throw_error(errc::invalid_alphabet,
                  "duplicate label '" + impl->labels[i] + "' in alphabet");
    }
  }
  impl_ = std::move(impl);
}

std::optional<std::size_t> Alphabet::find(std::string_view label) const {
  auto it = impl_->index.find(label);
  if (it == impl_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t Alphabet::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw_error(errc::invalid_alphabet,
              "label '" + std::string(label) + "' not in alphabet");
}

bool Alphabet::operator==(const Alphabet& other) const {
  return impl_ == other.impl_ || impl_->labels == other.impl_->labels;
}

Alphabet Alphabet::indexed(const std::string& prefix, std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return Alphabet(std::move(labels));
}

}  // namespace riskinfo
