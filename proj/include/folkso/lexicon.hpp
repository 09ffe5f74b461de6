#pragma once
// Pluggable label-similarity oracle. The bundled implementation scores by
// exact match and shared prefix; richer lexical backends slot in behind
// the same interface.

#include <memory>
#include <string>
#include <string_view>

namespace folkso {

class Lexicon {
 public:
  virtual ~Lexicon() = default;

  // Symmetric, in [0,1], and similarity(a,a) == 1 for known labels.
  virtual double similarity(std::string_view a, std::string_view b) const = 0;

  virtual std::string name() const = 0;
};

// Exact match scores 1; otherwise len(common prefix) / max(len), measured
// in bytes over normalized labels.
class PrefixLexicon final : public Lexicon {
 public:
  double similarity(std::string_view a, std::string_view b) const override;
  std::string name() const override { return "prefix"; }
};

// Factory by name; currently only "prefix". Throws InvalidArgument.
std::unique_ptr<Lexicon> make_lexicon(const std::string& name);

}  // namespace folkso
