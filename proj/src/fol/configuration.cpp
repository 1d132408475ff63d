// Copyright 2026 The arbac-reach Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "arbac/fol/configuration.hpp"

#include "arbac/errors.hpp"

namespace arbac {

Configuration::Configuration(SignaturePtr sig, std::vector<int> domain_sizes)
    : sig_(std::move(sig)), dom_(std::move(domain_sizes)) {
  if (static_cast<int>(dom_.size()) != sig_->num_sorts()) {
    throw SortError("one domain size per sort expected");
  }
  consts_.assign(sig_->num_constants(), 0);
  for (ConstId c = 0; c < sig_->num_constants(); ++c) {
    if (dom_[sig_->constant(c).sort] <= 0) {
      throw SortError("empty domain for sort of constant " + sig_->constant(c).name);
    }
  }
  ext_.resize(sig_->num_predicates());
  for (PredId p = 0; p < sig_->num_predicates(); ++p) {
    std::size_t n = 1;
    for (SortId s : sig_->predicate(p).args) n *= static_cast<std::size_t>(dom_[s]);
    ext_[p].assign(n, 0);
  }
}

void Configuration::set_constant(ConstId c, int element) {
  SortId s = sig_->constant(c).sort;
  if (element < 0 || element >= dom_[s]) throw SortError("element out of range");
  consts_.at(c) = element;
}

std::size_t Configuration::index(PredId p, std::span<const int> args) const {
  const auto& sorts = sig_->predicate(p).args;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    idx = idx * static_cast<std::size_t>(dom_[sorts[i]]) + static_cast<std::size_t>(args[i]);
  }
  return idx;
}

std::vector<int> Configuration::tuple(PredId p, std::size_t index) const {
  const auto& sorts = sig_->predicate(p).args;
  std::vector<int> out(sorts.size());
  for (std::size_t i = sorts.size(); i-- > 0;) {
    auto n = static_cast<std::size_t>(dom_[sorts[i]]);
    out[i] = static_cast<int>(index % n);
    index /= n;
  }
  return out;
}

std::string Configuration::element_name(SortId s, int e) const {
  for (ConstId c : sig_->constants_of(s)) {
    if (consts_[c] == e) return sig_->constant(c).name;
  }
  return sig_->sort(s).name + "#" + std::to_string(e);
}

std::string to_string(const Configuration& c) {
  const Signature& sig = c.sig();
  std::string out;
  for (SortId s = 0; s < sig.num_sorts(); ++s) {
    out += sig.sort(s).name + ":";
    for (int e = 0; e < c.domain_size(s); ++e) out += " " + c.element_name(s, e);
    out += "\n";
  }
  for (PredId p = 0; p < sig.num_predicates(); ++p) {
    out += sig.pred_name(p) + ":";
    for (std::size_t i = 0; i < c.extension_size(p); ++i) {
      if (!c.extension(p)[i]) continue;
      auto t = c.tuple(p, i);
      out += " (";
      for (std::size_t k = 0; k < t.size(); ++k) {
        if (k) out += ",";
        out += c.element_name(sig.predicate(p).args[k], t[k]);
      }
      out += ")";
    }
    out += "\n";
  }
  return out;
}

}  // namespace arbac
