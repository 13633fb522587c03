// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace chowkit::corpus {

struct CorpusCase {
  std::string name;
  std::string_view scene;
};

// Case names in their fixed order.
std::vector<std::string> list_cases();

// Throws DomainError for an unknown name.
CorpusCase load_case(const std::string& name);

}  // namespace chowkit::corpus
