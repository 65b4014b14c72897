#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bz::harness {

struct CatalogEntry {
  std::string name;
  std::string summary;
  // Config text in the scenario grammar.
  std::string config;
};

const std::vector<CatalogEntry>& catalog();

// Entries whose name contains the filter; all entries for an empty filter.
std::vector<const CatalogEntry*> catalog_filter(std::string_view filter);

const CatalogEntry* catalog_find(std::string_view name);

}  // namespace bz::harness
