#pragma once

#include <optional>
#include <string>
#include <vector>

#include "essp/tableau.hpp"

namespace essp {

/// A main method M with its published SSP coefficient and, when available,
/// SSP starting and stopping methods R and T.
struct CatalogEntry {
  std::string label;
  ButcherTableau main;
  std::optional<ButcherTableau> start;  // R, at most s+1 stages
  std::optional<ButcherTableau> stop;   // T, at most s stages
  int q = 0;
  int p = 0;
  double ssp_coefficient = 0.0;  // published value
};

/// Three-stage effective order 3, classical order 2 family with C = 1.
/// gamma = 1/4 gives the Shu-Osher SSPRK(3,3). Domain: 1/4 <= gamma <= 1.
ButcherTableau essprk_332(double gamma);

/// Four-stage effective order 3, classical order 2 family with C = 2.
/// gamma = 1/6 gives SSPRK(4,3). Domain: 1/6 <= gamma <= 1/2.
ButcherTableau essprk_432(double gamma);

enum class FamilyBranch { kPlus, kMinus };

/// s = n^2 + 1 stage, effective order 4, classical order 2 methods with
/// C = n^2 - n, in modified Shu-Osher form. Requires n >= 3.
ShuOsherForm family_n2p1(int n, FamilyBranch branch = FamilyBranch::kPlus);

/// Shu-Osher form of SSPRK(3,3).
ShuOsherForm ssprk33_shu_osher();

ButcherTableau forward_euler();
ButcherTableau classical_rk4();

/// Default family parameters used by the catalog entries.
inline constexpr double kDefaultGamma332 = 0.5;
inline constexpr double kDefaultGamma432 = 0.25;

/// Every entry is re-verified (orders, SSP coefficient, R/T conditions) on
/// first access; a failure throws essp::Error.
const std::vector<CatalogEntry>& catalog();

/// Throws DomainError for an unknown label.
const CatalogEntry& find_catalog_entry(const std::string& label);

}  // namespace essp
