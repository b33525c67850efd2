#pragma once

#include <set>
#include <string>
#include <vector>

#include "cspp/verify/model.hpp"

namespace cspp::verify {

/// Emit -> Spread(n) -> n Workers -> Reduce(n) -> Collect over channels a..d.
/// `start` is the spreader's first output index.
AbstractModel farm_model(int n, int alphabet = 5, int start = 0);

/// Group of `pipes` parallel pipelines, each of `stages` workers.
AbstractModel gop_model(int pipes, int stages = 3, int alphabet = 5);

/// Pipeline of `stages` groups, each of `workers` parallel workers.
AbstractModel pog_model(int stages, int workers = 2, int alphabet = 5);

/// Emit directly into Collect.
AbstractModel emit_collect_model(int alphabet);

/// finished.True then SKIP: the visible behaviour expected of a fully hidden
/// system (the repeated finished loop truncated to its first event).
AbstractModel test_system();

/// Catalogue lookup by name: farm (n workers), gop (n pipes x 3 stages),
/// pog (3 groups x n workers). Throws VerifyError for an unknown name.
AbstractModel catalogue_model(const std::string& name, int n, int alphabet);
std::vector<std::string> catalogue_names();

/// Every channel the model declares; hiding these leaves only finished.
std::set<std::string> all_channels(const AbstractModel& m);

}  // namespace cspp::verify
