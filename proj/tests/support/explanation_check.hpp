#pragma once

#include <string>

#include "debcheck/checker.hpp"

namespace debcheck::testing {

// Empty when the explanation of a NotInstallable result holds up: each step
// is a real dependency or conflict of `repo`, and both the repository made of
// just those edges and the one induced by the mentioned packages still keep
// the query from being installed (by brute force when small enough, by the
// solver otherwise). Otherwise a description of the first problem.
std::string explanation_problem(const Repository& repo, const CheckResult& result);

// The sub-repository induced by `packages`: all of them, the dependencies
// of each cut down to members inside the set, and the conflicts among them.
Repository induced_repository(const Repository& repo, const std::vector<PackageId>& packages);

} // namespace debcheck::testing
