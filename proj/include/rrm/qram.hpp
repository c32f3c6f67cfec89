#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rrm/resource.hpp"

namespace rrm {

using TaskId = std::int32_t;

enum class TaskKind { Search, Track, Sync };

// One selectable parameter set for a task together with its evaluated
// quality, utility and resource demand. `params` carries whatever the
// producing side needs to re-evaluate the entry later (revisit interval,
// pulse count, predicted range, ...).
struct TaskConfig {
    TaskId task_id = 0;
    TaskKind kind = TaskKind::Search;
    std::map<std::string, double> params;
    double quality = 0.0;
    double utility = 0.0;
    ResourceVector resources;
    double compound = 0.0;
};

// Pareto-filtered configurations of one task, strictly ascending in
// compound resource and strictly ascending in utility. The first entry is
// the cheapest one, usually the zero-cost idle configuration.
struct JobList {
    TaskId task_id = 0;
    TaskKind kind = TaskKind::Search;
    std::vector<TaskConfig> entries;
};

struct Allocation {
    std::map<TaskId, std::size_t> selected;  // task -> entry index in its job list
    double total_utility = 0.0;
    ResourceVector total_resources;
};

// Keeps, per resource level, only the best-utility configuration, sorted by
// compound resource. A zero-resource idle entry (utility 0) is supplied when
// the input has no zero-resource configuration.
JobList build_job_list(TaskId task_id, std::vector<TaskConfig> configs);

// Classical marginal-ratio upgrade loop: every task starts at its first
// entry and the task whose next entry offers the best marginal utility per
// marginal compound resource is upgraded, skipping upgrades that would break
// a bound, until nothing feasible remains. Ties go to the lowest task_id.
Allocation greedy_allocate(std::span<const JobList> job_lists, const ResourceVector& bounds);

}  // namespace rrm
