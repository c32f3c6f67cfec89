#include "rrm/qram.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace rrm {

namespace {

void validate_job_list(const JobList& list, std::size_t resource_types) {
    if (list.entries.empty()) {
        throw std::invalid_argument("job list has no entries");
    }
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
        const TaskConfig& e = list.entries[i];
        if (e.resources.size() != resource_types) {
            throw std::invalid_argument("job list entry resource dimension mismatch");
        }
        if (i > 0) {
            const TaskConfig& prev = list.entries[i - 1];
            if (!(e.compound > prev.compound)) {
                throw std::invalid_argument("job list entries not strictly increasing in compound resource");
            }
            if (e.utility < prev.utility) {
                throw std::invalid_argument("job list entries decreasing in utility");
            }
        }
    }
}

}  // namespace

JobList build_job_list(TaskId task_id, std::vector<TaskConfig> configs) {
    if (configs.empty()) {
        throw std::invalid_argument("no configurations");
    }
    for (const TaskConfig& c : configs) {
        if (c.task_id != task_id) {
            throw std::invalid_argument("configuration belongs to a different task");
        }
        if (c.utility < 0.0 || c.compound < 0.0) {
            throw std::invalid_argument("configuration utility/compound must be non-negative");
        }
    }
    const TaskKind kind = configs.front().kind;
    const std::size_t types = configs.front().resources.size();

    bool has_idle = false;
    for (const TaskConfig& c : configs) {
        if (c.resources.is_zero()) has_idle = true;
    }
    if (!has_idle) {
        TaskConfig idle;
        idle.task_id = task_id;
        idle.kind = kind;
        idle.resources = ResourceVector::zeros(types);
        configs.push_back(std::move(idle));
    }

    // Cheapest first; among equal resource levels the best utility first so
    // the sweep below keeps it and drops the rest.
    std::stable_sort(configs.begin(), configs.end(), [](const TaskConfig& a, const TaskConfig& b) {
        if (a.compound != b.compound) return a.compound < b.compound;
        return a.utility > b.utility;
    });

    JobList list;
    list.task_id = task_id;
    list.kind = kind;
    for (TaskConfig& c : configs) {
        if (list.entries.empty()) {
            list.entries.push_back(std::move(c));
            continue;
        }
        const TaskConfig& last = list.entries.back();
        if (c.compound > last.compound && c.utility > last.utility) {
            list.entries.push_back(std::move(c));
        }
    }
    return list;
}

Allocation greedy_allocate(std::span<const JobList> job_lists, const ResourceVector& bounds) {
    const std::size_t types = bounds.size();
    for (const JobList& list : job_lists) {
        validate_job_list(list, types);
    }

    std::vector<std::size_t> selected(job_lists.size(), 0);

    // Totals are always re-summed in task order rather than incrementally
    // patched, so identical inputs give bit-identical results.
    auto sum_resources = [&](const std::vector<std::size_t>& sel) {
        ResourceVector total = ResourceVector::zeros(types);
        for (std::size_t i = 0; i < job_lists.size(); ++i) {
            total = total.plus(job_lists[i].entries[sel[i]].resources);
        }
        return total;
    };

    ResourceVector total = sum_resources(selected);
    if (!total.fits_within(bounds)) {
        throw std::runtime_error("initial allocation exceeds resource bounds");
    }

    while (true) {
        std::size_t best_index = job_lists.size();
        double best_ratio = -std::numeric_limits<double>::infinity();
        TaskId best_task = 0;
        ResourceVector best_total;

        for (std::size_t i = 0; i < job_lists.size(); ++i) {
            const JobList& list = job_lists[i];
            if (selected[i] + 1 >= list.entries.size()) continue;
            const TaskConfig& cur = list.entries[selected[i]];
            const TaskConfig& next = list.entries[selected[i] + 1];

            std::vector<std::size_t> candidate(selected);
            candidate[i] += 1;
            ResourceVector candidate_total = sum_resources(candidate);
            if (!candidate_total.fits_within(bounds)) continue;

            const double ratio = (next.utility - cur.utility) / (next.compound - cur.compound);
            bool take = false;
            if (best_index == job_lists.size()) {
                take = true;
            } else if (ratio > best_ratio) {
                take = true;
            } else if (ratio == best_ratio && list.task_id < best_task) {
                take = true;
            }
            if (take) {
                best_index = i;
                best_ratio = ratio;
                best_task = list.task_id;
                best_total = std::move(candidate_total);
            }
        }

        if (best_index == job_lists.size()) break;
        selected[best_index] += 1;
        total = std::move(best_total);
    }

    Allocation result;
    result.total_resources = total;
    for (std::size_t i = 0; i < job_lists.size(); ++i) {
        result.selected[job_lists[i].task_id] = selected[i];
        result.total_utility += job_lists[i].entries[selected[i]].utility;
    }
    return result;
}

}  // namespace rrm
