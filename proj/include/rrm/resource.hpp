#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace rrm {

// Non-negative resource amounts, one component per resource type.
// The experiment uses a single type (radar aperture time per planning
// period), but every operation is dimension-generic.
class ResourceVector {
public:
    ResourceVector() = default;
    explicit ResourceVector(std::vector<double> components);

    static ResourceVector zeros(std::size_t count);
    static ResourceVector scalar(double amount);

    std::size_t size() const { return components_.size(); }
    double operator[](std::size_t i) const { return components_[i]; }
    const std::vector<double>& components() const { return components_; }

    bool is_zero() const;
    double sum() const;

    ResourceVector plus(const ResourceVector& other) const;
    // nullopt when any component of the difference would be negative
    std::optional<ResourceVector> minus(const ResourceVector& other) const;
    bool fits_within(const ResourceVector& bounds) const;

    bool operator==(const ResourceVector&) const = default;

private:
    std::vector<double> components_;
};

// Scalar proxy combining the per-type requirements: dot(resources, weights).
double compound_resource(const ResourceVector& resources, const std::vector<double>& weights);

}  // namespace rrm
