#include "rrm/resource.hpp"

#include <stdexcept>

namespace rrm {

ResourceVector::ResourceVector(std::vector<double> components) : components_(std::move(components)) {
    for (double c : components_) {
        if (!(c >= 0.0)) {
            throw std::invalid_argument("resource components must be non-negative");
        }
    }
}

ResourceVector ResourceVector::zeros(std::size_t count) {
    return ResourceVector(std::vector<double>(count, 0.0));
}

ResourceVector ResourceVector::scalar(double amount) {
    return ResourceVector(std::vector<double>{amount});
}

bool ResourceVector::is_zero() const {
    for (double c : components_) {
        if (c != 0.0) return false;
    }
    return true;
}

double ResourceVector::sum() const {
    double total = 0.0;
    for (double c : components_) total += c;
    return total;
}

ResourceVector ResourceVector::plus(const ResourceVector& other) const {
    if (other.size() != size()) {
        throw std::invalid_argument("resource vector size mismatch");
    }
    std::vector<double> out(components_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.components_[i];
    return ResourceVector(std::move(out));
}

std::optional<ResourceVector> ResourceVector::minus(const ResourceVector& other) const {
    if (other.size() != size()) {
        throw std::invalid_argument("resource vector size mismatch");
    }
    std::vector<double> out(components_);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] -= other.components_[i];
        if (out[i] < 0.0) return std::nullopt;
    }
    return ResourceVector(std::move(out));
}

bool ResourceVector::fits_within(const ResourceVector& bounds) const {
    if (bounds.size() != size()) {
        throw std::invalid_argument("resource vector size mismatch");
    }
    for (std::size_t i = 0; i < size(); ++i) {
        if (components_[i] > bounds.components_[i]) return false;
    }
    return true;
}

double compound_resource(const ResourceVector& resources, const std::vector<double>& weights) {
    if (weights.size() != resources.size()) {
        throw std::invalid_argument("weight count must match resource type count");
    }
    for (double w : weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("compound weights must be non-negative");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) total += resources[i] * weights[i];
    return total;
}

}  // namespace rrm
