#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace pwbands {

/// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    using value_type = std::complex<double>;

    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const { return n_; }

    value_type& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    value_type* row(std::size_t i) { return data_.data() + i * n_; }
    const value_type* row(std::size_t i) const { return data_.data() + i * n_; }

    const std::vector<value_type>& data() const { return data_; }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<value_type> data_;
};

}  // namespace pwbands
