#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "entsplit/matrix.hpp"

namespace entsplit {

/// Labeled tensor-product structure of a register, e.g. (A, B1, B2, anc).
/// Ordering is big-endian: the first label is the most significant factor
/// of the composite index.
class SubsystemLayout {
public:
    SubsystemLayout() = default;

    SubsystemLayout(std::vector<std::string> labels, std::vector<std::size_t> dims)
        : labels_(std::move(labels)), dims_(std::move(dims)) {
        if (labels_.size() != dims_.size())
            throw std::invalid_argument("SubsystemLayout: labels and dims differ in length");
        if (labels_.empty())
            throw std::invalid_argument("SubsystemLayout: needs at least one subsystem");
        for (std::size_t d : dims_)
            if (d < 2) throw std::invalid_argument("SubsystemLayout: subsystem dimensions must be >= 2");
        for (std::size_t i = 0; i < labels_.size(); ++i)
            for (std::size_t j = i + 1; j < labels_.size(); ++j)
                if (labels_[i] == labels_[j])
                    throw std::invalid_argument("SubsystemLayout: duplicate label '" + labels_[i] + "'");
    }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t size() const { return labels_.size(); }

    std::size_t total_dim() const {
        std::size_t d = 1;
        for (std::size_t x : dims_) d *= x;
        return d;
    }

    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return i;
        throw std::invalid_argument("SubsystemLayout: unknown label '" + label + "'");
    }

    bool has_label(const std::string& label) const {
        return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
    }

    std::size_t dim_of(const std::string& label) const { return dims_[index_of(label)]; }

    /// Layout of the kept subsystems, in their original relative order.
    SubsystemLayout reduced(const std::vector<std::string>& keep) const {
        std::vector<std::string> labels;
        std::vector<std::size_t> dims;
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (std::find(keep.begin(), keep.end(), labels_[i]) != keep.end()) {
                labels.push_back(labels_[i]);
                dims.push_back(dims_[i]);
            }
        }
        return {std::move(labels), std::move(dims)};
    }

    /// Strides of each subsystem in the composite index (big-endian).
    std::vector<std::size_t> strides() const {
        std::vector<std::size_t> s(dims_.size(), 1);
        for (std::size_t i = dims_.size(); i-- > 1;) s[i - 1] = s[i] * dims_[i];
        return s;
    }

private:
    std::vector<std::string> labels_;
    std::vector<std::size_t> dims_;
};

namespace detail {

inline void decompose_index(std::size_t idx, const std::vector<std::size_t>& dims,
                            std::vector<std::size_t>& digits) {
    digits.resize(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
        digits[i] = idx % dims[i];
        idx /= dims[i];
    }
}

inline std::size_t compose_index(const std::vector<std::size_t>& digits,
                                 const std::vector<std::size_t>& strides) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) idx += digits[i] * strides[i];
    return idx;
}

}  // namespace detail

/// Reduced matrix on the kept subsystems; the remaining ones are traced out.
/// Trace is preserved.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, const SubsystemLayout& layout,
                                   const std::vector<std::string>& keep) {
    if (!rho.is_square() || rho.rows() != layout.total_dim())
        throw std::invalid_argument("partial_trace: matrix dimension does not match layout");
    for (const auto& label : keep)
        if (!layout.has_label(label))
            throw std::invalid_argument("partial_trace: unknown label '" + label + "'");

    const std::size_t n = layout.size();
    std::vector<std::size_t> keep_pos, trace_pos;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::find(keep.begin(), keep.end(), layout.labels()[i]) != keep.end())
            keep_pos.push_back(i);
        else
            trace_pos.push_back(i);
    }

    std::vector<std::size_t> keep_dims, trace_dims;
    for (std::size_t p : keep_pos) keep_dims.push_back(layout.dims()[p]);
    for (std::size_t p : trace_pos) trace_dims.push_back(layout.dims()[p]);

    const std::size_t dk = std::accumulate(keep_dims.begin(), keep_dims.end(), std::size_t{1},
                                           std::multiplies<>());
    const std::size_t dt = std::accumulate(trace_dims.begin(), trace_dims.end(), std::size_t{1},
                                           std::multiplies<>());

    const auto strides = layout.strides();
    ComplexMatrix out(dk, dk);
    std::vector<std::size_t> kr, kc, td, full(n);

    for (std::size_t r = 0; r < dk; ++r) {
        detail::decompose_index(r, keep_dims, kr);
        for (std::size_t c = 0; c < dk; ++c) {
            detail::decompose_index(c, keep_dims, kc);
            Complex sum{0.0, 0.0};
            for (std::size_t t = 0; t < dt; ++t) {
                detail::decompose_index(t, trace_dims, td);
                std::size_t row = 0, col = 0;
                for (std::size_t i = 0; i < keep_pos.size(); ++i) {
                    row += kr[i] * strides[keep_pos[i]];
                    col += kc[i] * strides[keep_pos[i]];
                }
                for (std::size_t i = 0; i < trace_pos.size(); ++i) {
                    row += td[i] * strides[trace_pos[i]];
                    col += td[i] * strides[trace_pos[i]];
                }
                sum += rho(row, col);
            }
            out(r, c) = sum;
        }
    }
    return out;
}

/// Transpose applied on the named subsystem's indices only.
inline ComplexMatrix partial_transpose(const ComplexMatrix& rho, const SubsystemLayout& layout,
                                       const std::string& subsystem) {
    if (!rho.is_square() || rho.rows() != layout.total_dim())
        throw std::invalid_argument("partial_transpose: matrix dimension does not match layout");
    const std::size_t pos = layout.index_of(subsystem);

    const auto dims = layout.dims();
    const auto strides = layout.strides();
    ComplexMatrix out(rho.rows(), rho.cols());
    std::vector<std::size_t> ri, ci;
    for (std::size_t r = 0; r < rho.rows(); ++r) {
        detail::decompose_index(r, dims, ri);
        for (std::size_t c = 0; c < rho.cols(); ++c) {
            detail::decompose_index(c, dims, ci);
            std::vector<std::size_t> ri2 = ri, ci2 = ci;
            std::swap(ri2[pos], ci2[pos]);
            out(detail::compose_index(ri2, strides), detail::compose_index(ci2, strides)) = rho(r, c);
        }
    }
    return out;
}

}  // namespace entsplit
