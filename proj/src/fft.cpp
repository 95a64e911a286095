#include "gibbslab/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace gibbslab {

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

int next_power_of_two(int m) {
    int p = 1;
    while (p < m) p <<= 1;
    return p;
}

void fft_inplace(cplx* a, std::size_t n, bool inverse) {
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_inplace: length must be a power of two");
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

void fft_nd_inplace(std::vector<cplx>& data, int d, int M, bool inverse) {
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(M);
    if (data.size() != total)
        throw std::invalid_argument("fft_nd_inplace: size mismatch");
    if (d == 1) {
        fft_inplace(data.data(), static_cast<std::size_t>(M), inverse);
        return;
    }
    // Transform along each axis; gather strided lines into a contiguous buffer.
    std::vector<cplx> line(static_cast<std::size_t>(M));
    for (int axis = 0; axis < d; ++axis) {
        std::size_t stride = 1;
        for (int i = axis + 1; i < d; ++i) stride *= static_cast<std::size_t>(M);
        const std::size_t lineCount = total / static_cast<std::size_t>(M);
        for (std::size_t lc = 0; lc < lineCount; ++lc) {
            // Decompose lc into indices of all axes except `axis`.
            std::size_t rem = lc, base = 0;
            for (int i = d - 1; i >= 0; --i) {
                if (i == axis) continue;
                std::size_t sz = static_cast<std::size_t>(M);
                std::size_t idx = rem % sz;
                rem /= sz;
                std::size_t str = 1;
                for (int k = i + 1; k < d; ++k) str *= static_cast<std::size_t>(M);
                base += idx * str;
            }
            for (int j = 0; j < M; ++j) line[static_cast<std::size_t>(j)] = data[base + static_cast<std::size_t>(j) * stride];
            fft_inplace(line.data(), static_cast<std::size_t>(M), inverse);
            for (int j = 0; j < M; ++j) data[base + static_cast<std::size_t>(j) * stride] = line[static_cast<std::size_t>(j)];
        }
    }
}

}  // namespace gibbslab
