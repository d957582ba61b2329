#pragma once

#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

namespace rvw {

// Mixed-radix index space over a product of per-variable choice counts.
// Point k decodes with the first coordinate most significant, so increasing
// k walks the grid in lexicographic order.
class GridShape {
  public:
    explicit GridShape(std::vector<std::uint64_t> radix)
        : radix_(std::move(radix)) {
        total_ = 1;
        for (auto r : radix_) {
            if (r == 0) {
                total_ = 0;
                break;
            }
            if (total_ > UINT64_MAX / r)
                throw std::overflow_error("grid size overflow");
            total_ *= r;
        }
    }

    std::uint64_t total() const { return total_; }
    size_t dims() const { return radix_.size(); }
    const std::vector<std::uint64_t>& radix() const { return radix_; }

    void decode(std::uint64_t k, std::vector<std::uint32_t>& out) const {
        out.resize(radix_.size());
        for (size_t i = radix_.size(); i-- > 0;) {
            out[i] = static_cast<std::uint32_t>(k % radix_[i]);
            k /= radix_[i];
        }
    }

  private:
    std::vector<std::uint64_t> radix_;
    std::uint64_t total_ = 1;
};

// Partitioned fold over [0, total): each worker folds a contiguous chunk and
// the partials are merged in chunk order.  As long as merge is associative,
// the result is independent of the worker count.
template <typename Partial, typename ChunkFn, typename MergeFn>
Partial parallel_fold(std::uint64_t total, int workers, ChunkFn chunk_fn,
                      MergeFn merge, Partial init) {
    if (workers < 1) throw std::invalid_argument("worker count must be >= 1");
    if (total == 0) return init;
    const std::uint64_t nchunks =
        std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), total);
    std::vector<Partial> partials(nchunks, init);
    std::vector<std::thread> pool;
    pool.reserve(nchunks);
    const std::uint64_t base = total / nchunks, extra = total % nchunks;
    std::uint64_t begin = 0;
    for (std::uint64_t c = 0; c < nchunks; ++c) {
        const std::uint64_t len = base + (c < extra ? 1 : 0);
        const std::uint64_t end = begin + len;
        pool.emplace_back(
            [&, c, begin, end] { partials[c] = chunk_fn(begin, end); });
        begin = end;
    }
    for (auto& t : pool) t.join();
    Partial acc = init;
    for (auto& p : partials) acc = merge(acc, p);
    return acc;
}

}  // namespace rvw
