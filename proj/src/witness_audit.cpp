#include "confalg/witness_audit.hpp"

#include <atomic>

namespace confalg::witness_audit {

namespace {
std::atomic<std::size_t> emitted_count{0};
std::atomic<std::size_t> verified_count{0};
}  // namespace

void record_emitted() { emitted_count.fetch_add(1, std::memory_order_relaxed); }
void record_verified() { verified_count.fetch_add(1, std::memory_order_relaxed); }
std::size_t emitted() { return emitted_count.load(std::memory_order_relaxed); }
std::size_t verified() { return verified_count.load(std::memory_order_relaxed); }
void reset() {
    emitted_count.store(0, std::memory_order_relaxed);
    verified_count.store(0, std::memory_order_relaxed);
}

}  // namespace confalg::witness_audit
