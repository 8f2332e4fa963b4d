// Counts global allocations. Include from exactly one translation unit per binary.

#ifndef PEGKIT_TESTS_ALLOC_COUNTER_HPP
#define PEGKIT_TESTS_ALLOC_COUNTER_HPP

#include <atomic>
#include <cstdlib>
#include <new>

namespace alloc_counter {

inline std::atomic<std::size_t> allocations{0};

inline std::size_t current() { return allocations.load(std::memory_order_relaxed); }

} // namespace alloc_counter

void* operator new(std::size_t size)
{
	alloc_counter::allocations.fetch_add(1, std::memory_order_relaxed);
	if (void* p = std::malloc(size == 0 ? 1 : size))
		return p;
	throw std::bad_alloc{};
}

void operator delete(void* p) noexcept { std::free(p); }
void operator delete(void* p, std::size_t) noexcept { std::free(p); }

#endif // PEGKIT_TESTS_ALLOC_COUNTER_HPP
