#include "gmat/parallel.hpp"

namespace gmat {

#ifdef GMAT_HAVE_OPENMP
namespace {
const int kDefaultThreads = omp_get_max_threads();
}

void set_thread_count(int threads) { omp_set_num_threads(threads > 0 ? threads : kDefaultThreads); }

int thread_count() { return omp_get_max_threads(); }
#else
void set_thread_count(int) {}

int thread_count() { return 1; }
#endif

} // namespace gmat
