#include "aid/batch.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace aid {

int resolve_workers(int workers) {
#ifdef _OPENMP
    if (workers <= 0) return omp_get_max_threads();
    return workers;
#else
    (void)workers;
    return 1;
#endif
}

}  // namespace aid
