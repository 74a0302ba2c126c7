#include "ssmp/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace ssmp {

namespace {

struct Plans {
    fftw_plan forward;
    fftw_plan backward;
};

std::mutex plan_mutex;

const Plans& plans_for(int n)
{
    static std::map<int, Plans> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;
    fftw_complex* a = fftw_alloc_complex(n);
    fftw_complex* b = fftw_alloc_complex(n);
    Plans p;
    p.forward = fftw_plan_dft_1d(n, a, b, FFTW_FORWARD, FFTW_ESTIMATE);
    p.backward = fftw_plan_dft_1d(n, a, b, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_free(a);
    fftw_free(b);
    return cache.emplace(n, p).first->second;
}

void run(std::vector<cplx>& data, bool forward)
{
    int n = int(data.size());
    const Plans& p = plans_for(n);
    fftw_complex* in = fftw_alloc_complex(n);
    fftw_complex* out = fftw_alloc_complex(n);
    std::memcpy(in, data.data(), sizeof(fftw_complex) * n);
    fftw_execute_dft(forward ? p.forward : p.backward, in, out);
    std::memcpy(static_cast<void*>(data.data()), out, sizeof(fftw_complex) * n);
    fftw_free(in);
    fftw_free(out);
}

} // namespace

void fft_forward(std::vector<cplx>& data)
{
    run(data, true);
}

void fft_backward(std::vector<cplx>& data)
{
    run(data, false);
}

} // namespace ssmp
