#include "plb/parallel.hpp"

#include <cstdlib>
#include <string>

namespace plb {

int thread_cap() {
    unsigned hw = std::thread::hardware_concurrency();
    int cap = hw == 0 ? 1 : int(hw);
    if (const char* env = std::getenv("PLB_THREADS")) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(env, &used);
            if (v > 0 && used == std::string(env).size()) cap = v;
        } catch (const std::exception&) {
            // ignore junk, keep the hardware default
        }
    }
    return cap;
}

}  // namespace plb
