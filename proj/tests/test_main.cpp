#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "support.hpp"

#include <cstring>
#include <vector>

std::uint64_t& testsupport::seed() {
    static std::uint64_t s = 20240611;
    return s;
}

int main(int argc, char** argv) {
    std::vector<char*> rest;
    for (int i = 0; i < argc; ++i) {
        if (std::strncmp(argv[i], "--seed=", 7) == 0) testsupport::seed() = std::stoull(argv[i] + 7);
        else rest.push_back(argv[i]);
    }
    doctest::Context ctx(static_cast<int>(rest.size()), rest.data());
    return ctx.run();
}
