#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "folim/kernels.hpp"

using namespace folim;

static const uint8_t PRIMES[] = {2, 3, 5, 7, 11, 13};

TEST_CASE("scalar and avx2 kernels agree on random data") {
    if (!kern::avx2_supported()) {
        MESSAGE("no AVX2 on this host, dispatch falls back to scalar");
        return;
    }
    std::mt19937_64 rng(12345);
    for (uint8_t p : PRIMES) {
        for (std::size_t n : {0u, 1u, 5u, 31u, 32u, 33u, 64u, 257u, 1000u}) {
            std::vector<uint8_t> dst(n), src(n);
            for (auto& x : dst) x = uint8_t(rng() % p);
            for (auto& x : src) x = uint8_t(rng() % p);
            for (uint8_t c = 0; c < p; ++c) {
                auto d1 = dst, d2 = dst;
                kern::scalar_kernels().axpy(d1.data(), src.data(), n, c, p);
                kern::avx2_kernels().axpy(d2.data(), src.data(), n, c, p);
                CHECK(d1 == d2);
                auto s1 = dst, s2 = dst;
                kern::scalar_kernels().scale(s1.data(), n, c, p);
                kern::avx2_kernels().scale(s2.data(), n, c, p);
                CHECK(s1 == s2);
            }
        }
    }
}

TEST_CASE("kernel results are exact for every residue pair") {
    // exhaustive over (a, b, c) residues; catches reduction-trick errors
    for (uint8_t p : PRIMES) {
        std::vector<uint8_t> dst, src;
        std::vector<uint8_t> expect;
        for (uint16_t a = 0; a < p; ++a)
            for (uint16_t b = 0; b < p; ++b)
                for (uint16_t c = 0; c < p; ++c) {
                    dst.push_back(uint8_t(a));
                    src.push_back(uint8_t(b));
                    expect.push_back(uint8_t((a + c * b) % p));
                }
        // run one c at a time so the expectation above applies
        std::size_t idx = 0;
        for (uint16_t a = 0; a < p; ++a)
            for (uint16_t b = 0; b < p; ++b)
                for (uint16_t c = 0; c < p; ++c) {
                    uint8_t d = dst[idx], s = src[idx];
                    kern::active().axpy(&d, &s, 1, uint8_t(c), p);
                    CHECK(d == expect[idx]);
                    ++idx;
                }
    }
}

TEST_CASE("active kernel set is one of the known sets") {
    const auto& k = kern::active();
    bool known = std::string(k.name) == "scalar" || std::string(k.name) == "avx2";
    CHECK(known);
    if (kern::avx2_supported()) CHECK(std::string(k.name) == "avx2");
}
