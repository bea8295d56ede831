#include "qcoin/sequences.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qcoin;

TEST_CASE("fibonacci base values and negative extension", "[sequences]") {
    CHECK(fibonacci(0) == 0);
    CHECK(fibonacci(1) == 1);
    CHECK(fibonacci(6) == 8);
    CHECK(fibonacci(-1) == 1);
    CHECK(fibonacci(-2) == -1);

    // the recursion must hold straight through zero
    for (long n = -20; n <= 20; ++n) {
        CHECK(fibonacci(n) == fibonacci(n - 1) + fibonacci(n - 2));
    }
}

TEST_CASE("lucas base values and negative extension", "[sequences]") {
    CHECK(lucas(0) == 2);
    CHECK(lucas(1) == 1);
    CHECK(lucas(4) == 7);
    CHECK(lucas(-1) == -1);
    CHECK(lucas(-2) == 3);

    for (long n = -20; n <= 20; ++n) {
        CHECK(lucas(n) == lucas(n - 1) + lucas(n - 2));
    }
}

TEST_CASE("lucas and fibonacci are companions", "[sequences]") {
    for (long n = 0; n <= 200; ++n) {
        CHECK(lucas(n) == fibonacci(n - 1) + fibonacci(n + 1));
    }
}

TEST_CASE("generalized recurrence matches named sequences", "[sequences]") {
    CHECK(gen_nbonacci(3, 1, 7) == 13);   // tribonacci: 0,0,1,1,2,4,7,13
    CHECK(gen_nbonacci(2, 2, 5) == 44);   // doubled fibonacci: 0,1,2,6,16,44
    CHECK(gen_nbonacci(2, 3, 4) == 45);

    for (long n = 0; n <= 200; ++n) {
        CHECK(gen_nbonacci(2, 1, n) == fibonacci(n));
        CHECK(gen_nbonacci(3, 1, n) == tribonacci(n));
    }
}

TEST_CASE("nbonacci aliases", "[sequences]") {
    CHECK(tribonacci(2) == 1);
    CHECK(tribonacci(0) == 0);
    CHECK(nbonacci(4, 5) == 2);   // B_{N+1} = 2
    CHECK(nbonacci(2, 9) == 34);  // equals fibonacci(9)

    // first nonzero values of any depth: 1, 1, 2, then 4 once the window
    // reaches three terms back
    for (int N = 2; N <= 6; ++N) {
        CHECK(nbonacci(N, N - 1) == 1);
        CHECK(nbonacci(N, N) == 1);
        CHECK(nbonacci(N, N + 1) == 2);
    }
    for (int N = 3; N <= 6; ++N) {
        CHECK(nbonacci(N, N + 2) == 4);
    }
}

TEST_CASE("depth-1 recurrence degenerates to powers", "[sequences]") {
    for (int m = 1; m <= 4; ++m) {
        for (long n = 1; n <= 40; ++n) {
            CHECK(gen_nbonacci(1, m, n - 1) == int_pow(m, static_cast<unsigned>(n - 1)));
        }
    }
}

TEST_CASE("fibonacci product through lucas numbers", "[sequences]") {
    CHECK(fibonacci_product_lucas(3, 4) == 6);
    CHECK(fibonacci_product_lucas(1, 1) == 1);
    CHECK(fibonacci_product_lucas(5, 5) == 25);

    for (long m = 1; m <= 60; ++m) {
        for (long n = 1; n <= 60; ++n) {
            CHECK(fibonacci_product_lucas(m, n) == fibonacci(m) * fibonacci(n));
        }
    }
}

TEST_CASE("fibonacci convolution through lucas numbers", "[sequences]") {
    CHECK(fibonacci_convolution_lucas(5) == 10);
    CHECK(fibonacci_convolution_lucas(2) == 1);
    CHECK(fibonacci_convolution_lucas(4) == 5);

    for (long n = 2; n <= 100; ++n) {
        BigInt direct = 0;
        for (long k = 1; k <= n - 1; ++k) direct += fibonacci(k) * fibonacci(n - k);
        CHECK(fibonacci_convolution_lucas(n) == direct);
    }
}

TEST_CASE("large indices stay exact", "[sequences]") {
    // doubling identities give an independent route to the same values
    const long half = 4999;
    const BigInt f = fibonacci(half);
    const BigInt f1 = fibonacci(half + 1);
    CHECK(fibonacci(2 * half) == f * (2 * f1 - f));
    CHECK(fibonacci(2 * half + 1) == f * f + f1 * f1);

    const long even = 5000;
    const BigInt l = lucas(even);
    CHECK(lucas(2 * even) == l * l - 2);  // (-1)^n = +1 for even n
}

TEST_CASE("index cap and parameter validation", "[sequences]") {
    CHECK_THROWS_AS(fibonacci(kMaxSequenceIndex + 1), std::out_of_range);
    CHECK_THROWS_AS(lucas(-kMaxSequenceIndex - 1), std::out_of_range);
    CHECK_THROWS_AS(gen_nbonacci(0, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(gen_nbonacci(2, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(gen_nbonacci(2, 1, -1), std::out_of_range);
    CHECK_THROWS_AS(fibonacci_product_lucas(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(fibonacci_convolution_lucas(1), std::invalid_argument);
    CHECK_NOTHROW(fibonacci(kMaxSequenceIndex));
}
