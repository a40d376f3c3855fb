#pragma once

#include "grval/grval.hpp"

#include <gtest/gtest.h>

namespace fixtures {

/// sl2 in the order h < e < f: [h,e] = 2e, [h,f] = -2f, [e,f] = h.
/// flipped uses [h,f] = +2f, which violates Jacobi.
template <grval::Field F>
grval::StructureConstants<F> sl2_constants(const F& K, bool flipped = false)
{
    using E = typename F::Element;
    grval::StructureConstants<F> lambda(3, std::vector<std::vector<E>>(3, std::vector<E>(3, K.zero())));
    auto set = [&](int i, int j, int k, long c) {
        lambda[i][j][k] = K.from_integer(c);
        lambda[j][i][k] = K.from_integer(-c);
    };
    set(0, 1, 1, 2);
    set(0, 2, 2, flipped ? 2 : -2);
    set(1, 2, 0, 1);
    return lambda;
}

template <grval::Field F>
grval::PbwSpec<F> sl2(const F& K, bool flipped = false)
{
    return grval::make_enveloping(K, {"h", "e", "f"}, sl2_constants(K, flipped));
}

template <class Fn>
void expect_error(grval::Errc code, Fn&& fn)
{
    try {
        fn();
        ADD_FAILURE() << "expected " << grval::errc_name(code);
    }
    catch (const grval::Error& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

} // namespace fixtures
